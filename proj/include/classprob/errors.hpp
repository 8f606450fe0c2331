#pragma once

#include <stdexcept>
#include <string>

namespace classprob {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// A conditional or posterior probability whose conditioning event has
// probability zero.
class UndefinedError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class LookupError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

// Shape mismatches: vector lengths, matrix dimensions, grid steps.
class ShapeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Unknown option tags and malformed parameters.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Singular systems, non-convergence, infeasible programs.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace classprob
