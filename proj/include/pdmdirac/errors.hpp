#pragma once

#include <stdexcept>
#include <string>

namespace pdmdirac {

// Argument outside the support of an operation (x <= 0, n > n_max, ...).
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Invalid physical or ambiguity parameters at construction.
class parameter_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Fields on different grids, wrong coordinate, non-uniform where uniform is needed.
class grid_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Eigensolver failed to converge; carries diagnostics in what().
class solver_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace pdmdirac
