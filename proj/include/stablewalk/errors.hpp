// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace stablewalk {

/// Bad parameters, malformed descriptors, missing config keys.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A statistical comparison was refused because its preconditions do not
/// hold (censoring reaches into the comparison window, too few abscissae...).
class StatisticalRefusal : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Numerical procedure failed to reach its accuracy target.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

  private:
    double achieved_;
};

}  // namespace stablewalk
