// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace unruh {

//! Input rejected by a precondition check (bad unit tag, invalid profile...).
class InvalidArgument : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! Physically or numerically inconsistent setup (e.g. window too small).
class ConfigurationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace unruh
