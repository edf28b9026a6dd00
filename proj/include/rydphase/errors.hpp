// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rydphase
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Precondition or parameter-range violation.
class InvalidArgument : public Error
{
public:
  using Error::Error;
};

// Singular systems, NaN propagation, non-finite objectives, norm growth.
class NumericalError : public Error
{
public:
  using Error::Error;
};

class ConfigError : public Error
{
public:
  using Error::Error;
};

class IoError : public Error
{
public:
  using Error::Error;
};

}  // namespace rydphase
