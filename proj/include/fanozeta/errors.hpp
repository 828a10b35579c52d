#pragma once

#include <stdexcept>
#include <string>

namespace fanozeta {

// Each error family maps onto one process exit code of the CLI.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

// Malformed or mathematically invalid input (bad prime, bad monomial, ...).
class InputError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

class NoRationalLineError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

// An enumeration or table would exceed its configured budget.
class ResourceError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

// A mathematical invariant failed at run time; indicates a bug or corrupt input.
class InvariantError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 5; }
};

}  // namespace fanozeta
