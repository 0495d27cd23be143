#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace netlat {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NonPrime : public Error {
public:
  explicit NonPrime(std::uint64_t p)
      : Error("characteristic " + std::to_string(p) + " is not prime"), p_(p) {}
  std::uint64_t value() const noexcept { return p_; }

private:
  std::uint64_t p_;
};

/// A configured size cap (field size, subspace count, lattice size) was hit.
class CapExceeded : public Error {
public:
  CapExceeded(const std::string &what, std::uint64_t cap)
      : Error(what + " exceeds cap " + std::to_string(cap)), cap_(cap) {}
  std::uint64_t cap() const noexcept { return cap_; }

private:
  std::uint64_t cap_;
};

class DivisionByZero : public Error {
public:
  DivisionByZero() : Error("division by zero in finite field") {}
};

class AmbientMismatch : public Error {
public:
  AmbientMismatch(std::size_t a, std::size_t b)
      : Error("ambient dimensions differ: " + std::to_string(a) + " vs " +
              std::to_string(b)) {}
};

class SingularMatrix : public Error {
public:
  SingularMatrix() : Error("matrix is singular") {}
};

/// Group closure outgrew its element budget. Never a silent truncation.
class BudgetExceeded : public Error {
public:
  BudgetExceeded(std::uint64_t budget, std::uint64_t size_reached)
      : Error("closure budget " + std::to_string(budget) +
              " exceeded (reached " + std::to_string(size_reached) + ")"),
        budget_(budget), reached_(size_reached) {}
  std::uint64_t budget() const noexcept { return budget_; }
  std::uint64_t size_reached() const noexcept { return reached_; }

private:
  std::uint64_t budget_;
  std::uint64_t reached_;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

/// Malformed lattice fixture or a table that fails the lattice axioms.
class LatticeError : public Error {
public:
  using Error::Error;
};

} // namespace netlat
