#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stabkit {

enum class ErrorKind {
  AxiomViolation,
  CrossGroupElement,
  BudgetExceeded,
  PairOutsideCarrier,
  EmptyCarrier,
  ArityMismatch,
  CarrierMismatch,
  ArityUnsupported,
  NonAbelianGroup,
  IndexOutOfRange,
  InvalidArgument,
  Overflow,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Base of every exception thrown by the toolkit; `kind()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class AxiomViolation : public Error {
 public:
  AxiomViolation(std::string axiom, std::vector<std::size_t> witness);
  const std::string& axiom() const noexcept { return axiom_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  std::string axiom_;
  std::vector<std::size_t> witness_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string what_budget, std::uint64_t required, std::uint64_t budget)
      : Error(ErrorKind::BudgetExceeded, what_budget + " requires " + std::to_string(required) +
                                             " units, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}
  // Saturates at UINT64_MAX when the true requirement does not fit.
  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

}  // namespace stabkit
