#pragma once

#include <stdexcept>
#include <string>

namespace dfma {

// Error taxonomy shared by all modules. The CLI maps each category to a
// fixed process exit code (see tools/dfma_cli.cpp):
//   ParameterError -> 2, FormatError -> 3, DomainError -> 4.

// Violated precondition or out-of-range argument (bad lengths, bad beta
// domain, non-ascending candidate sets, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Malformed or inconsistent data: bad file magic, truncated payloads,
// shape mismatches, mixed grids.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Well-formed input on which the requested statistic is undefined
// (no class separation anywhere, a class with fewer than two samples).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dfma
