#pragma once

#include <stdexcept>
#include <string>

namespace tgeom {

/// A point was queried that is not part of the space's domain
/// (wrong coordinate arity, out-of-range table id, or excluded by a
/// restriction).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation precondition was violated (order mismatch, empty subset,
/// degenerate skeleton, anchor off its tube, ...).
class ContractError : public std::invalid_argument {
 public:
  explicit ContractError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// Input data failed validation (asymmetric sigma table, bad config field).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what)
      : std::runtime_error(what) {}
};

/// The operation is not defined for this backend (e.g. coordinate
/// differentiation of a tabulated space).
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace tgeom
