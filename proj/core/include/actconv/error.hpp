#pragma once

#include <stdexcept>
#include <string>

namespace actconv {

/// Two objects that must live on the same finite space do not.
class SpaceMismatch : public std::invalid_argument {
 public:
  explicit SpaceMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// An exact or exhaustive computation was requested beyond its size limit.
class LimitExceeded : public std::length_error {
 public:
  explicit LimitExceeded(const std::string& what) : std::length_error(what) {}
};

/// A structural precondition (graphop, Markov, ...) does not hold.
class PreconditionFailed : public std::domain_error {
 public:
  explicit PreconditionFailed(const std::string& what) : std::domain_error(what) {}
};

}  // namespace actconv
