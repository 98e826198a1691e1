#pragma once

#include <stdexcept>
#include <string>

namespace qdirac {

/// A coefficient or velocity denominator vanished at the requested point.
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qdirac
