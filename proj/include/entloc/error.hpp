#pragma once

#include <stdexcept>
#include <string>

namespace entloc {

/// Raised for every contract violation in the library: bad inputs, capacity
/// limits, numerical failures and conflicting oracle verdicts.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entloc
