#pragma once

#include <stdexcept>
#include <string>

namespace sawq {

// A run would exceed its configured work budget; raised before any work
// starts so callers can turn it into a clean usage error.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sawq
