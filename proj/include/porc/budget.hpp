#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace porc {

/// A computation would exceed its size guard. Partial results are never returned.
class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(const std::string& what, double required, double limit)
      : std::runtime_error(what + ": needs " + fmt(required) + ", limit " + fmt(limit)),
        required_(required),
        limit_(limit) {}

  double required() const noexcept { return required_; }
  double limit() const noexcept { return limit_; }

private:
  static std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
  }
  double required_, limit_;
};

}  // namespace porc
