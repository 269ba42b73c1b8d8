#include "scenopt/money.hpp"

#include <cstdio>

namespace scenopt::money {

std::string format_units(Money cents) {
  const bool negative = cents < 0;
  Money magnitude = negative ? -cents : cents;
  const Money units = magnitude / kCentsPerUnit;
  const Money rest = magnitude % kCentsPerUnit;
  char buf[40];
  if (rest == 0)
    std::snprintf(buf, sizeof buf, "%s%lld", negative ? "-" : "", static_cast<long long>(units));
  else
    std::snprintf(buf, sizeof buf, "%s%lld.%02lld", negative ? "-" : "",
                  static_cast<long long>(units), static_cast<long long>(rest));
  return buf;
}

}  // namespace scenopt::money
