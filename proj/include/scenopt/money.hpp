#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace scenopt {

/// Monetary amounts are kept as integral cents so that balance identities
/// (profit = remained + withdrawals - capital) hold exactly.
using Money = std::int64_t;

namespace money {

constexpr Money kCentsPerUnit = 100;

/// Whole currency units -> cents.
constexpr Money from_units(std::int64_t units) { return units * kCentsPerUnit; }

/// Fractional currency amount -> cents, rounded to the nearest cent.
inline Money from_value(double units) { return static_cast<Money>(std::llround(units * 100.0)); }

/// LP coefficients are scaled to millions for conditioning; convert back.
inline Money from_millions(double millions) {
  return static_cast<Money>(std::llround(millions * 1e8));
}

inline double to_units(Money cents) { return static_cast<double>(cents) / 100.0; }

inline double to_millions(Money cents) { return static_cast<double>(cents) / 1e8; }

/// Round to the nearest 100 currency units (the display precision used in
/// the bundled case study's reporting).
inline Money round_to_hundred(Money cents) {
  const Money step = 100 * kCentsPerUnit;
  Money q = cents >= 0 ? (cents + step / 2) / step : -((-cents + step / 2) / step);
  return q * step;
}

/// Formats cents as whole currency units, e.g. "3697200".
std::string format_units(Money cents);

}  // namespace money
}  // namespace scenopt
