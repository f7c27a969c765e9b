#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace ioselect {

/// Exact decimal cost held as a count of 10^-6 units.
///
/// Arithmetic is checked; leaving the int64 range throws CostOverflow. Costs
/// are only ever added and compared, so no rounding ever happens.
class Cost {
 public:
  static constexpr int kMaxDecimals = 6;
  static constexpr std::int64_t kUnitsPerWhole = 1'000'000;

  constexpr Cost() = default;

  static constexpr Cost from_units(std::int64_t units) { return Cost(units); }
  static Cost from_integer(std::int64_t whole);

  /// Parses a decimal literal such as "3", "-1", "0.25" or "12.500".
  /// `decimals` caps the accepted fractional digits (at most kMaxDecimals);
  /// literals finer than that are rejected rather than rounded.
  static Cost parse(std::string_view text, int decimals = kMaxDecimals);

  constexpr std::int64_t units() const { return units_; }
  double to_double() const { return static_cast<double>(units_) / kUnitsPerWhole; }

  /// Shortest decimal rendering: "3", "0.25", "-1.5".
  std::string to_string() const;

  Cost& operator+=(Cost other);
  Cost& operator-=(Cost other);
  friend Cost operator+(Cost a, Cost b) { return a += b; }
  friend Cost operator-(Cost a, Cost b) { return a -= b; }

  constexpr auto operator<=>(const Cost&) const = default;

 private:
  constexpr explicit Cost(std::int64_t units) : units_(units) {}

  std::int64_t units_ = 0;
};

/// Checked sum of the entries of `costs` selected by `indices` (0-based).
Cost sum_at(std::span<const Cost> costs, std::span<const int> indices);

/// Compares a/b against c/d exactly for nonnegative weights and positive
/// counts. Returns <0, 0, >0.
int compare_ratio(Cost a, std::int64_t b, Cost c, std::int64_t d);

}  // namespace ioselect
