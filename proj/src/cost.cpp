#include "ioselect/cost.hpp"

#include <charconv>
#include <cstdlib>

#include "ioselect/errors.hpp"

namespace ioselect {

Cost Cost::from_integer(std::int64_t whole) {
  std::int64_t units = 0;
  if (__builtin_mul_overflow(whole, kUnitsPerWhole, &units)) {
    throw CostOverflow("cost " + std::to_string(whole) + " exceeds the exact range");
  }
  return Cost(units);
}

Cost Cost::parse(std::string_view text, int decimals) {
  if (decimals < 0 || decimals > kMaxDecimals) {
    throw InvalidArgument("cost precision must be between 0 and 6 decimals");
  }
  const std::string quoted = "\"" + std::string(text) + "\"";
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  const auto dot = rest.find('.');
  std::string_view whole = rest.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : rest.substr(dot + 1);
  if (whole.empty() || (dot != std::string_view::npos && frac.empty())) {
    throw ParseError("malformed cost literal " + quoted);
  }
  auto all_digits = [](std::string_view s) {
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  if (!all_digits(whole) || !all_digits(frac)) {
    throw ParseError("malformed cost literal " + quoted);
  }
  // Trailing zeros never carry precision.
  while (!frac.empty() && frac.back() == '0') frac.remove_suffix(1);
  if (static_cast<int>(frac.size()) > decimals) {
    throw ParseError("cost literal " + quoted + " has more than " + std::to_string(decimals) +
                     " fractional digits");
  }

  std::int64_t whole_value = 0;
  auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), whole_value);
  if (ec != std::errc{} || ptr != whole.data() + whole.size()) {
    throw CostOverflow("cost literal " + quoted + " exceeds the exact range");
  }
  std::int64_t frac_units = 0;
  for (int i = 0; i < kMaxDecimals; ++i) {
    frac_units = frac_units * 10 + (i < static_cast<int>(frac.size()) ? frac[i] - '0' : 0);
  }
  std::int64_t units = 0;
  if (__builtin_mul_overflow(whole_value, kUnitsPerWhole, &units) ||
      __builtin_add_overflow(units, frac_units, &units)) {
    throw CostOverflow("cost literal " + quoted + " exceeds the exact range");
  }
  return Cost(negative ? -units : units);
}

std::string Cost::to_string() const {
  // Work on the magnitude as unsigned so INT64_MIN renders too.
  const bool negative = units_ < 0;
  const std::uint64_t magnitude =
      negative ? ~static_cast<std::uint64_t>(units_) + 1 : static_cast<std::uint64_t>(units_);
  std::string out = negative ? "-" : "";
  out += std::to_string(magnitude / kUnitsPerWhole);
  std::uint64_t frac = magnitude % kUnitsPerWhole;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, kMaxDecimals - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

Cost& Cost::operator+=(Cost other) {
  std::int64_t result = 0;
  if (__builtin_add_overflow(units_, other.units_, &result)) {
    throw CostOverflow("cost sum exceeds the exact range");
  }
  units_ = result;
  return *this;
}

Cost& Cost::operator-=(Cost other) {
  std::int64_t result = 0;
  if (__builtin_sub_overflow(units_, other.units_, &result)) {
    throw CostOverflow("cost difference exceeds the exact range");
  }
  units_ = result;
  return *this;
}

Cost sum_at(std::span<const Cost> costs, std::span<const int> indices) {
  Cost total;
  for (int i : indices) total += costs[static_cast<std::size_t>(i)];
  return total;
}

int compare_ratio(Cost a, std::int64_t b, Cost c, std::int64_t d) {
  const __int128 lhs = static_cast<__int128>(a.units()) * d;
  const __int128 rhs = static_cast<__int128>(c.units()) * b;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace ioselect
