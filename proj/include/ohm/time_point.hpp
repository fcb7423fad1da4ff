#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ohm {

// Exact rational instant. Always stored reduced with a positive denominator,
// so equal values have equal representations and serialization is canonical.
class TimePoint {
 public:
  constexpr TimePoint() : num_(0), den_(1) {}
  TimePoint(long long value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  TimePoint(long long num, long long den);

  // Accepts a decimal integer ("17", "-3") or a slash-separated rational
  // ("7/2", "-1/3"). No whitespace, no decimal point.
  static std::optional<TimePoint> parse(std::string_view text);

  std::string str() const;

  long long num() const { return num_; }
  long long den() const { return den_; }

  friend bool operator==(const TimePoint& a, const TimePoint& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const TimePoint& a, const TimePoint& b);

  friend TimePoint operator+(const TimePoint& a, const TimePoint& b);
  friend TimePoint operator-(const TimePoint& a, const TimePoint& b);

  // Exact (a+b)/2; never collides with a or b when a != b.
  static TimePoint midpoint(const TimePoint& a, const TimePoint& b);

  TimePoint divided_by(long long k) const;

 private:
  static TimePoint reduce(__int128 num, __int128 den);

  long long num_;
  long long den_;
};

}  // namespace ohm
