#include "ohm/time_point.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ohm {

namespace {

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::optional<long long> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  long long value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

TimePoint TimePoint::reduce(__int128 num, __int128 den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    den = 1;
  } else {
    __int128 g = gcd128(num, den);
    num /= g;
    den /= g;
  }
  constexpr __int128 lo = std::numeric_limits<long long>::min();
  constexpr __int128 hi = std::numeric_limits<long long>::max();
  if (num < lo || num > hi || den > hi) throw std::overflow_error("time value out of range");
  TimePoint t;
  t.num_ = static_cast<long long>(num);
  t.den_ = static_cast<long long>(den);
  return t;
}

TimePoint::TimePoint(long long num, long long den) { *this = reduce(num, den); }

std::optional<TimePoint> TimePoint::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_int(text);
    if (!n) return std::nullopt;
    return TimePoint(*n);
  }
  auto n = parse_int(text.substr(0, slash));
  auto d = parse_int(text.substr(slash + 1));
  if (!n || !d || *d <= 0) return std::nullopt;
  return TimePoint(*n, *d);
}

std::string TimePoint::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const TimePoint& a, const TimePoint& b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

TimePoint operator+(const TimePoint& a, const TimePoint& b) {
  return TimePoint::reduce(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                           static_cast<__int128>(a.den_) * b.den_);
}

TimePoint operator-(const TimePoint& a, const TimePoint& b) {
  return TimePoint::reduce(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                           static_cast<__int128>(a.den_) * b.den_);
}

TimePoint TimePoint::midpoint(const TimePoint& a, const TimePoint& b) {
  return TimePoint::reduce(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                           static_cast<__int128>(a.den_) * b.den_ * 2);
}

TimePoint TimePoint::divided_by(long long k) const {
  return reduce(num_, static_cast<__int128>(den_) * k);
}

}  // namespace ohm
