#pragma once

// Exact integer types used throughout the library.
//
// Every algorithm is a template over an integer type satisfying
// ExactInteger.  Two models are provided:
//
//   BigInt     boost::multiprecision::cpp_int, unbounded.
//   Checked64  a 64-bit integer whose operations throw overflow_error
//              instead of wrapping; used by the enumeration-heavy
//              experiments where coordinates stay small.
//
// Either way a result is exact or an exception is raised.

#include <charconv>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "radixion/error.hpp"

namespace radixion {

using BigInt = boost::multiprecision::cpp_int;

class Checked64 {
 public:
  constexpr Checked64() noexcept = default;
  constexpr Checked64(std::int64_t v) noexcept : v_(v) {}  // NOLINT: implicit like a builtin
  constexpr Checked64(int v) noexcept : v_(v) {}           // NOLINT

  constexpr std::int64_t value() const noexcept { return v_; }
  explicit constexpr operator double() const noexcept { return static_cast<double>(v_); }

  friend Checked64 operator+(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw overflow_error("Checked64: addition overflow");
    return r;
  }
  friend Checked64 operator-(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw overflow_error("Checked64: subtraction overflow");
    return r;
  }
  friend Checked64 operator*(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw overflow_error("Checked64: multiplication overflow");
    return r;
  }
  friend Checked64 operator/(Checked64 a, Checked64 b) {
    if (b.v_ == 0) throw std::domain_error("Checked64: division by zero");
    if (a.v_ == std::numeric_limits<std::int64_t>::min() && b.v_ == -1)
      throw overflow_error("Checked64: division overflow");
    return a.v_ / b.v_;
  }
  friend Checked64 operator%(Checked64 a, Checked64 b) {
    if (b.v_ == 0) throw std::domain_error("Checked64: division by zero");
    if (b.v_ == -1) return 0;
    return a.v_ % b.v_;
  }
  Checked64 operator-() const {
    if (v_ == std::numeric_limits<std::int64_t>::min()) throw overflow_error("Checked64: negation overflow");
    return -v_;
  }
  Checked64& operator+=(Checked64 o) { return *this = *this + o; }
  Checked64& operator-=(Checked64 o) { return *this = *this - o; }
  Checked64& operator*=(Checked64 o) { return *this = *this * o; }
  Checked64& operator/=(Checked64 o) { return *this = *this / o; }
  Checked64& operator%=(Checked64 o) { return *this = *this % o; }

  friend constexpr bool operator==(Checked64, Checked64) noexcept = default;
  friend constexpr auto operator<=>(Checked64, Checked64) noexcept = default;

 private:
  std::int64_t v_ = 0;
};

template <class T>
concept ExactInteger = std::copyable<T> && std::totally_ordered<T> && requires(T a, T b) {
  T(0);
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { a % b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
};

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }
inline double to_double(Checked64 x) { return static_cast<double>(x.value()); }

inline std::string to_string(const BigInt& x) { return x.str(); }
inline std::string to_string(Checked64 x) { return std::to_string(x.value()); }

/// Converts between the integer models; throws overflow_error when the value
/// does not fit the target.
template <ExactInteger To, ExactInteger From>
To integer_cast(const From& x) {
  if constexpr (std::same_as<To, From>) {
    return x;
  } else if constexpr (std::same_as<To, BigInt>) {
    return BigInt(x.value());
  } else {
    static_assert(std::same_as<To, Checked64> && std::same_as<From, BigInt>);
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
      throw overflow_error("integer " + x.str() + " does not fit in 64 bits");
    return Checked64(x.template convert_to<std::int64_t>());
  }
}

/// Parses an optionally signed decimal integer; surrounding blanks allowed.
template <ExactInteger Int>
Int parse_integer(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw parse_error("malformed integer '" + std::string(text) + "'");
  for (char ch : digits)
    if (ch < '0' || ch > '9') throw parse_error("malformed integer '" + std::string(text) + "'");
  if constexpr (std::same_as<Int, BigInt>) {
    BigInt v{std::string(digits)};
    return text.front() == '-' ? BigInt(-v) : v;
  } else {
    std::int64_t v = 0;
    std::string_view signed_text = text.front() == '+' ? text.substr(1) : text;
    auto [ptr, ec] = std::from_chars(signed_text.data(), signed_text.data() + signed_text.size(), v);
    if (ec == std::errc::result_out_of_range) throw overflow_error("integer '" + std::string(text) + "' exceeds 64 bits");
    if (ec != std::errc() || ptr != signed_text.data() + signed_text.size())
      throw parse_error("malformed integer '" + std::string(text) + "'");
    return Int(v);
  }
}

template <ExactInteger Int>
Int abs_value(const Int& x) {
  return x < Int(0) ? Int(-x) : x;
}

/// Least nonnegative residue of a modulo |m|.
template <ExactInteger Int>
Int floor_mod(const Int& a, const Int& m) {
  Int mm = abs_value(m);
  Int r = a % mm;
  if (r < Int(0)) r = r + mm;
  return r;
}

/// Converts a nonnegative value to std::uint64_t (table indices, counts).
inline std::uint64_t to_u64(const BigInt& x) {
  if (x < 0 || x > std::numeric_limits<std::uint64_t>::max())
    throw overflow_error("integer " + x.str() + " is not a valid unsigned 64-bit value");
  return x.convert_to<std::uint64_t>();
}
inline std::uint64_t to_u64(Checked64 x) {
  if (x.value() < 0) throw overflow_error("negative value used as unsigned");
  return static_cast<std::uint64_t>(x.value());
}

inline std::size_t hash_value(Checked64 x) noexcept { return std::hash<std::int64_t>{}(x.value()); }
inline std::size_t hash_value(const BigInt& x) noexcept { return boost::multiprecision::hash_value(x); }

}  // namespace radixion
