#ifndef EXPCOMB_ENTRY_HPP
#define EXPCOMB_ENTRY_HPP

#include <compare>
#include <cstdint>
#include <string>

#include "error.hpp"

namespace expcomb {

using Int = std::int64_t;

namespace detail {

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("integer overflow");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw DomainError("integer overflow");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("integer overflow");
  return r;
}

inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

/// An integer or a half-integer, stored as twice its value.
class Entry {
 public:
  constexpr Entry() = default;

  static Entry integer(Int v) { return Entry(detail::checked_mul(v, 2)); }
  static constexpr Entry from_twice(Int twice) { return Entry(twice); }
  /// k + 1/2
  static Entry half_above(Int k) { return Entry(detail::checked_add(detail::checked_mul(k, 2), 1)); }

  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr bool is_half() const { return !is_integer(); }
  constexpr Int twice() const { return twice_; }

  Int as_integer() const {
    if (!is_integer()) throw DomainError("expected an integer, got " + str());
    return twice_ / 2;
  }
  /// Largest integer not exceeding the value.
  Int floor() const { return detail::floor_div(twice_, 2); }

  Entry plus(Int k) const { return Entry(detail::checked_add(twice_, detail::checked_mul(k, 2))); }
  Entry plus_half() const { return Entry(detail::checked_add(twice_, 1)); }
  Entry minus_half() const { return Entry(detail::checked_sub(twice_, 1)); }

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  friend constexpr auto operator<=>(const Entry&, const Entry&) = default;

 private:
  constexpr explicit Entry(Int twice) : twice_(twice) {}
  Int twice_ = 0;
};

}  // namespace expcomb

#endif
