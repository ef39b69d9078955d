#ifndef EXPCOMB_ADDRESS_HPP
#define EXPCOMB_ADDRESS_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "entry.hpp"
#include "error.hpp"
#include "lexer.hpp"
#include "periodic.hpp"

namespace expcomb {

/// Eventually periodic integer sequence, kept in canonical form.
class InfiniteAddress {
 public:
  InfiniteAddress() : period_{0} {}
  InfiniteAddress(std::vector<Int> preperiod, std::vector<Int> period)
      : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw DomainError("empty period");
    canonicalize_cycle(preperiod_, period_);
  }

  const std::vector<Int>& preperiod() const { return preperiod_; }
  const std::vector<Int>& period() const { return period_; }
  std::size_t period_length() const { return period_.size(); }
  bool is_periodic() const { return preperiod_.empty(); }

  /// 1-based.
  Int at(std::size_t k) const { return element_at(preperiod_, period_, k - 1); }

  /// First n entries.
  std::vector<Int> prefix(std::size_t n) const {
    std::vector<Int> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = element_at(preperiod_, period_, k);
    return w;
  }

  friend bool operator==(const InfiniteAddress&, const InfiniteAddress&) = default;

 private:
  std::vector<Int> preperiod_;
  std::vector<Int> period_;
};

inline InfiniteAddress per(std::vector<Int> word) { return InfiniteAddress({}, std::move(word)); }

/// s_1 ... s_{n-2} (integers), s_{n-1} (half-integer), then the terminator.
/// Without a tail this is the terminator alone.
class IntermediateAddress {
 public:
  IntermediateAddress() = default;
  IntermediateAddress(std::vector<Int> body, Entry tail) : body_(std::move(body)), tail_(tail) {
    if (!tail.is_half()) throw DomainError("intermediate tail must be a half-integer");
  }

  static IntermediateAddress terminator() { return IntermediateAddress(); }

  bool is_terminator() const { return !tail_.has_value(); }
  const std::vector<Int>& body() const { return body_; }
  const std::optional<Entry>& tail() const { return tail_; }
  std::size_t length() const { return tail_ ? body_.size() + 2 : 1; }

  /// 1-based; empty at and beyond the terminator position.
  std::optional<Entry> entry(std::size_t k) const {
    if (k <= body_.size()) return Entry::integer(body_[k - 1]);
    if (tail_ && k == body_.size() + 1) return tail_;
    return std::nullopt;
  }

  friend bool operator==(const IntermediateAddress&, const IntermediateAddress&) = default;

 private:
  std::vector<Int> body_;
  std::optional<Entry> tail_;
};

/// A point of the circle of addresses.
class Address {
 public:
  Address() : v_(IntermediateAddress::terminator()) {}
  Address(InfiniteAddress a) : v_(std::move(a)) {}
  Address(IntermediateAddress a) : v_(std::move(a)) {}

  static Address terminator() { return Address(); }

  bool is_infinite() const { return std::holds_alternative<InfiniteAddress>(v_); }
  bool is_intermediate() const { return !is_infinite(); }
  bool is_terminator() const { return is_intermediate() && intermediate().is_terminator(); }

  const InfiniteAddress& infinite() const {
    if (!is_infinite()) throw DomainError("expected an infinite address");
    return std::get<InfiniteAddress>(v_);
  }
  const IntermediateAddress& intermediate() const {
    if (!is_intermediate()) throw DomainError("expected an intermediate address");
    return std::get<IntermediateAddress>(v_);
  }

  /// 1-based entry; empty at and beyond the terminator of an intermediate address.
  std::optional<Entry> entry(std::size_t k) const {
    if (is_infinite()) return Entry::integer(infinite().at(k));
    return intermediate().entry(k);
  }

  friend bool operator==(const Address&, const Address&) = default;

 private:
  std::variant<InfiniteAddress, IntermediateAddress> v_;
};

/// Lexicographic order on the line (the circle minus the terminator).
inline std::strong_ordering compare(const Address& a, const Address& b) {
  if (a.is_terminator() || b.is_terminator())
    throw DomainError("the terminator has no position on the line; use circular_order");
  std::size_t limit;
  if (a.is_infinite() && b.is_infinite()) {
    const auto& x = a.infinite();
    const auto& y = b.infinite();
    limit = decision_window(x.preperiod().size(), x.period_length(), y.preperiod().size(),
                            y.period_length());
  } else {
    limit = std::max(a.is_intermediate() ? a.intermediate().length() : 0,
                     b.is_intermediate() ? b.intermediate().length() : 0);
  }
  for (std::size_t k = 1; k <= limit; ++k) {
    const auto ea = a.entry(k);
    const auto eb = b.entry(k);
    if (!ea && !eb) return std::strong_ordering::equal;
    if (!ea || !eb) throw DomainError("malformed address comparison");
    if (*ea != *eb) return *ea <=> *eb;
  }
  return std::strong_ordering::equal;
}

inline bool less(const Address& a, const Address& b) { return compare(a, b) < 0; }

namespace detail {
// Position on the circle cut at the terminator, which is placed last.
inline bool circle_less(const Address& a, const Address& b) {
  if (a.is_terminator()) return false;
  if (b.is_terminator()) return true;
  return less(a, b);
}
}  // namespace detail

/// True iff (a, b, c) is positively oriented on the circle.
inline bool circular_order(const Address& a, const Address& b, const Address& c) {
  if (a == b || b == c || a == c) throw DomainError("circular_order needs pairwise distinct points");
  using detail::circle_less;
  return (circle_less(a, b) && circle_less(b, c)) || (circle_less(b, c) && circle_less(c, a)) ||
         (circle_less(c, a) && circle_less(a, b));
}

inline Address shift(const Address& a) {
  if (a.is_terminator()) throw DomainError("cannot shift the terminator");
  if (a.is_infinite()) {
    const auto& x = a.infinite();
    if (!x.preperiod().empty())
      return InfiniteAddress({x.preperiod().begin() + 1, x.preperiod().end()}, x.period());
    std::vector<Int> p(x.period().begin() + 1, x.period().end());
    p.push_back(x.period().front());
    return InfiniteAddress({}, std::move(p));
  }
  const auto& x = a.intermediate();
  if (x.body().empty()) return Address::terminator();
  return IntermediateAddress({x.body().begin() + 1, x.body().end()}, *x.tail());
}

inline Address shift(const Address& a, std::size_t k) {
  Address r = a;
  for (std::size_t i = 0; i < k; ++i) r = shift(r);
  return r;
}

/// j a: integer j before a non-terminator, or half-integer j before the terminator.
inline Address prepend(Entry j, const Address& a) {
  if (a.is_terminator()) {
    if (!j.is_half()) throw DomainError("only a half-integer can precede the terminator");
    return IntermediateAddress({}, j);
  }
  if (!j.is_integer()) throw DomainError("a half-integer can only precede the terminator");
  const Int v = j.as_integer();
  if (a.is_infinite()) {
    std::vector<Int> pre{v};
    pre.insert(pre.end(), a.infinite().preperiod().begin(), a.infinite().preperiod().end());
    return InfiniteAddress(std::move(pre), a.infinite().period());
  }
  std::vector<Int> body{v};
  body.insert(body.end(), a.intermediate().body().begin(), a.intermediate().body().end());
  return IntermediateAddress(std::move(body), *a.intermediate().tail());
}

inline Address prepend(Int j, const Address& a) { return prepend(Entry::integer(j), a); }

namespace detail {
inline std::string join(const std::vector<Int>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(w[i]);
  }
  return s;
}
}  // namespace detail

inline std::string format(const InfiniteAddress& a) {
  std::string s = detail::join(a.preperiod());
  if (!s.empty()) s += ' ';
  return s + "(" + detail::join(a.period()) + ")";
}

inline std::string format(const IntermediateAddress& a) {
  if (a.is_terminator()) return "inf";
  std::string s = detail::join(a.body());
  if (!s.empty()) s += ' ';
  return s + a.tail()->str() + " inf";
}

inline std::string format(const Address& a) {
  return a.is_infinite() ? format(a.infinite()) : format(a.intermediate());
}

inline Address parse_address(std::string_view text) {
  using detail::Token;
  const std::vector<Token> t = detail::tokenize(text);
  if (t.empty()) throw ParseError("empty address", 0);
  std::size_t open = t.size();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i].text == "(") {
      open = i;
      break;
    }
  if (open < t.size()) {
    if (t.back().text != ")") throw ParseError("expected ')' at the end", t.back().pos);
    std::vector<Int> pre, cyc;
    for (std::size_t i = 0; i < open; ++i) pre.push_back(detail::expect_int(t[i]));
    for (std::size_t i = open + 1; i + 1 < t.size(); ++i) {
      if (t[i].text == "(" || t[i].text == ")")
        throw ParseError("unexpected '" + t[i].text + "'", t[i].pos);
      Entry h;
      if (detail::parse_half(t[i].text, h))
        throw ParseError("half-integer inside a period", t[i].pos);
      cyc.push_back(detail::expect_int(t[i]));
    }
    if (cyc.empty()) throw ParseError("empty period", t[open].pos);
    return InfiniteAddress(std::move(pre), std::move(cyc));
  }
  if (t.back().text != "inf") throw ParseError("expected 'inf' or a period", t.back().pos);
  if (t.size() == 1) return Address::terminator();
  std::vector<Int> body;
  for (std::size_t i = 0; i + 2 < t.size(); ++i) {
    Entry h;
    if (detail::parse_half(t[i].text, h))
      throw ParseError("half-integer in non-final position", t[i].pos);
    body.push_back(detail::expect_int(t[i]));
  }
  const Token& last = t[t.size() - 2];
  Entry tail;
  if (!detail::parse_half(last.text, tail))
    throw ParseError("expected a half-integer before 'inf', got '" + last.text + "'", last.pos);
  return IntermediateAddress(std::move(body), tail);
}

inline IntermediateAddress parse_intermediate(std::string_view text) {
  Address a = parse_address(text);
  if (!a.is_intermediate()) throw ParseError("expected an intermediate address", 0);
  return a.intermediate();
}

inline InfiniteAddress parse_infinite(std::string_view text) {
  Address a = parse_address(text);
  if (!a.is_infinite()) throw ParseError("expected an infinite address", 0);
  return a.infinite();
}

}  // namespace expcomb

#endif
