#ifndef EXPCOMB_ITINERARY_HPP
#define EXPCOMB_ITINERARY_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "address.hpp"
#include "entry.hpp"
#include "error.hpp"
#include "lexer.hpp"
#include "periodic.hpp"

namespace expcomb {

/// Int(j), Boundary(j) (the symbol j over j-1), or Star.
struct Symbol {
  enum class Kind { Int, Boundary, Star };
  Kind kind = Kind::Star;
  Int value = 0;

  static Symbol integer(Int j) { return {Kind::Int, j}; }
  static Symbol boundary(Int j) { return {Kind::Boundary, j}; }
  static Symbol star() { return {Kind::Star, 0}; }

  bool is_int() const { return kind == Kind::Int; }
  bool is_boundary() const { return kind == Kind::Boundary; }
  bool is_star() const { return kind == Kind::Star; }

  std::string str() const {
    switch (kind) {
      case Kind::Int:
        return std::to_string(value);
      case Kind::Boundary:
        return std::to_string(value) + "|" + std::to_string(value - 1);
      case Kind::Star:
        break;
    }
    return "*";
  }

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Either a finite Star-terminated word or prefix + cycle^infinity.
class Itinerary {
 public:
  Itinerary() : prefix_{Symbol::star()} {}

  static Itinerary finite(std::vector<Symbol> word) {
    if (word.empty() || !word.back().is_star())
      throw DomainError("a finite itinerary must end in Star");
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
      if (word[i].is_star()) throw DomainError("Star before the end of an itinerary");
    Itinerary it;
    it.prefix_ = std::move(word);
    return it;
  }

  static Itinerary periodic(std::vector<Symbol> prefix, std::vector<Symbol> cycle) {
    if (cycle.empty()) throw DomainError("empty itinerary period");
    for (const auto& v : {std::cref(prefix), std::cref(cycle)})
      for (const auto& x : v.get())
        if (x.is_star()) throw DomainError("Star in an infinite itinerary");
    Itinerary it;
    it.prefix_ = std::move(prefix);
    it.cycle_ = std::move(cycle);
    canonicalize_cycle(it.prefix_, it.cycle_);
    return it;
  }

  static Itinerary periodic(std::vector<Symbol> cycle) { return periodic({}, std::move(cycle)); }

  bool is_finite() const { return cycle_.empty(); }
  /// Number of symbols of a finite itinerary.
  std::size_t length() const { return prefix_.size(); }
  const std::vector<Symbol>& prefix() const { return prefix_; }
  const std::vector<Symbol>& cycle() const { return cycle_; }

  /// 1-based; empty past the Star of a finite itinerary.
  std::optional<Symbol> get(std::size_t k) const {
    if (is_finite()) {
      if (k == 0 || k > prefix_.size()) return std::nullopt;
      return prefix_[k - 1];
    }
    return element_at(prefix_, cycle_, k - 1);
  }

  Symbol at(std::size_t k) const {
    auto s = get(k);
    if (!s) throw DomainError("itinerary index out of range");
    return *s;
  }

  /// First n symbols (fewer if finite and shorter).
  std::vector<Symbol> first(std::size_t n) const {
    std::vector<Symbol> w;
    for (std::size_t k = 1; k <= n; ++k) {
      auto s = get(k);
      if (!s) break;
      w.push_back(*s);
    }
    return w;
  }

  Itinerary shifted(std::size_t k) const {
    if (is_finite()) {
      if (k >= prefix_.size()) throw DomainError("shift past the end of a finite itinerary");
      return finite({prefix_.begin() + static_cast<std::ptrdiff_t>(k), prefix_.end()});
    }
    std::vector<Symbol> pre, cyc = cycle_;
    if (k <= prefix_.size()) {
      pre.assign(prefix_.begin() + static_cast<std::ptrdiff_t>(k), prefix_.end());
    } else {
      const std::size_t r = (k - prefix_.size()) % cyc.size();
      std::rotate(cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(r), cyc.end());
    }
    return periodic(std::move(pre), std::move(cyc));
  }

  /// Length of a window that decides equality with another itinerary.
  std::size_t window_with(const Itinerary& o) const {
    if (is_finite() || o.is_finite()) return std::max(length_hint(), o.length_hint());
    return decision_window(prefix_.size(), cycle_.size(), o.prefix_.size(), o.cycle_.size());
  }

  friend bool operator==(const Itinerary&, const Itinerary&) = default;

 private:
  std::size_t length_hint() const { return prefix_.size() + cycle_.size(); }

  std::vector<Symbol> prefix_;
  std::vector<Symbol> cycle_;
};

/// First position (1-based) where two itineraries differ, or nullopt if equal.
inline std::optional<std::size_t> first_difference(const Itinerary& a, const Itinerary& b) {
  const std::size_t w = a.window_with(b);
  for (std::size_t k = 1; k <= w; ++k)
    if (a.get(k) != b.get(k)) return k;
  return std::nullopt;
}

namespace detail {

// Symbol contributed by r' = sigma^{k-1}(r) in the partition generated by s.
inline Symbol partition_symbol(const Address& rp, const Address& s) {
  if (rp.is_terminator()) return Symbol::star();
  const Entry e = *rp.entry(1);
  if (s.is_terminator()) {
    if (e.is_integer()) return Symbol::integer(e.as_integer());
    return Symbol::boundary(e.plus_half().as_integer());
  }
  if (e.is_half()) return Symbol::integer(e.floor());
  const Int a = e.as_integer();
  const auto c = compare(shift(rp), s);
  if (c > 0) return Symbol::integer(a);
  if (c < 0) return Symbol::integer(detail::checked_sub(a, 1));
  return Symbol::boundary(a);
}

}  // namespace detail

/// Itinerary of r with respect to the partition generated by s.
inline Itinerary itinerary(const Address& r, const Address& s) {
  std::vector<Symbol> out;
  Address cur = r;
  if (r.is_intermediate()) {
    const std::size_t n = r.intermediate().length();
    for (std::size_t k = 1; k <= n; ++k) {
      out.push_back(detail::partition_symbol(cur, s));
      if (k < n) cur = shift(cur);
    }
    return Itinerary::finite(std::move(out));
  }
  const std::size_t pre = r.infinite().preperiod().size();
  const std::size_t len = pre + r.infinite().period_length();
  for (std::size_t k = 1; k <= len; ++k) {
    out.push_back(detail::partition_symbol(cur, s));
    cur = shift(cur);
  }
  std::vector<Symbol> p(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(pre));
  std::vector<Symbol> c(out.begin() + static_cast<std::ptrdiff_t>(pre), out.end());
  return Itinerary::periodic(std::move(p), std::move(c));
}

inline Itinerary kneading(const Address& s) {
  if (s.is_terminator()) throw DomainError("the terminator has no kneading sequence");
  return itinerary(s, s);
}

enum class Side { Lower, Upper };

/// Resolves every Boundary(j) to j (Upper) or j-1 (Lower).
inline Itinerary resolve(const Itinerary& u, Side side) {
  auto fix = [side](std::vector<Symbol> w) {
    for (auto& x : w)
      if (x.is_boundary()) x = Symbol::integer(side == Side::Upper ? x.value : x.value - 1);
    return w;
  };
  if (u.is_finite()) return Itinerary::finite(fix(u.prefix()));
  return Itinerary::periodic(fix(u.prefix()), fix(u.cycle()));
}

inline Itinerary itinerary_pm(const Address& r, const Address& s, Side side) {
  return resolve(itinerary(r, s), side);
}

inline Itinerary kneading_pm(const Address& s, Side side) { return resolve(kneading(s), side); }

enum class SeedSide { FromBelow, FromAbove };

namespace detail {

// Entry to prepend to cur so that the new first itinerary symbol is u.
// A tie (cur == s) under an Int symbol is broken towards `tie`.
inline Entry pullback_entry(const Symbol& u, const Address& cur, const Address& s, SeedSide tie) {
  if (u.is_star()) throw NotRealized("Star before the end of the target itinerary");
  if (s.is_terminator()) {
    if (u.is_int()) {
      if (cur.is_terminator()) throw NotRealized("integer symbol before the terminator");
      return Entry::integer(u.value);
    }
    if (!cur.is_terminator()) throw NotRealized("boundary symbol away from a partition point");
    return Entry::half_above(u.value - 1);
  }
  if (u.is_boundary()) {
    if (cur != s) throw NotRealized("boundary symbol away from a partition point");
    return Entry::integer(u.value);
  }
  if (cur.is_terminator()) return Entry::half_above(u.value);
  const auto c = compare(cur, s);
  const bool above = c > 0 || (c == 0 && tie == SeedSide::FromAbove);
  return Entry::integer(above ? u.value : checked_add(u.value, 1));
}

// Prepends the pullbacks for symbols word[0..) processed from the back.
inline Address pull_back(const std::vector<Symbol>& word, Address cur, const Address& s,
                         SeedSide tie) {
  for (std::size_t k = word.size(); k-- > 0;) cur = prepend(pullback_entry(word[k], cur, s, tie), cur);
  return cur;
}

inline std::vector<Int> pullback_word(const std::vector<Symbol>& word, Address cur, const Address& s,
                                      SeedSide tie) {
  std::vector<Int> w(word.size());
  for (std::size_t k = word.size(); k-- > 0;) {
    const Entry e = pullback_entry(word[k], cur, s, tie);
    w[k] = e.as_integer();
    cur = prepend(e, cur);
  }
  return w;
}

inline void require_int_symbols(const std::vector<Symbol>& w) {
  for (const auto& x : w)
    if (!x.is_int()) throw NotRealized("target itinerary must consist of Int symbols");
}

inline void check_kneading_obstruction(const Itinerary& u, const Address& s) {
  if (s.is_terminator()) return;
  const Itinerary kp = kneading_pm(s, Side::Upper);
  const Itinerary km = kneading_pm(s, Side::Lower);
  const std::size_t shifts =
      u.is_finite() ? u.length() - 1 : u.prefix().size() + u.cycle().size();
  for (std::size_t k = 1; k <= shifts; ++k) {
    const Itinerary t = u.shifted(k);
    if (t == kp || t == km) throw NotRealized("a shift of the target equals K+(s) or K-(s)");
  }
}

// All periodic solutions of itin_s(r) = per(cycle) reachable from the seeds.
inline std::vector<InfiniteAddress> periodic_candidates(const std::vector<Symbol>& cycle,
                                                        const Address& s) {
  const Itinerary target = Itinerary::periodic(cycle);
  std::vector<InfiniteAddress> found;
  auto accept = [&](const std::vector<Int>& w) {
    InfiniteAddress r = per(w);
    if (std::find(found.begin(), found.end(), r) != found.end()) return true;
    if (itinerary(r, s) == target) {
      found.push_back(r);
      return true;
    }
    return false;
  };
  if (s.is_terminator()) {
    std::vector<Int> w;
    for (const auto& x : cycle) w.push_back(x.value);
    accept(w);
    return found;
  }
  const std::size_t m = cycle.size();
  const std::size_t slen =
      s.is_intermediate() ? s.intermediate().length()
                          : s.infinite().preperiod().size() + s.infinite().period_length();
  const std::size_t cap = 2 * m * (slen + m) + 8;
  std::vector<Int> lowword, highword;
  for (const auto& x : cycle) {
    lowword.push_back(x.value);
    highword.push_back(checked_add(x.value, 1));
  }
  struct Seed {
    Address start;
    SeedSide tie;
  };
  const std::vector<Seed> seeds{{s, SeedSide::FromBelow},
                                {s, SeedSide::FromAbove},
                                {per(lowword), SeedSide::FromBelow},
                                {per(highword), SeedSide::FromAbove}};
  for (const auto& seed : seeds) {
    Address x = seed.start;
    for (std::size_t it = 0; it < cap; ++it) {
      const std::vector<Int> w = pullback_word(cycle, x, s, seed.tie);
      if (accept(w)) break;
      for (std::size_t k = w.size(); k-- > 0;) x = prepend(w[k], x);
    }
  }
  return found;
}

}  // namespace detail

namespace detail {

// Nearest solution to s from the requested side; the extreme one if that
// side is empty.
inline Address pick_side(const std::vector<Address>& results, const Address& s, SeedSide side) {
  auto cmp = [](const Address& a, const Address& b) { return less(a, b); };
  std::vector<Address> sorted = results;
  std::sort(sorted.begin(), sorted.end(), cmp);
  if (s.is_terminator()) return side == SeedSide::FromBelow ? sorted.front() : sorted.back();
  if (side == SeedSide::FromBelow) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), s, cmp);
    return it == sorted.begin() ? sorted.front() : *(it - 1);
  }
  auto it = std::upper_bound(sorted.begin(), sorted.end(), s, cmp);
  return it == sorted.end() ? sorted.back() : *it;
}

// Solutions of itin_s(r) = prefix + cycle^infinity whose periodic part is
// given by a word of the length of `cycle`.
inline std::vector<Address> periodic_solutions(const std::vector<Symbol>& prefix,
                                               const std::vector<Symbol>& cycle, const Address& s,
                                               SeedSide side) {
  const Itinerary target = Itinerary::periodic(prefix, cycle);
  std::vector<Address> results;
  for (const auto& c : periodic_candidates(cycle, s)) {
    try {
      Address r = pull_back(prefix, c, s, side);
      if (r.is_infinite() && itinerary(r, s) == target &&
          std::find(results.begin(), results.end(), r) == results.end())
        results.push_back(r);
    } catch (const NotRealized&) {
    }
  }
  return results;
}

}  // namespace detail

/// Periodic r = per(w) with |w| = |word| whose itinerary is per(word).
inline InfiniteAddress solve_periodic_word(const std::vector<Symbol>& word, const Address& s,
                                           SeedSide side = SeedSide::FromBelow) {
  detail::require_int_symbols(word);
  const auto results = detail::periodic_solutions({}, word, s, side);
  if (results.empty()) throw NotRealized("no address realizes the periodic itinerary");
  return detail::pick_side(results, s, side).infinite();
}

/// An address r with itinerary(r, s) == u. For periodic u the period of r is
/// the smallest multiple of the period of u that admits a solution.
inline Address solve_itinerary(const Itinerary& u, const Address& s,
                               SeedSide side = SeedSide::FromBelow) {
  detail::check_kneading_obstruction(u, s);
  if (u.is_finite()) {
    std::vector<Symbol> w(u.prefix().begin(), u.prefix().end() - 1);
    detail::require_int_symbols(w);
    Address r = detail::pull_back(w, Address::terminator(), s, side);
    if (itinerary(r, s) != u) throw NotRealized("itinerary not realized");
    return r;
  }
  detail::require_int_symbols(u.prefix());
  detail::require_int_symbols(u.cycle());
  const std::size_t slen =
      s.is_intermediate() ? s.intermediate().length()
                          : s.infinite().preperiod().size() + s.infinite().period_length();
  const std::size_t d = u.cycle().size();
  for (std::size_t m = d; m <= 2 * (slen + d); m += d) {
    std::vector<Symbol> cycle;
    for (std::size_t i = 0; i < m; ++i) cycle.push_back(u.cycle()[i % d]);
    const auto results = detail::periodic_solutions(u.prefix(), cycle, s, side);
    if (!results.empty()) return detail::pick_side(results, s, side);
  }
  throw NotRealized("no address realizes the periodic itinerary");
}

inline std::string format(const Itinerary& u) {
  auto join = [](const std::vector<Symbol>& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) s += ' ';
      s += w[i].str();
    }
    return s;
  };
  if (u.is_finite()) return join(u.prefix());
  std::string s = join(u.prefix());
  if (!s.empty()) s += ' ';
  return s + "(" + join(u.cycle()) + ")";
}

namespace detail {
inline Symbol parse_symbol(const Token& t) {
  if (t.text == "*") return Symbol::star();
  const auto bar = t.text.find('|');
  if (bar != std::string::npos) {
    Int hi, lo;
    if (!parse_int(std::string_view(t.text).substr(0, bar), hi) ||
        !parse_int(std::string_view(t.text).substr(bar + 1), lo) || lo + 1 != hi)
      throw ParseError("malformed boundary symbol '" + t.text + "'", t.pos);
    return Symbol::boundary(hi);
  }
  return Symbol::integer(expect_int(t));
}
}  // namespace detail

inline Itinerary parse_itinerary(std::string_view text) {
  const auto t = detail::tokenize(text);
  if (t.empty()) throw ParseError("empty itinerary", 0);
  std::vector<Symbol> pre, cyc;
  bool in_cycle = false, closed = false;
  for (const auto& tok : t) {
    if (closed) throw ParseError("trailing input after ')'", tok.pos);
    if (tok.text == "(") {
      if (in_cycle) throw ParseError("nested '('", tok.pos);
      in_cycle = true;
    } else if (tok.text == ")") {
      if (!in_cycle) throw ParseError("unbalanced ')'", tok.pos);
      closed = true;
    } else {
      (in_cycle ? cyc : pre).push_back(detail::parse_symbol(tok));
    }
  }
  try {
    if (in_cycle) {
      if (!closed) throw ParseError("missing ')'", text.size());
      return Itinerary::periodic(std::move(pre), std::move(cyc));
    }
    return Itinerary::finite(std::move(pre));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace expcomb

#endif
