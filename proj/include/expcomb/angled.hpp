#ifndef EXPCOMB_ANGLED_HPP
#define EXPCOMB_ANGLED_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "address.hpp"
#include "component.hpp"
#include "error.hpp"
#include "internal_address.hpp"
#include "itinerary.hpp"

namespace expcomb {

/// The component having periodic r (of exact period n) as a sector boundary.
inline HyperbolicComponent component_from_boundary(const InfiniteAddress& r) {
  if (!r.is_periodic()) throw DomainError("sector boundaries are periodic");
  const std::size_t n = r.period_length();
  if (n == 1) return HyperbolicComponent(IntermediateAddress::terminator());
  auto word = kneading_pm(r, Side::Lower).first(n - 1);
  word.push_back(Symbol::star());
  const Address s = solve_itinerary(Itinerary::finite(word), r);
  HyperbolicComponent w(s.intermediate());
  if (w.boundary(r.at(n)) != r) throw DomainError("address is not a sector boundary of its component");
  return w;
}

struct ArcQueryResult {
  Int period = 0;
  IntermediateAddress component;
  std::optional<Int> sector_kneading_entry;
};

namespace detail {

inline ArcQueryResult locate_on_arc(const Itinerary& ka, const Itinerary& ks, const Address& s,
                                    std::size_t j) {
  const auto word = ka.first(j);
  const Itinerary target = Itinerary::periodic(word);
  std::optional<HyperbolicComponent> v;
  for (auto side : {SeedSide::FromBelow, SeedSide::FromAbove}) {
    try {
      const InfiniteAddress r = solve_periodic_word(word, s, side);
      if (r.period_length() != j) continue;
      v = component_from_boundary(r);
      break;
    } catch (const NotRealized&) {
    }
  }
  if (!v || v->period() != j || v->forbidden_kneading() != target)
    throw DomainError("could not locate the component on the arc");
  ArcQueryResult res{static_cast<Int>(j), v->addr(), std::nullopt};
  if (const auto x = ks.get(j); x && x->is_int()) res.sector_kneading_entry = x->value;
  return res;
}

inline std::optional<ArcQueryResult> arc_query(const SectorRef& a, const Address& s,
                                               const Itinerary& ks) {
  if (s.is_terminator() || !less(a.lower, s) || !less(s, a.upper))
    throw DomainError("address is not in the wake of the sector");
  const HyperbolicComponent w(a.component);
  const Itinerary ka = sector_kneading(w, a);
  const auto j = first_difference(ka, ks);
  if (!j) return std::nullopt;
  if (*j == 1) return ArcQueryResult{1, IntermediateAddress::terminator(), std::nullopt};
  return locate_on_arc(ka, ks, s, *j);
}

}  // namespace detail

/// Lowest-period component on the arc from sector a to s; empty when the
/// kneading sequences never differ.
inline std::optional<ArcQueryResult> lowest_period_on_arc(const SectorRef& a, const Address& s) {
  return detail::arc_query(a, s, kneading(s));
}

/// As above with the arc ending at the component v.
inline std::optional<ArcQueryResult> lowest_period_on_arc(const SectorRef& a,
                                                          const HyperbolicComponent& v) {
  if (v.period() < 2) throw DomainError("the period one component lies in no wake");
  return detail::arc_query(a, v.address(), v.forbidden_kneading());
}

struct FiniteCount {
  Int count;
  friend bool operator==(const FiniteCount&, const FiniteCount&) = default;
};
struct InfiniteCount {
  friend bool operator==(const InfiniteCount&, const InfiniteCount&) = default;
};
using OrbitCount = std::variant<FiniteCount, InfiniteCount>;

inline OrbitCount essential_orbit_count(const HyperbolicComponent& w) {
  const auto& e = w.internal_address().entries;
  for (std::size_t i = 0; i + 1 < e.size(); ++i)
    if (e[i + 1].period % e[i].period != 0) return InfiniteCount{};
  return FiniteCount{static_cast<Int>(e.size()) - 1};
}

struct AngledEntry {
  Int period = 1;
  std::optional<Rational> height;

  friend bool operator==(const AngledEntry&, const AngledEntry&) = default;
};

struct AngledInternalAddress {
  std::vector<AngledEntry> entries;
  friend bool operator==(const AngledInternalAddress&, const AngledInternalAddress&) = default;
};

/// Components W_1, W_2, ... of the internal address of s, ending with Hyp(s).
inline std::vector<HyperbolicComponent> internal_chain(const IntermediateAddress& s) {
  std::vector<HyperbolicComponent> chain{HyperbolicComponent(IntermediateAddress::terminator())};
  if (s.is_terminator()) return chain;
  const Itinerary ks = kneading(s);
  SectorRef a = sector_info(chain.back(), SectorKey::kneading_entry(ks.at(1).value));
  for (;;) {
    const auto res = lowest_period_on_arc(a, s);
    if (!res) throw DomainError("internal address chain did not reach the target");
    chain.emplace_back(res->component);
    if (!res->sector_kneading_entry) break;
    a = sector_info(chain.back(), SectorKey::kneading_entry(*res->sector_kneading_entry));
  }
  if (chain.back().addr() != s) throw DomainError("internal address chain ended elsewhere");
  return chain;
}

namespace detail {

// Denominator of the j-th angle: walk down the arc towards W_j through the
// lowest-period components until the period is a multiple of n_j.
inline Int angle_denominator(const Itinerary& k, std::size_t nj, std::size_t next) {
  const auto base = k.first(nj);
  auto u = [&](std::size_t p) { return base[(p - 1) % nj]; };
  std::size_t l = next;
  while (l % nj != 0) {
    std::optional<std::size_t> d;
    for (std::size_t p = l + 1; p <= l + nj && !d; ++p)
      if (u(p) != u((p - 1) % l + 1)) d = p;
    if (!d) throw DomainError("angle denominator chain failed");
    l = *d;
  }
  return static_cast<Int>(l / nj);
}

}  // namespace detail

inline AngledInternalAddress angled_internal(const IntermediateAddress& s) {
  AngledInternalAddress out;
  if (s.is_terminator()) {
    out.entries.push_back({1, std::nullopt});
    return out;
  }
  const Itinerary k = kneading(s);
  const auto ia = internal_from_kneading(k);
  const auto chain = internal_chain(s);
  if (chain.size() != ia.entries.size()) throw DomainError("internal address chain mismatch");
  for (std::size_t i = 0; i + 1 < ia.entries.size(); ++i) {
    const auto nj = static_cast<std::size_t>(ia.entries[i].period);
    const auto next = static_cast<std::size_t>(ia.entries[i + 1].period);
    const Int q = detail::angle_denominator(k, nj, next);
    std::vector<Address> orbit{Address(s)};
    for (Int t = 1; t + 1 < q; ++t) orbit.push_back(shift(orbit.back(), nj));
    orbit.push_back(chain[i].address());
    const Int p = rotation_numerator(orbit);
    const Int m = ia.entries[i].number->as_integer();
    const Int whole = (i == 0 || m < 0) ? m : m - 1;
    out.entries.push_back({ia.entries[i].period, Rational(whole) + Rational(p, q)});
  }
  out.entries.push_back({ia.entries.back().period, std::nullopt});
  return out;
}

/// Largest periodic address of period at most p that lies below x
/// (strictly below if strict).
inline InfiniteAddress max_periodic_below(const InfiniteAddress& x, std::size_t p, bool strict) {
  std::optional<InfiniteAddress> best;
  for (std::size_t q = 1; q <= p; ++q) {
    std::vector<Int> w = x.prefix(q);
    InfiniteAddress c = per(w);
    const auto o = compare(c, x);
    if (o > 0 || (o == 0 && strict)) {
      w.back() = detail::checked_sub(w.back(), 1);
      c = per(w);
    }
    if (!best || less(*best, c)) best = c;
  }
  return *best;
}

inline IntermediateAddress addr_from_angled(const AngledInternalAddress& a) {
  const auto& e = a.entries;
  if (e.empty() || e.front().period != 1 || e.back().height)
    throw InvalidAngledAddress("malformed angled internal address");
  HyperbolicComponent w(IntermediateAddress::terminator());
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    if (!e[i].height) throw InvalidAngledAddress("infinity mark before the last entry");
    if (e[i].period != static_cast<Int>(w.period()))
      throw InvalidAngledAddress("period does not match the component reached");
    const auto next = static_cast<std::size_t>(e[i + 1].period);
    HyperbolicComponent v(bifurcate_at_height(w, *e[i].height));
    if (v.period() == next) {
      w = v;
      continue;
    }
    if (v.period() < next) throw InvalidAngledAddress("child period exceeds the next period");
    const auto& wake = v.characteristic();
    Int lo = 0, hi = 0;
    for (const auto* r : {&wake.lower, &wake.upper})
      for (Int x : r->period()) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
    const std::size_t cap = 4 * next * static_cast<std::size_t>(1 + hi - lo);
    InfiniteAddress x = wake.upper;
    std::optional<HyperbolicComponent> found;
    for (std::size_t step = 0; step < cap && !found; ++step) {
      const InfiniteAddress t = max_periodic_below(x, next, true);
      if (!less(wake.lower, t)) throw InvalidAngledAddress("descent left the wake");
      const HyperbolicComponent u = component_from_boundary(t);
      const bool upper_char = u.period() >= 2 && u.characteristic().upper == t;
      if (t.period_length() == next && upper_char) {
        found = u;
      } else if (upper_char) {
        x = u.characteristic().lower;
      } else {
        x = t;
      }
    }
    if (!found) throw InvalidAngledAddress("descent iteration cap exceeded");
    w = *found;
  }
  if (static_cast<Int>(w.period()) != e.back().period)
    throw InvalidAngledAddress("final period mismatch");
  if (angled_internal(w.addr()) != a) throw InvalidAngledAddress("verification failed");
  return w.addr();
}

namespace detail {

inline std::string height_str(const Rational& h) {
  const Int den = h.denominator();
  Int num = h.numerator();
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  const Int whole = num / den, rest = num % den;
  std::string frac = std::to_string(rest) + "/" + std::to_string(den);
  if (whole == 0) return sign + frac;
  return sign + std::to_string(whole) + (sign.empty() ? "+" : "-") + frac;
}

inline bool parse_fraction(std::string_view s, Int& p, Int& q) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return false;
  return parse_int(s.substr(0, slash), p) && parse_int(s.substr(slash + 1), q) && p >= 0 && q > 0;
}

inline std::optional<Rational> parse_height(std::string_view s) {
  bool neg = false;
  if (!s.empty() && s[0] == '-') {
    neg = true;
    s.remove_prefix(1);
  }
  const auto sep = s.find_first_of(neg ? "-" : "+");
  Int whole = 0, p, q;
  std::string_view frac = s;
  if (sep != std::string_view::npos) {
    if (!parse_int(s.substr(0, sep), whole) || whole < 0) return std::nullopt;
    frac = s.substr(sep + 1);
  }
  if (!parse_fraction(frac, p, q) || p == 0 || p >= q) return std::nullopt;
  Rational h = Rational(whole) + Rational(p, q);
  if (h.denominator() != q) return std::nullopt;
  return neg ? -h : h;
}

}  // namespace detail

inline std::string format(const AngledInternalAddress& a) {
  std::string s;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (i) s += "->";
    s += "(" + std::to_string(a.entries[i].period) + "," +
         (a.entries[i].height ? detail::height_str(*a.entries[i].height) : "inf") + ")";
  }
  return s;
}

inline AngledInternalAddress parse_angled(std::string_view text) {
  AngledInternalAddress a;
  for (const auto& p : detail::split_arrow_pairs(text)) {
    AngledEntry e;
    if (!detail::parse_int(p.first, e.period) || e.period < 1)
      throw ParseError("bad period '" + p.first + "'", p.pos_first);
    if (p.second != "inf") {
      e.height = detail::parse_height(p.second);
      if (!e.height) throw ParseError("bad height '" + p.second + "'", p.pos_second);
    }
    a.entries.push_back(e);
  }
  for (std::size_t i = 0; i + 1 < a.entries.size(); ++i)
    if (!a.entries[i].height) throw ParseError("only the last entry may be inf", 0);
  return a;
}

}  // namespace expcomb

#endif
