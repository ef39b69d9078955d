#ifndef EXPCOMB_COMPONENT_HPP
#define EXPCOMB_COMPONENT_HPP

#include <boost/rational.hpp>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "address.hpp"
#include "entry.hpp"
#include "error.hpp"
#include "internal_address.hpp"
#include "itinerary.hpp"

namespace expcomb {

using Rational = boost::rational<Int>;

struct CharacteristicPair {
  InfiniteAddress lower;
  InfiniteAddress upper;

  friend bool operator==(const CharacteristicPair&, const CharacteristicPair&) = default;
};

/// Hyperbolic component keyed by its intermediate address. Derived data is
/// computed once at construction, so copies share nothing mutable.
class HyperbolicComponent {
 public:
  explicit HyperbolicComponent(IntermediateAddress addr) : addr_(std::move(addr)) {
    kneading_ = itinerary(addr_, addr_);
    internal_ = internal_from_kneading(kneading_);
    const std::size_t n = period();
    if (n < 2) return;
    const auto& e = internal_.entries;
    const auto prev = static_cast<std::size_t>(e[e.size() - 2].period);
    forbidden_ = Itinerary::periodic(detail::periodized(kneading_, prev, n));
    u_ = forbidden_->at(n).value;
    pair_ = CharacteristicPair{boundary(u_ + 1), boundary(u_)};
  }

  const IntermediateAddress& addr() const { return addr_; }
  Address address() const { return addr_; }
  std::size_t period() const { return addr_.length(); }
  const Itinerary& kneading_sequence() const { return kneading_; }
  const InternalAddress& internal_address() const { return internal_; }

  const Itinerary& forbidden_kneading() const {
    require_period_two("the period one component has no forbidden kneading sequence");
    return *forbidden_;
  }
  /// u(W), the n-th entry of the forbidden kneading sequence.
  Int forbidden_entry() const {
    require_period_two("the period one component has no forbidden kneading entry");
    return u_;
  }
  const CharacteristicPair& characteristic() const {
    require_period_two("the period one component has no characteristic addresses");
    return *pair_;
  }
  const std::optional<CharacteristicPair>& characteristic_opt() const { return pair_; }

  /// Periodic boundary whose n-th entry is c (per(c) for period one).
  InfiniteAddress boundary(Int c) const {
    if (period() == 1) return per({c});
    const std::size_t n = period();
    const auto word = kneading_.first(n - 1);
    const Address tail = prepend(c, addr_);
    const Address r = detail::pull_back(word, tail, addr_, SeedSide::FromBelow);
    std::vector<Int> w;
    for (std::size_t k = 1; k < n; ++k) w.push_back(r.entry(k)->as_integer());
    w.push_back(c);
    InfiniteAddress b = per(w);
    if (b.period_length() != n) throw DomainError("sector boundary without exact period");
    return b;
  }

  friend bool operator==(const HyperbolicComponent& a, const HyperbolicComponent& b) {
    return a.addr_ == b.addr_;
  }

 private:
  void require_period_two(const char* msg) const {
    if (period() < 2) throw DomainError(msg);
  }

  IntermediateAddress addr_;
  Itinerary kneading_;
  InternalAddress internal_;
  std::optional<Itinerary> forbidden_;
  Int u_ = 0;
  std::optional<CharacteristicPair> pair_;
};

inline HyperbolicComponent hyp(std::string_view literal) {
  return HyperbolicComponent(parse_intermediate(literal));
}

inline CharacteristicPair characteristic_addresses(const HyperbolicComponent& w) {
  return w.characteristic();
}

inline InfiniteAddress sector_boundary(const HyperbolicComponent& w, Int s_star) {
  return w.boundary(s_star);
}

inline Itinerary forbidden_kneading(const HyperbolicComponent& w) { return w.forbidden_kneading(); }

inline bool wake_contains(const HyperbolicComponent& w, const Address& r) {
  if (w.period() == 1) return true;
  if (r.is_terminator()) return false;
  const auto& p = w.characteristic();
  return less(p.lower, r) && less(r, p.upper);
}

/// V lies strictly inside the wake of W.
inline bool precedes(const HyperbolicComponent& w, const HyperbolicComponent& v) {
  return !(w == v) && wake_contains(w, v.address());
}

struct SectorRef {
  IntermediateAddress component;
  Int height_index = 0;
  Entry label;
  Int kneading_entry = 0;
  Int sector_number = 0;
  InfiniteAddress lower;
  InfiniteAddress upper;
};

struct SectorKey {
  enum class Kind { HeightIndex, Label, KneadingEntry, SectorNumber };
  Kind kind;
  Entry value;

  static SectorKey height(Int k) { return {Kind::HeightIndex, Entry::integer(k)}; }
  static SectorKey label(Entry l) { return {Kind::Label, l}; }
  static SectorKey kneading_entry(Int u) { return {Kind::KneadingEntry, Entry::integer(u)}; }
  static SectorKey sector_number(Int m) { return {Kind::SectorNumber, Entry::integer(m)}; }
};

namespace detail {

// Sector boundary at internal height h; at h = 0 the two sides differ.
inline InfiniteAddress boundary_at_height(const HyperbolicComponent& w, Int h, bool from_above) {
  const Int u = w.forbidden_entry();
  if (h > 0) return w.boundary(u + 1 + h);
  if (h < 0) return w.boundary(u + h);
  return from_above ? w.boundary(u + 1) : w.boundary(u);
}

inline Int height_for_key(const HyperbolicComponent& w, const SectorKey& key) {
  const bool one = w.period() == 1;
  const Int u = one ? 0 : w.forbidden_entry();
  switch (key.kind) {
    case SectorKey::Kind::HeightIndex:
      return key.value.as_integer();
    case SectorKey::Kind::Label:
      if (one) {
        if (!key.value.is_half()) throw DomainError("period one sector labels are half-integers");
        return key.value.floor();
      }
      return key.value.as_integer() - u - 1;
    case SectorKey::Kind::KneadingEntry: {
      const Int e = key.value.as_integer();
      if (one) return e;
      if (e == u) throw DomainError("kneading entry " + std::to_string(e) + " is forbidden");
      return e > u ? e - u - 1 : e - u;
    }
    case SectorKey::Kind::SectorNumber: {
      const Int m = key.value.as_integer();
      if (one) return m;
      if (m == 0) throw DomainError("sector number zero");
      return m > 0 ? m - 1 : m;
    }
  }
  throw DomainError("unknown sector key");
}

}  // namespace detail

/// The sector of w selected by any of its four labelings, with all of them
/// filled in. Kneading entries are read off the bounding sector boundaries.
inline SectorRef sector_info(const HyperbolicComponent& w, const SectorKey& key) {
  const Int k = detail::height_for_key(w, key);
  SectorRef a;
  a.component = w.addr();
  a.height_index = k;
  if (w.period() == 1) {
    a.label = Entry::half_above(k);
    a.lower = per({k});
    a.upper = per({k + 1});
    a.kneading_entry = k;
    a.sector_number = k;
    return a;
  }
  const std::size_t n = w.period();
  const Int u = w.forbidden_entry();
  a.label = Entry::integer(u + 1 + k);
  a.lower = detail::boundary_at_height(w, k, true);
  a.upper = detail::boundary_at_height(w, k + 1, false);
  const Itinerary kl = kneading_pm(a.lower, Side::Upper);
  const Itinerary ku = kneading_pm(a.upper, Side::Lower);
  if (kl != ku || kl.first(n - 1) != w.kneading_sequence().first(n - 1))
    throw DomainError("inconsistent sector boundaries");
  a.kneading_entry = kl.at(n).value;
  a.sector_number = a.kneading_entry - u;
  if (key.kind == SectorKey::Kind::KneadingEntry && a.kneading_entry != key.value.as_integer())
    throw DomainError("sector lookup by kneading entry is inconsistent");
  return a;
}

/// Kneading sequence of a sector: per(u_1 ... u_{n-1} u(A)).
inline Itinerary sector_kneading(const HyperbolicComponent& w, const SectorRef& a) {
  if (w.period() == 1) return Itinerary::periodic({Symbol::integer(a.kneading_entry)});
  auto word = w.kneading_sequence().first(w.period() - 1);
  word.push_back(Symbol::integer(a.kneading_entry));
  return Itinerary::periodic(std::move(word));
}

/// Rotation numerator of an orbit x_0, ..., x_{q-1} whose circular order is
/// that of a rigid rotation by p/q.
inline Int rotation_numerator(const std::vector<Address>& x) {
  const std::size_t q = x.size();
  if (q < 2) throw DomainError("rotation of fewer than two points");
  auto rank = [&](std::size_t k) {
    std::size_t r = 0;
    for (std::size_t i = 1; i < q; ++i)
      if (i != k && circular_order(x[0], x[i], x[k])) ++r;
    return r + 1;
  };
  const std::size_t p = rank(1);
  for (std::size_t k = 2; k < q; ++k)
    if (rank(k) != (k * p) % q) throw DomainError("orbit is not ordered like a rotation");
  return static_cast<Int>(p);
}

struct Primitive {
  friend bool operator==(const Primitive&, const Primitive&) = default;
};

struct Satellite {
  IntermediateAddress parent;
  Rational rotation;

  friend bool operator==(const Satellite&, const Satellite&) = default;
};

using Classification = std::variant<Primitive, Satellite>;

inline Classification classify(const IntermediateAddress& s) {
  const std::size_t n = s.length();
  if (n < 2) throw DomainError("the period one component is not classified");
  const auto u = kneading(s).first(n - 1);
  for (std::size_t j = 1; j < n; ++j) {
    if (n % j != 0) continue;
    bool periodic = true;
    for (std::size_t i = 0; i + j < n - 1 && periodic; ++i) periodic = u[i] == u[i + j];
    if (!periodic) continue;
    const std::size_t q = n / j;
    std::vector<Address> orbit{Address(s)};
    for (std::size_t k = 1; k < q; ++k) orbit.push_back(shift(orbit.back(), j));
    const Int p = rotation_numerator(orbit);
    return Satellite{orbit.back().intermediate(), Rational(p, static_cast<Int>(q))};
  }
  return Primitive{};
}

namespace detail {

inline void check_angle(const Rational& pq) {
  if (pq.numerator() <= 0 || pq.numerator() >= pq.denominator())
    throw DomainError("bifurcation angle must lie in (0,1)");
}

// Block symbol m_j for 1 <= j <= q-2.
inline Int block_symbol(Int j, const Rational& pq, Int top) {
  const Int p = pq.numerator(), q = pq.denominator();
  return (checked_mul(j, p) % q) >= q - p ? top : top - 1;
}

}  // namespace detail

/// Child of w attached to the sector with the given label at angle p/q.
inline IntermediateAddress bifurcate(const HyperbolicComponent& w, Entry label, const Rational& pq) {
  detail::check_angle(pq);
  const Int q = pq.denominator();
  const std::size_t n = w.period();
  std::vector<Symbol> word;
  if (n == 1) {
    if (!label.is_half()) throw DomainError("period one sector labels are half-integers");
    const Int top = label.plus_half().as_integer();
    for (Int j = 1; j <= q - 2; ++j) word.push_back(Symbol::integer(detail::block_symbol(j, pq, top)));
    word.push_back(Symbol::boundary(top));
  } else {
    if (!label.is_integer()) throw DomainError("sector labels are integers for period at least two");
    const Int top = label.as_integer();
    const auto body = w.kneading_sequence().first(n - 1);
    for (Int j = 1; j <= q; ++j) {
      word.insert(word.end(), body.begin(), body.end());
      if (j <= q - 2) word.push_back(Symbol::integer(detail::block_symbol(j, pq, top)));
      if (j == q - 1) word.push_back(Symbol::boundary(top));
    }
  }
  const Address r = detail::pull_back(word, Address::terminator(), w.address(), SeedSide::FromBelow);
  word.push_back(Symbol::star());
  if (itinerary(r, w.address()) != Itinerary::finite(word))
    throw DomainError("bifurcation itinerary not realized");
  return r.intermediate();
}

/// Bifurcation at internal height h (integer part selects the sector).
inline IntermediateAddress bifurcate_at_height(const HyperbolicComponent& w, const Rational& h) {
  const Int k = detail::floor_div(h.numerator(), h.denominator());
  const Rational frac = h - k;
  if (frac.numerator() == 0) throw DomainError("bifurcation height must not be an integer");
  Entry label = w.period() == 1 ? Entry::half_above(k) : Entry::integer(w.forbidden_entry() + 1 + k);
  return bifurcate(w, label, frac);
}

}  // namespace expcomb

#endif
