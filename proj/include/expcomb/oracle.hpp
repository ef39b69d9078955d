#ifndef EXPCOMB_ORACLE_HPP
#define EXPCOMB_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "address.hpp"
#include "angled.hpp"
#include "component.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "internal_address.hpp"
#include "itinerary.hpp"
#include "tuning.hpp"

namespace expcomb {

struct Counterexample {
  std::string witness;
  std::string detail;
};

struct CheckReport {
  std::string suite;
  EnumerationBounds bounds;
  std::size_t cases = 0;
  std::vector<Counterexample> counterexamples;

  bool passed() const { return counterexamples.empty(); }
};

namespace detail {

class Checker {
 public:
  explicit Checker(CheckReport& r) : r_(r) {}

  // Runs one case; a thrown error counts as a counterexample.
  template <class F>
  void run(const std::string& witness, F&& f) {
    ++r_.cases;
    try {
      std::string why;
      if (!f(why)) r_.counterexamples.push_back({witness, why.empty() ? "property violated" : why});
    } catch (const std::exception& e) {
      r_.counterexamples.push_back({witness, e.what()});
    }
  }

 private:
  CheckReport& r_;
};

inline const std::vector<Rational>& sample_angles() {
  static const std::vector<Rational> a{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}, {2, 5}};
  return a;
}

inline std::vector<Address> points(const EnumerationBounds& b) {
  std::vector<Address> out;
  for (const auto& s : enumerate_intermediate(b))
    if (!s.is_terminator()) out.emplace_back(s);
  for (const auto& r : enumerate_periodic(b)) out.emplace_back(r);
  std::sort(out.begin(), out.end(), less);
  return out;
}

inline std::vector<HyperbolicComponent> components(const EnumerationBounds& b) {
  std::vector<HyperbolicComponent> out;
  for (const auto& s : enumerate_intermediate(b)) out.emplace_back(s);
  return out;
}

inline std::vector<Entry> sample_labels(const HyperbolicComponent& w, Int bound) {
  std::vector<Entry> out;
  for (Int k = -bound - 1; k <= bound; ++k)
    out.push_back(w.period() == 1 ? Entry::half_above(k) : Entry::integer(k + 1));
  return out;
}

inline std::vector<Rational> sample_heights(Int bound) {
  std::vector<Rational> out;
  for (Int k = -bound - 1; k <= bound; ++k)
    for (const auto& a : sample_angles()) out.push_back(Rational(k) + a);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool all_int(const Itinerary& u) {
  auto ok = [](const Symbol& x) { return x.is_int(); };
  return std::all_of(u.prefix().begin(), u.prefix().end(), ok) &&
         std::all_of(u.cycle().begin(), u.cycle().end(), ok);
}

inline std::string fmt(const Address& a) { return format(a); }
inline std::string fmt(const IntermediateAddress& a) { return format(a); }
inline std::string fmt(const HyperbolicComponent& w) { return format(w.addr()); }

using SuiteFn = std::function<void(Checker&, const EnumerationBounds&)>;

inline void suite_enumeration_order(Checker& c, const EnumerationBounds& b) {
  const auto xs = enumerate_intermediate(b);
  const auto ps = enumerate_periodic(b);
  c.run("intermediate", [&](std::string& why) {
    for (std::size_t i = 0; i + 2 < xs.size(); ++i)
      if (!less(xs[i], xs[i + 1])) {
        why = "not increasing at " + fmt(xs[i]);
        return false;
      }
    return xs.back().is_terminator() && enumerate_intermediate(b) == xs;
  });
  c.run("periodic", [&](std::string& why) {
    for (std::size_t i = 0; i + 1 < ps.size(); ++i)
      if (!less(ps[i], ps[i + 1])) {
        why = "not increasing at " + format(ps[i]);
        return false;
      }
    return enumerate_periodic(b) == ps;
  });
}

inline void suite_compare_total_order(Checker& c, const EnumerationBounds& b) {
  std::vector<Address> xs = points(b);
  for (const auto& r : enumerate_periodic({std::min<std::size_t>(b.max_length, 2), b.entry_bound}))
    for (Int j = -b.entry_bound; j <= b.entry_bound; ++j) xs.push_back(prepend(j, r));
  std::sort(xs.begin(), xs.end(), less);
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (std::size_t i = 0; i < xs.size(); ++i)
    c.run(fmt(xs[i]), [&](std::string& why) {
      for (std::size_t j = 0; j < xs.size(); ++j) {
        const auto o = compare(xs[i], xs[j]);
        const auto want = i <=> j;
        if (o != want || compare(xs[j], xs[i]) != (j <=> i)) {
          why = "inconsistent against " + fmt(xs[j]);
          return false;
        }
      }
      return true;
    });
}

inline void suite_shift_prepend(Checker& c, const EnumerationBounds& b) {
  for (const auto& a : points(b))
    c.run(fmt(a), [&](std::string&) {
      for (Int j = -b.entry_bound; j <= b.entry_bound; ++j)
        if (shift(prepend(j, a)) != a) return false;
      return true;
    });
  c.run("inf", [&](std::string&) {
    for (Int j = -b.entry_bound; j < b.entry_bound; ++j)
      if (!shift(prepend(Entry::half_above(j), Address::terminator())).is_terminator()) return false;
    return true;
  });
}

inline void suite_canonical_form(Checker& c, const EnumerationBounds& b) {
  for (std::size_t len = 1; len <= b.max_length; ++len)
    for_each_word(len, b.entry_bound, [&](const std::vector<Int>& w) {
      for (Int j = -b.entry_bound; j <= b.entry_bound; ++j) {
        const InfiniteAddress x({j}, w);
        c.run(std::to_string(j) + " (" + join(w) + ")", [&](std::string& why) {
          if (InfiniteAddress(x.preperiod(), x.period()) != x) {
            why = "not idempotent";
            return false;
          }
          for (std::size_t k = 2; k <= 3 * len + 2; ++k)
            if (x.at(k) != w[(k - 2) % len]) {
              why = "sequence changed";
              return false;
            }
          return x.at(1) == j;
        });
      }
    });
}

inline void suite_itinerary_injectivity(Checker& c, const EnumerationBounds& b) {
  std::vector<Address> xs;
  for (const auto& s : enumerate_intermediate(b))
    if (!s.is_terminator()) xs.emplace_back(s);
  for (const auto& s : xs)
    c.run(fmt(s), [&](std::string& why) {
      std::map<std::string, std::string> seen;
      for (const auto& t : xs) {
        const auto key = format(itinerary(t, s));
        if (auto [it, fresh] = seen.emplace(key, fmt(t)); !fresh) {
          why = "itineraries of " + it->second + " and " + fmt(t) + " coincide";
          return false;
        }
      }
      return true;
    });
}

// Cubic in the number of points, so lengths are capped at 3.
inline void suite_change_of_partition(Checker& c, const EnumerationBounds& b) {
  const auto xs = points({std::min<std::size_t>(b.max_length, 3), b.entry_bound});
  const std::size_t n = xs.size();
  // orbit[t]: the shifts sigma^j(t) that are defined and not the terminator.
  std::vector<std::vector<Address>> orbit(n);
  for (std::size_t t = 0; t < n; ++t) {
    const auto& x = xs[t];
    const std::size_t last = x.is_infinite()
                                 ? x.infinite().preperiod().size() + x.infinite().period_length()
                                 : x.intermediate().length() - 2;
    Address y = x;
    for (std::size_t j = 1; j <= last; ++j) orbit[t].push_back(y = shift(y));
  }
  std::vector<std::vector<std::vector<Symbol>>> itin(n, std::vector<std::vector<Symbol>>(n));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) itin[s][t] = itinerary(xs[t], xs[s]).first(orbit[t].size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      c.run(fmt(xs[i]) + " < " + fmt(xs[k]), [&](std::string& why) {
        for (std::size_t t = 0; t < n; ++t)
          for (std::size_t j = 0; j < orbit[t].size(); ++j) {
            const auto& y = orbit[t][j];
            const bool inside = !less(y, xs[i]) && !less(xs[k], y);
            if ((itin[i][t][j] == itin[k][t][j]) == inside) {
              why = fmt(xs[t]) + " entry " + std::to_string(j + 1);
              return false;
            }
          }
        return true;
      });
}

inline void suite_solve_roundtrip(Checker& c, const EnumerationBounds& b) {
  const auto xs = points(b);
  for (const auto& s : xs) {
    if (!s.is_intermediate()) continue;
    c.run(fmt(s), [&](std::string& why) {
      for (const auto& t : xs) {
        const auto u = itinerary(t, s);
        if (t.is_infinite() ? !all_int(u) : !u.is_finite()) continue;
        if (t.is_intermediate()) {
          bool ok = true;
          for (std::size_t i = 1; i < u.length(); ++i) ok = ok && u.at(i).is_int();
          if (!ok) continue;
        }
        for (auto side : {SeedSide::FromBelow, SeedSide::FromAbove}) {
          const Address r = solve_itinerary(u, s, side);
          if (itinerary(r, s) != u || r.is_infinite() != t.is_infinite()) {
            why = "itinerary of " + fmt(t);
            return false;
          }
        }
      }
      return true;
    });
  }
}

inline void suite_char_pair_laws(Checker& c, const EnumerationBounds& b) {
  const auto probes = points(b);
  for (const auto& w : components(b)) {
    if (w.period() < 2) continue;
    c.run(fmt(w), [&](std::string& why) {
      const std::size_t n = w.period();
      const auto& [lo, up] = w.characteristic();
      const Address s = w.address();
      const auto& ks = w.forbidden_kneading();
      if (!less(lo, s) || !less(s, up)) return why = "order", false;
      if (lo.period_length() != n || up.period_length() != n || !lo.is_periodic() || !up.is_periodic())
        return why = "period", false;
      if (!less(shift(Address(up), n - 1), shift(Address(lo), n - 1))) return why = "shift order", false;
      if (kneading_pm(lo, Side::Lower) != ks || kneading_pm(up, Side::Upper) != ks)
        return why = "one-sided kneading", false;
      if (itinerary(lo, s) != ks || itinerary(up, s) != ks) return why = "itinerary", false;
      for (const auto& p : probes) {
        const bool same = itinerary(lo, p) == itinerary(up, p);
        if (same != wake_contains(w, p)) return why = "membership at " + fmt(p), false;
      }
      return true;
    });
  }
}

inline void suite_sector_boundaries(Checker& c, const EnumerationBounds& b) {
  for (const auto& w : components(b)) {
    const std::size_t n = w.period();
    c.run(fmt(w), [&](std::string& why) {
      for (Int m = -b.entry_bound - 1; m <= b.entry_bound + 1; ++m) {
        const InfiniteAddress r = sector_boundary(w, m);
        if (!r.is_periodic() || r.period_length() != n) return why = "period", false;
        if (component_from_boundary(r) != w) return why = "component of " + format(r), false;
        if (n == 1) continue;
        const auto& [lo, up] = w.characteristic();
        // Characteristic addresses of a satellite share one orbit.
        const bool expect_inside =
            (r == lo || r == up) && std::holds_alternative<Satellite>(classify(w.addr()));
        bool inside = false;
        Address y = r;
        for (std::size_t j = 1; j < n; ++j) {
          y = shift(y);
          inside = inside || (!less(y, lo) && !less(up, y));
        }
        if (inside != expect_inside) return why = "shifts of " + format(r), false;
        if (itinerary(w.address(), r) != w.kneading_sequence()) return why = "itinerary of addr", false;
        auto word = w.kneading_sequence().first(n - 1);
        word.push_back(Symbol::integer(less(w.address(), r) ? m : m - 1));
        if (itinerary(r, w.address()) != Itinerary::periodic(word)) return why = "itinerary", false;
      }
      return true;
    });
  }
}

inline void suite_sector_labels(Checker& c, const EnumerationBounds& b) {
  for (const auto& w : components(b)) {
    c.run(fmt(w), [&](std::string& why) {
      std::optional<SectorRef> prev;
      for (Int k = -b.entry_bound - 1; k <= b.entry_bound; ++k) {
        const SectorRef a = sector_info(w, SectorKey::height(k));
        for (const auto& key : {SectorKey::label(a.label), SectorKey::kneading_entry(a.kneading_entry),
                                SectorKey::sector_number(a.sector_number)})
          if (sector_info(w, key).height_index != k) return why = "labelings disagree", false;
        if (w.period() >= 2) {
          if (a.kneading_entry == w.forbidden_entry()) return why = "forbidden entry realized", false;
          if (prev) {
            const Int step = a.kneading_entry - prev->kneading_entry;
            if (step != (k == 0 ? 2 : 1)) return why = "kneading entries do not increase by one", false;
          }
        }
        prev = a;
      }
      return true;
    });
  }
}

inline void suite_bifurcation_roundtrip(Checker& c, const EnumerationBounds& b) {
  for (const auto& w : components(b))
    for (const auto& label : sample_labels(w, b.entry_bound))
      for (const auto& pq : sample_angles())
        c.run(fmt(w) + " label " + label.str() + " at " + std::to_string(pq.numerator()) + "/" +
                  std::to_string(pq.denominator()),
              [&](std::string& why) {
                const auto v = bifurcate(w, label, pq);
                if (v.length() != w.period() * static_cast<std::size_t>(pq.denominator()))
                  return why = "length", false;
                const Classification cl = classify(v);
                const auto* sat = std::get_if<Satellite>(&cl);
                return sat && sat->parent == w.addr() && sat->rotation == pq;
              });
}

inline void suite_bifurcation_monotonicity(Checker& c, const EnumerationBounds& b) {
  const auto hs = sample_heights(b.entry_bound);
  for (const auto& w : components(b))
    c.run(fmt(w), [&](std::string& why) {
      std::optional<Address> prev;
      bool prev_pos = false;
      for (const auto& h : hs) {
        const bool pos = h.numerator() > 0;
        const Address x = bifurcate_at_height(w, h);
        if (prev && prev_pos == pos && !less(*prev, x)) return why = "not increasing below " + fmt(x), false;
        prev = x;
        prev_pos = pos;
      }
      return true;
    });
}

inline void suite_kneading_stability(Checker& c, const EnumerationBounds& b) {
  const auto hs = sample_heights(b.entry_bound);
  for (const auto& w : components(b))
    c.run(fmt(w), [&](std::string& why) {
      for (const auto& h : hs) {
        const HyperbolicComponent v(bifurcate_at_height(w, h));
        const Int k = floor_div(h.numerator(), h.denominator());
        if (v.forbidden_kneading() != sector_kneading(w, sector_info(w, SectorKey::height(k))))
          return why = "child " + fmt(v), false;
      }
      return true;
    });
}

inline void suite_kneading_internal(Checker& c, const EnumerationBounds& b) {
  for (const auto& w : components(b))
    c.run(fmt(w), [&](std::string&) {
      return kneading_from_internal(internal_from_kneading(w.kneading_sequence())) ==
                 w.kneading_sequence() &&
             internal_from_kneading(kneading_from_internal(w.internal_address())) == w.internal_address();
    });
  for (const auto& r : enumerate_periodic(b)) {
    const auto k = kneading(r);
    if (!all_int(k)) continue;
    c.run(format(r), [&](std::string&) { return kneading_from_internal(internal_from_kneading(k)) == k; });
  }
}

inline void suite_internal_collision(Checker& c, const EnumerationBounds& b) {
  const auto ws = components(b);
  for (std::size_t i = 0; i < ws.size(); ++i)
    c.run(fmt(ws[i]), [&](std::string& why) {
      for (const auto& v : ws) {
        const bool same_k = v.kneading_sequence() == ws[i].kneading_sequence();
        const bool same_i = v.internal_address() == ws[i].internal_address();
        if (same_k != same_i) return why = "against " + fmt(v), false;
      }
      return true;
    });
}

inline void suite_angled_roundtrip(Checker& c, const EnumerationBounds& b) {
  for (const auto& w : components(b))
    c.run(fmt(w), [&](std::string&) {
      const auto a = angled_internal(w.addr());
      return addr_from_angled(a) == w.addr() && angled_internal(addr_from_angled(a)) == a;
    });
}

inline void suite_angled_uniqueness(Checker& c, const EnumerationBounds& b) {
  std::map<std::string, std::string> seen;
  for (const auto& w : components(b))
    c.run(fmt(w), [&](std::string& why) {
      const auto key = format(angled_internal(w.addr()));
      if (auto [it, fresh] = seen.emplace(key, fmt(w)); !fresh) return why = "shared with " + it->second, false;
      return true;
    });
}

inline void suite_nested_wakes(Checker& c, const EnumerationBounds& b) {
  const auto ws = components(b);
  for (const auto& w : ws)
    c.run(fmt(w), [&](std::string& why) {
      std::set<Int> entries;
      const auto& k = w.kneading_sequence();
      for (const auto& x : k.prefix())
        if (x.is_int()) entries.insert(x.value);
      for (const auto& v : ws) {
        if (!precedes(w, v)) continue;
        if (v.kneading_sequence() == k) return why = "same kneading as " + fmt(v), false;
        std::set<Int> got;
        for (const auto& x : v.kneading_sequence().prefix())
          if (x.is_int()) got.insert(x.value);
        if (!std::includes(got.begin(), got.end(), entries.begin(), entries.end()))
          return why = "entries missing in " + fmt(v), false;
      }
      return true;
    });
}

inline void suite_arc_components(Checker& c, const EnumerationBounds& b) {
  for (const auto& w : components(b)) {
    if (w.period() < 2) continue;
    c.run(fmt(w), [&](std::string& why) {
      const auto& k = w.kneading_sequence();
      const auto chain = internal_chain(w.addr());
      const auto angled = angled_internal(w.addr());
      std::set<Int> earlier;
      for (std::size_t n = 1; n < w.period(); ++n) {
        const Int x = k.at(n).value;
        if (!earlier.insert(x).second) continue;
        std::size_t i = 0;
        while (i < chain.size() && chain[i].period() != n) ++i;
        if (i + 1 >= chain.size()) return why = "period " + std::to_string(n) + " not on the arc", false;
        const HyperbolicComponent child(bifurcate_at_height(chain[i], *angled.entries[i].height));
        auto word = k.first(n);
        if (child.forbidden_kneading() != Itinerary::periodic(word) || !wake_contains(child, w.address()))
          return why = "child " + fmt(child), false;
      }
      return true;
    });
  }
}

inline void suite_lowest_period(Checker& c, const EnumerationBounds& b) {
  for (const auto& w : components(b)) {
    if (w.period() < 2) continue;
    c.run(fmt(w), [&](std::string& why) {
      const auto chain = internal_chain(w.addr());
      const auto& ia = w.internal_address().entries;
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        const auto a = sector_info(chain[i], SectorKey::sector_number(ia[i].number->as_integer()));
        const auto res = lowest_period_on_arc(a, w.address());
        if (!res || res->period != ia[i + 1].period || res->component != chain[i + 1].addr())
          return why = "step " + std::to_string(i + 1), false;
      }
      return true;
    });
  }
}

inline void suite_essential_orbits(Checker& c, const EnumerationBounds& b) {
  for (const auto& w : components(b))
    c.run(fmt(w), [&](std::string&) {
      const auto chain = internal_chain(w.addr());
      bool divides = true;
      for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        divides = divides && chain[i + 1].period() % chain[i].period() == 0;
      const OrbitCount want = divides ? OrbitCount{FiniteCount{static_cast<Int>(chain.size()) - 1}}
                                      : OrbitCount{InfiniteCount{}};
      return essential_orbit_count(w) == want;
    });
}

inline std::vector<HyperbolicComponent> tuning_bases(const EnumerationBounds& b) {
  std::vector<HyperbolicComponent> out;
  for (const auto& s : enumerate_intermediate({std::min<std::size_t>(b.max_length, 3), b.entry_bound}))
    if (s.length() >= 2) out.emplace_back(s);
  return out;
}

inline void suite_tuning_theorem(Checker& c, const EnumerationBounds& b) {
  const auto rs = enumerate_intermediate(b);
  for (const auto& base : tuning_bases(b))
    c.run(fmt(base), [&](std::string& why) {
      const TuningBlockTable t(base);
      for (const auto& r : rs) {
        const Address x = tune(t, r, TuningVariant::Upper);
        if (!x.is_intermediate() || x.intermediate().length() != r.length() * base.period())
          return why = "length law at " + fmt(r), false;
        const auto want = tuned_internal_address(base, HyperbolicComponent(r).internal_address());
        if (internal_from_kneading(kneading(x)) != want) return why = "internal address at " + fmt(r), false;
      }
      return true;
    });
}

inline void suite_tuning_order(Checker& c, const EnumerationBounds& b) {
  std::vector<Address> rs = points({std::min<std::size_t>(b.max_length, 3), b.entry_bound});
  rs.push_back(Address::terminator());
  for (const auto& base : tuning_bases(b))
    for (auto v : {TuningVariant::Upper, TuningVariant::Lower})
      c.run(fmt(base) + (v == TuningVariant::Upper ? " upper" : " lower"), [&](std::string& why) {
        const TuningBlockTable t(base);
        std::vector<Address> img;
        for (const auto& r : rs) img.push_back(tune(t, r, v));
        const std::size_t m = img.size();
        for (std::size_t i = 0; i < m; ++i)
          if (!circular_order(img[i], img[(i + 1) % m], img[(i + 2) % m]))
            return why = "order at " + fmt(rs[i]), false;
        for (std::size_t i = 0; i < m; ++i) {
          if (rs[i].is_terminator() || (rs[i].is_intermediate() && rs[i].intermediate().length() < 2))
            continue;
          if (shift(img[i], base.period()) != tune(t, shift(rs[i]), v))
            return why = "shift law at " + fmt(rs[i]), false;
        }
        return true;
      });
}

inline const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> t{
      {"enumeration-order", suite_enumeration_order},
      {"compare-total-order", suite_compare_total_order},
      {"shift-prepend", suite_shift_prepend},
      {"canonical-form", suite_canonical_form},
      {"itinerary-injectivity", suite_itinerary_injectivity},
      {"change-of-partition", suite_change_of_partition},
      {"solve-roundtrip", suite_solve_roundtrip},
      {"char-pair-laws", suite_char_pair_laws},
      {"sector-boundaries", suite_sector_boundaries},
      {"sector-labels", suite_sector_labels},
      {"bifurcation-roundtrip", suite_bifurcation_roundtrip},
      {"bifurcation-monotonicity", suite_bifurcation_monotonicity},
      {"kneading-stability", suite_kneading_stability},
      {"kneading-internal-roundtrip", suite_kneading_internal},
      {"internal-collision", suite_internal_collision},
      {"angled-roundtrip", suite_angled_roundtrip},
      {"angled-uniqueness", suite_angled_uniqueness},
      {"nested-wakes", suite_nested_wakes},
      {"arc-components", suite_arc_components},
      {"lowest-period", suite_lowest_period},
      {"essential-orbits", suite_essential_orbits},
      {"tuning-theorem", suite_tuning_theorem},
      {"tuning-order", suite_tuning_order},
  };
  return t;
}

}  // namespace detail

inline std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : detail::suite_table()) out.push_back(name);
  return out;
}

/// Runs a named property over the full enumeration within b.
inline CheckReport exhaustive_check(std::string_view suite, const EnumerationBounds& b) {
  for (const auto& [name, fn] : detail::suite_table()) {
    if (name != suite) continue;
    CheckReport r{name, b, 0, {}};
    detail::Checker c(r);
    fn(c, b);
    return r;
  }
  throw DomainError("unknown suite: " + std::string(suite));
}

}  // namespace expcomb

#endif
