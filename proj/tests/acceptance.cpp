// Acceptance criteria 1-12. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. All comparisons are exact.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <expcomb/expcomb.hpp>

#include "oracles.hpp"

using namespace expcomb;

namespace {

// Exact comparisons only; there is no numeric tolerance anywhere.
constexpr int kTolerance = 0;
constexpr std::size_t kMinComponents = 50;
constexpr std::size_t kMinMembershipCombos = 100;
constexpr double kTimeBudgetSeconds = 60.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::vector<HyperbolicComponent> components(std::size_t max, Int bound) {
  std::vector<HyperbolicComponent> out;
  for (const auto& s : enumerate_intermediate({max, bound})) out.emplace_back(s);
  return out;
}

std::string fmt(const HyperbolicComponent& w) { return format(w.addr()); }

Outcome c1() {
  Outcome o;
  const Address s = parse_address("0 3 0 1/2 inf");
  const auto k = kneading(s);
  o.require(format(k) == "0 2 0 0 *", "kneading " + format(k));
  const auto ia = internal_from_kneading(k);
  o.require(format(ia) == "(1,0)->(2,2)->(4,-2)->(5,inf)", "internal " + format(ia));
  o.detail = o.pass ? "K = " + format(k) + ", internal = " + format(ia) : o.detail;
  return o;
}

Outcome c2() {
  Outcome o;
  const auto w = hyp("0 1 1 0 1/2 inf");
  const auto p = characteristic_addresses(w);
  o.require(p.lower == parse_infinite("(0 1 1 0 0 2)"), "lower " + format(p.lower));
  o.require(p.upper == parse_infinite("(0 2 0 1 0 1)"), "upper " + format(p.upper));
  const auto km = kneading_pm(p.lower, Side::Lower), kp = kneading_pm(p.upper, Side::Upper);
  o.require(km == w.forbidden_kneading() && kp == w.forbidden_kneading(),
            "K-(lower)=" + format(km) + " K+(upper)=" + format(kp));
  if (o.pass)
    o.detail = "pair (" + format(p.lower) + ", " + format(p.upper) + "), K* = " + format(km);
  return o;
}

Outcome c3() {
  Outcome o;
  const auto w = hyp("inf");
  for (Int m = -2; m <= 2; ++m)
    o.require(sector_boundary(w, m) == per({m}), "m=" + std::to_string(m));
  if (o.pass) o.detail = "per(m) for m in -2..2";
  return o;
}

void round_trips(Outcome& o, const std::vector<HyperbolicComponent>& ws) {
  std::map<std::string, std::string> angled_seen;
  for (const auto& w : ws) {
    const auto& k = w.kneading_sequence();
    const auto& ia = w.internal_address();
    o.require(kneading_from_internal(ia) == k, "internal->kneading at " + fmt(w));
    o.require(internal_from_kneading(kneading_from_internal(ia)) == ia, "kneading->internal at " + fmt(w));
    if (w.period() >= 2) {
      // Recover the address from its kneading sequence through the lower
      // characteristic address.
      const Address back = solve_itinerary(k, w.characteristic().lower);
      o.require(back == w.address(), "kneading->addr at " + fmt(w));
    }
    const auto an = angled_internal(w.addr());
    o.require(addr_from_angled(an) == w.addr(), "angled->addr at " + fmt(w));
    o.require(angled_internal(addr_from_angled(an)) == an, "addr->angled at " + fmt(w));
    const auto [it, fresh] = angled_seen.emplace(format(an), fmt(w));
    o.require(fresh, "angled address shared by " + it->second + " and " + fmt(w));
  }
  for (const auto& a : ws)
    for (const auto& b : ws)
      o.require((a.internal_address() == b.internal_address()) ==
                    (a.kneading_sequence() == b.kneading_sequence()),
                "collision law at " + fmt(a) + " / " + fmt(b));
}

Outcome c4() {
  Outcome o;
  const auto small = components(4, 1);
  const auto large = components(5, 1);
  round_trips(o, small);
  round_trips(o, large);
  o.require(large.size() >= kMinComponents, "only " + std::to_string(large.size()) + " components");
  if (o.pass)
    o.detail = std::to_string(small.size()) + " components at length<=4, " + std::to_string(large.size()) +
               " at length<=5 (bound 1)";
  return o;
}

const std::vector<Rational>& angles() {
  static const std::vector<Rational> a{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}, {2, 5}};
  return a;
}

std::vector<HyperbolicComponent> c5_bases() {
  return {hyp("inf"), hyp("1/2 inf"), hyp("-1 1/2 inf")};
}

// Labels with |label| <= 2 as sector height indices.
std::vector<Int> sector_heights(const HyperbolicComponent& w) {
  std::vector<Int> out;
  if (w.period() == 1) {
    for (Int k = -2; k <= 1; ++k) out.push_back(k);
  } else {
    const Int u = w.forbidden_entry();
    for (Int label = -2; label <= 2; ++label) out.push_back(label - u - 1);
  }
  return out;
}

Outcome c5() {
  Outcome o;
  std::size_t cases = 0;
  o.require(std::holds_alternative<Primitive>(classify(parse_intermediate("-1 1/2 inf"))),
            "-1 1/2 inf is not primitive");
  for (const auto& w : c5_bases())
    for (Int k : sector_heights(w)) {
      const Entry label = sector_info(w, SectorKey::height(k)).label;
      for (const auto& pq : angles()) {
        const auto child = bifurcate(w, label, pq);
        const Classification c = classify(child);
        const auto* sat = std::get_if<Satellite>(&c);
        o.require(sat && sat->parent == w.addr() && sat->rotation == pq,
                  fmt(w) + " label " + label.str() + " angle " + detail::height_str(pq));
        o.require(child.length() == static_cast<std::size_t>(pq.denominator()) * w.period(),
                  "length at " + fmt(w) + " label " + label.str());
        ++cases;
      }
    }
  if (o.pass) o.detail = std::to_string(cases) + " bifurcations";
  return o;
}

Outcome c6() {
  Outcome o;
  const std::vector<Rational> grid{{1, 5}, {1, 4}, {1, 3}, {2, 5}, {1, 2}, {3, 5}, {2, 3}, {3, 4}, {4, 5}};
  std::size_t pairs = 0;
  for (const auto& w : c5_bases()) {
    std::vector<Rational> pos, neg;
    for (Int k : sector_heights(w))
      for (const auto& f : grid) {
        const Rational h = Rational(k) + f;
        (h.numerator() > 0 ? pos : neg).push_back(h);
      }
    for (auto* side : {&pos, &neg}) {
      std::sort(side->begin(), side->end());
      std::vector<Address> img;
      for (const auto& h : *side) img.push_back(bifurcate_at_height(w, h));
      for (std::size_t i = 0; i < img.size(); ++i)
        for (std::size_t j = i + 1; j < img.size(); ++j) {
          o.require(less(img[i], img[j]), fmt(w) + " heights " + detail::height_str((*side)[i]) + " < " +
                                              detail::height_str((*side)[j]));
          ++pairs;
        }
    }
  }
  if (o.pass) o.detail = std::to_string(pairs) + " ordered pairs";
  return o;
}

Outcome c7() {
  Outcome o;
  const auto w = hyp("inf");
  const HyperbolicComponent child(bifurcate_at_height(w, Rational(1, 2)));
  const auto lower = child.characteristic().lower;
  std::size_t last = 0;
  std::string seq;
  for (Int k = 1; k <= 6; ++k) {
    const std::size_t c = oracle::common_prefix(bifurcate_at_height(w, Rational(k, 2 * k + 1)), lower);
    o.require(c > last, "prefix did not grow at k=" + std::to_string(k));
    o.require(c >= w.period(), "prefix shorter than (q-1)n at k=" + std::to_string(k));
    seq += (seq.empty() ? "" : ",") + std::to_string(c);
    last = c;
  }
  if (o.pass) o.detail = "common prefixes " + seq + " with " + format(lower);
  return o;
}

Outcome c8() {
  Outcome o;
  const auto report = exhaustive_check("char-pair-laws", {4, 1});
  o.require(report.passed(), "suite: " + (report.passed() ? "" : report.counterexamples.front().witness));
  const auto ws = components(4, 1);
  for (const auto& w : ws) {
    if (w.period() < 2) continue;
    const auto brute = oracle::characteristic(w, -3, 3);
    o.require(brute && *brute == w.characteristic(), "brute-force pair at " + fmt(w));
    const auto& [lo, up] = w.characteristic();
    const std::size_t n = w.period();
    o.require(less(lo, w.address()) && less(w.address(), up), "order at " + fmt(w));
    o.require(less(shift(up, n - 1), shift(lo, n - 1)), "shift order at " + fmt(w));
    o.require(itinerary(lo, w.address()) == w.forbidden_kneading() &&
                  itinerary(up, w.address()) == w.forbidden_kneading(),
              "itineraries at " + fmt(w));
  }
  std::size_t combos = 0;
  const auto probes = oracle::sample_points(3, 1);
  for (const auto& w : ws) {
    if (w.period() < 2) continue;
    const auto& [lo, up] = w.characteristic();
    for (const auto& p : probes) {
      if (p == Address(lo) || p == Address(up)) continue;
      const bool inside = less(lo, p) && less(p, up);
      o.require((itinerary(lo, p) == itinerary(up, p)) == inside,
                "membership at " + fmt(w) + " probe " + format(p));
      ++combos;
    }
  }
  o.require(combos >= kMinMembershipCombos, "only " + std::to_string(combos) + " membership combos");
  if (o.pass)
    o.detail = std::to_string(report.cases) + " components, " + std::to_string(combos) + " membership combos";
  return o;
}

Outcome c9() {
  Outcome o;
  const auto pts = oracle::sample_points(3, 1);
  std::size_t triples = 0;
  for (const auto& s1 : pts)
    for (const auto& s2 : pts) {
      if (!less(s1, s2)) continue;
      for (const auto& t : pts) {
        const auto i1 = itinerary(t, s1), i2 = itinerary(t, s2);
        const std::size_t len = t.is_intermediate() ? t.intermediate().length() - 1
                                                    : t.infinite().preperiod().size() + t.infinite().period_length();
        Address cur = t;
        for (std::size_t j = 1; j <= len; ++j) {
          cur = shift(cur);
          if (cur.is_terminator()) break;
          const bool outside = less(cur, s1) || less(s2, cur);
          o.require((i1.at(j) == i2.at(j)) == outside,
                    "change of partition at " + format(t) + " / " + format(s1) + " / " + format(s2));
        }
        ++triples;
      }
    }
  const auto cop = exhaustive_check("change-of-partition", {3, 1});
  o.require(cop.passed(), "change-of-partition suite");
  const auto inj = exhaustive_check("itinerary-injectivity", {4, 1});
  o.require(inj.passed(), "itinerary-injectivity suite");
  const auto inter = enumerate_intermediate({4, 1});
  for (const auto& s : oracle::sample_points(4, 1)) {
    std::set<std::string> seen;
    for (const auto& r : inter)
      o.require(seen.insert(format(itinerary(r, s))).second, "injectivity at base " + format(s));
  }
  if (o.pass) o.detail = std::to_string(triples) + " triples; injectivity over " + std::to_string(inter.size()) + " intermediates";
  return o;
}

Outcome c10() {
  Outcome o;
  const auto ws = components(4, 1);
  std::size_t pairs = 0;
  for (const auto& w : ws)
    for (const auto& v : ws) {
      if (!precedes(w, v)) continue;
      ++pairs;
      o.require(w.kneading_sequence() != v.kneading_sequence(), "equal kneading " + fmt(w) + " < " + fmt(v));
      const auto& kv = v.kneading_sequence().prefix();
      for (const auto& x : w.kneading_sequence().prefix())
        if (x.is_int())
          o.require(std::find(kv.begin(), kv.end(), x) != kv.end(), "missing entry " + fmt(w) + " < " + fmt(v));
    }
  o.require(exhaustive_check("nested-wakes", {4, 1}).passed(), "nested-wakes suite");
  o.require(pairs > 0, "no comparable pairs");
  if (o.pass) o.detail = std::to_string(pairs) + " comparable pairs";
  return o;
}

Outcome c11() {
  Outcome o;
  std::size_t cases = 0;
  for (const auto* b : {"1/2 inf", "0 3 0 1/2 inf"}) {
    const auto base = hyp(b);
    const TuningBlockTable t(base);
    for (const auto& r : enumerate_intermediate({3, 1})) {
      const Address x = tune(t, r, TuningVariant::Upper);
      o.require(x.is_intermediate() && x.intermediate().length() == r.length() * base.period(),
                std::string("length law at ") + b + " / " + format(Address(r)));
      const auto want = tuned_internal_address(base, HyperbolicComponent(r).internal_address());
      const auto got = internal_from_kneading(kneading(x));
      o.require(got == want, std::string("internal address at ") + b + " / " + format(Address(r)) + ": " +
                                 format(got) + " vs " + format(want));
      ++cases;
    }
  }
  if (o.pass) o.detail = std::to_string(cases) + " tuned addresses";
  return o;
}

Outcome c12() {
  Outcome o;
  std::size_t finite = 0, infinite = 0;
  for (const auto& w : components(4, 1)) {
    const auto& e = w.internal_address().entries;
    bool divides = true;
    for (std::size_t i = 0; i + 1 < e.size(); ++i) divides = divides && e[i + 1].period % e[i].period == 0;
    const OrbitCount want =
        divides ? OrbitCount{FiniteCount{static_cast<Int>(e.size()) - 1}} : OrbitCount{InfiniteCount{}};
    o.require(essential_orbit_count(w) == want, "orbit count at " + fmt(w));
    (divides ? finite : infinite)++;
  }
  o.require(exhaustive_check("essential-orbits", {4, 1}).passed(), "essential-orbits suite");
  if (o.pass) o.detail = std::to_string(finite) + " finite, " + std::to_string(infinite) + " infinite";
  return o;
}

}  // namespace

int main() {
  static_assert(kTolerance == 0);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"worked kneading and internal address", c1},
      {"characteristic pair of 0 1 1 0 1/2 inf", c2},
      {"period-one sector boundaries", c3},
      {"round trips over the enumeration", c4},
      {"bifurcation round trip", c5},
      {"monotonicity in the height", c6},
      {"limit prefixes", c7},
      {"characteristic-pair laws", c8},
      {"itinerary laws", c9},
      {"nested-wake kneading", c10},
      {"tuned internal addresses", c11},
      {"essential-orbit criterion", c12},
  };
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2zu %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs <= kTimeBudgetSeconds;
  std::printf("runtime %.1fs (budget %.0fs) %s\n", secs, kTimeBudgetSeconds, in_time ? "PASS" : "FAIL");
  return failures == 0 && in_time ? 0 : 1;
}
