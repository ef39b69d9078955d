#include <gtest/gtest.h>

#include <thread>

#include <expcomb/expcomb.hpp>

#include "oracles.hpp"

using namespace expcomb;

namespace {

Address A(std::string_view s) { return parse_address(s); }
InfiniteAddress P(std::string_view s) { return parse_infinite(s); }
Itinerary I(std::string_view s) { return parse_itinerary(s); }

const Satellite& satellite(const Classification& c) { return std::get<Satellite>(c); }

std::vector<HyperbolicComponent> enumerated(std::size_t max, Int bound) {
  std::vector<HyperbolicComponent> out;
  for (const auto& s : enumerate_intermediate({max, bound}))
    if (!s.is_terminator()) out.emplace_back(s);
  return out;
}

}  // namespace

TEST(Characteristic, Examples) {
  const auto w = hyp("0 1 1 0 1/2 inf");
  EXPECT_EQ(characteristic_addresses(w), (CharacteristicPair{P("(0 1 1 0 0 2)"), P("(0 2 0 1 0 1)")}));
  EXPECT_EQ(characteristic_addresses(hyp("1/2 inf")), (CharacteristicPair{P("(0 1)"), P("(1 0)")}));
  EXPECT_THROW(characteristic_addresses(hyp("inf")), DomainError);
}

TEST(Characteristic, MatchesBruteForceSectorBoundaries) {
  for (const auto& w : enumerated(4, 1)) {
    const auto brute = oracle::characteristic(w, -3, 3);
    ASSERT_TRUE(brute.has_value()) << format(w.address());
    EXPECT_EQ(w.characteristic(), *brute) << format(w.address());
  }
}

TEST(Characteristic, PairLaws) {
  for (const auto& w : enumerated(4, 1)) {
    const auto& [lo, up] = w.characteristic();
    const std::size_t n = w.period();
    const Address s = w.address();
    EXPECT_TRUE(less(lo, s) && less(s, up));
    EXPECT_EQ(lo.period_length(), n);
    EXPECT_EQ(up.period_length(), n);
    EXPECT_TRUE(less(shift(up, n - 1), shift(lo, n - 1)));
    EXPECT_EQ(kneading_pm(lo, Side::Lower), w.forbidden_kneading());
    EXPECT_EQ(kneading_pm(up, Side::Upper), w.forbidden_kneading());
    EXPECT_EQ(itinerary(lo, s), w.forbidden_kneading());
    EXPECT_EQ(itinerary(up, s), w.forbidden_kneading());
    EXPECT_EQ(itinerary(s, lo), w.kneading_sequence());
    EXPECT_EQ(itinerary(s, up), w.kneading_sequence());
  }
}

TEST(Characteristic, SameItineraryExactlyInsideWake) {
  const auto probes = oracle::sample_points(3, 1);
  for (const auto& w : enumerated(3, 1)) {
    const auto& [lo, up] = w.characteristic();
    for (const auto& p : probes) {
      if (p == Address(lo) || p == Address(up)) continue;
      const bool inside = less(lo, p) && less(p, up);
      EXPECT_EQ(itinerary(lo, p) == itinerary(up, p), inside) << format(w.address()) << " " << format(p);
    }
  }
}

TEST(SectorBoundary, Examples) {
  EXPECT_EQ(sector_boundary(hyp("1/2 inf"), 1), P("(0 1)"));
  EXPECT_EQ(sector_boundary(hyp("inf"), 3), P("(3)"));
  EXPECT_EQ(sector_boundary(hyp("0 1 1 0 1/2 inf"), 1), P("(0 2 0 1 0 1)"));
  EXPECT_EQ(sector_boundary(hyp("0 1 1 0 1/2 inf"), 2), P("(0 1 1 0 0 2)"));
  for (Int m = -2; m <= 2; ++m) EXPECT_EQ(sector_boundary(hyp("inf"), m), per({m}));
}

TEST(SectorBoundary, MatchesBruteForce) {
  for (const auto& w : enumerated(3, 1)) {
    const auto brute = oracle::sector_boundaries(w, -3, 3);
    const Int u = w.forbidden_entry();
    for (Int c = u - 1; c <= u + 2; ++c) {
      const auto r = sector_boundary(w, c);
      EXPECT_NE(std::find(brute.begin(), brute.end(), r), brute.end()) << format(w.address()) << " " << c;
      EXPECT_EQ(r.at(w.period()), c);
      EXPECT_EQ(component_from_boundary(r), w);
    }
  }
}

TEST(SectorBoundary, ItineraryOfBoundary) {
  const auto w = hyp("0 3 0 1/2 inf");
  const Int n = static_cast<Int>(w.period());
  for (Int c = -2; c <= 4; ++c) {
    const auto r = sector_boundary(w, c);
    auto word = w.kneading_sequence().first(static_cast<std::size_t>(n - 1));
    word.push_back(Symbol::integer(less(w.address(), r) ? c : c - 1));
    EXPECT_EQ(itinerary(r, w.address()), Itinerary::periodic(word)) << c;
  }
}

TEST(Forbidden, Examples) {
  EXPECT_EQ(forbidden_kneading(hyp("0 1 1 0 1/2 inf")), I("(0 1 0 0 0 1)"));
  EXPECT_EQ(forbidden_kneading(hyp("0 3 0 1/2 inf")), I("(0 2 0 0 0)"));
  EXPECT_EQ(forbidden_kneading(hyp("1/2 inf")), I("(0 0)"));
  EXPECT_EQ(hyp("0 1 1 0 1/2 inf").forbidden_entry(), 1);
  EXPECT_THROW(forbidden_kneading(hyp("inf")), DomainError);
}

TEST(Forbidden, EntryOccursEarlier) {
  for (const auto& w : enumerated(4, 1)) {
    const auto head = w.kneading_sequence().first(w.period() - 1);
    EXPECT_NE(std::find(head.begin(), head.end(), Symbol::integer(w.forbidden_entry())), head.end());
  }
}

TEST(SectorInfo, Examples) {
  const auto a = sector_info(hyp("inf"), SectorKey::height(0));
  EXPECT_EQ(a.label, Entry::half_above(0));
  EXPECT_EQ(a.kneading_entry, 0);

  const auto w = hyp("0 1 1 0 1/2 inf");
  const auto b = sector_info(w, SectorKey::kneading_entry(0));
  EXPECT_EQ(b.height_index, -1);
  EXPECT_EQ(b.label, Entry::integer(1));
  EXPECT_EQ(b.sector_number, -1);
  EXPECT_EQ(b.lower, P("(0 1 1 0 1 0)"));
  EXPECT_EQ(b.upper, P("(0 2 0 1 0 1)"));
  EXPECT_EQ(sector_kneading(w, b), I("(0 1 0 0 0 0)"));
  EXPECT_THROW(sector_info(w, SectorKey::kneading_entry(1)), DomainError);
  EXPECT_THROW(sector_info(w, SectorKey::sector_number(0)), DomainError);
}

TEST(SectorInfo, LabelingsAgreeAndAdjacentEntriesStep) {
  for (const auto& w : enumerated(4, 1)) {
    const Int u = w.forbidden_entry();
    std::optional<Int> prev;
    for (Int k = -3; k <= 3; ++k) {
      const auto a = sector_info(w, SectorKey::height(k));
      EXPECT_NE(a.kneading_entry, u);
      EXPECT_EQ(a.sector_number, a.kneading_entry - u);
      EXPECT_EQ(sector_info(w, SectorKey::label(a.label)).height_index, k);
      EXPECT_EQ(sector_info(w, SectorKey::kneading_entry(a.kneading_entry)).height_index, k);
      EXPECT_EQ(sector_info(w, SectorKey::sector_number(a.sector_number)).height_index, k);
      EXPECT_EQ(kneading_pm(a.lower, Side::Upper), sector_kneading(w, a));
      EXPECT_EQ(kneading_pm(a.upper, Side::Lower), sector_kneading(w, a));
      if (prev) {
        EXPECT_EQ(a.kneading_entry, *prev + (*prev + 1 == u ? 2 : 1)) << format(w.address());
      }
      prev = a.kneading_entry;
    }
  }
}

TEST(SectorInfo, PeriodOne) {
  for (Int k = -2; k <= 2; ++k) {
    const auto a = sector_info(hyp("inf"), SectorKey::height(k));
    EXPECT_EQ(a.kneading_entry, k);
    EXPECT_EQ(a.label, Entry::half_above(k));
    EXPECT_EQ(a.lower, per({k}));
    EXPECT_EQ(a.upper, per({k + 1}));
  }
}

TEST(Bifurcate, Examples) {
  EXPECT_EQ(Address(bifurcate(hyp("inf"), Entry::half_above(0), Rational(1, 2))), A("1/2 inf"));
  const auto third = bifurcate(hyp("inf"), Entry::half_above(0), Rational(1, 3));
  EXPECT_EQ(third.length(), 3u);
  EXPECT_EQ(format(kneading(third)), "0 0 *");
  EXPECT_EQ(satellite(classify(third)), (Satellite{IntermediateAddress::terminator(), Rational(1, 3)}));
  const auto four = bifurcate(hyp("1/2 inf"), Entry::integer(1), Rational(1, 2));
  EXPECT_EQ(Address(four), A("0 1 1/2 inf"));
  EXPECT_EQ(format(kneading(four)), "0 1 0 *");
  EXPECT_EQ(satellite(classify(four)).parent, hyp("1/2 inf").addr());
}

TEST(Bifurcate, RejectsBadInput) {
  EXPECT_THROW(bifurcate(hyp("inf"), Entry::half_above(0), Rational(1, 1)), DomainError);
  EXPECT_THROW(bifurcate(hyp("inf"), Entry::half_above(0), Rational(3, 2)), DomainError);
  EXPECT_THROW(bifurcate(hyp("inf"), Entry::integer(0), Rational(1, 2)), DomainError);
  EXPECT_THROW(bifurcate(hyp("1/2 inf"), Entry::half_above(0), Rational(1, 2)), DomainError);
  EXPECT_THROW(bifurcate_at_height(hyp("1/2 inf"), Rational(2)), DomainError);
}

TEST(Bifurcate, RotationMatchesLinearOrderOracle) {
  for (const auto& base : {"inf", "1/2 inf", "-1 1/2 inf"}) {
    const auto w = hyp(base);
    for (const Rational& pq : {Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(1, 4),
                               Rational(3, 4), Rational(2, 5), Rational(3, 5)}) {
      for (Int k = -1; k <= 1; ++k) {
        const auto child = bifurcate_at_height(w, Rational(k) + pq);
        std::vector<Address> orbit{Address(child)};
        for (Int i = 1; i < pq.denominator(); ++i) orbit.push_back(shift(orbit.back(), w.period()));
        EXPECT_EQ(oracle::rotation(orbit), pq.numerator()) << base << " " << k;
        EXPECT_EQ(rotation_numerator(orbit), pq.numerator());
      }
    }
  }
}

TEST(Bifurcate, HeightsMonotoneOnEachSide) {
  const std::vector<Rational> fr{{1, 5}, {1, 4}, {1, 3}, {2, 5}, {1, 2}, {3, 5}, {2, 3}, {3, 4}, {4, 5}};
  for (const auto& base : {"inf", "1/2 inf", "0 3 0 1/2 inf"}) {
    const auto w = hyp(base);
    for (int sign : {1, -1}) {
      std::vector<Rational> hs;
      for (Int k = 0; k <= 2; ++k)
        for (const auto& f : fr) hs.push_back(sign > 0 ? Rational(k) + f : -(Rational(k) + f));
      std::sort(hs.begin(), hs.end());
      for (std::size_t i = 0; i + 1 < hs.size(); ++i)
        EXPECT_TRUE(less(bifurcate_at_height(w, hs[i]), bifurcate_at_height(w, hs[i + 1])))
            << base << " " << hs[i] << " " << hs[i + 1];
    }
  }
}

TEST(Bifurcate, ApproachesLowerCharacteristicOfChild) {
  const auto w = hyp("inf");
  const auto lower = HyperbolicComponent(bifurcate_at_height(w, Rational(1, 2))).characteristic().lower;
  std::size_t last = 0;
  for (Int k = 1; k <= 6; ++k) {
    const std::size_t c = oracle::common_prefix(bifurcate_at_height(w, Rational(k, 2 * k + 1)), lower);
    EXPECT_GT(c, last);
    EXPECT_GE(c, 1u);
    last = c;
  }
}

TEST(Bifurcate, LargeHeightsConvergeToParent) {
  // No enumerated point separates addr(W, k+1/2) from addr(W) once k is large.
  const auto pts = oracle::sample_points(3, 1);
  for (const auto& base : {"1/2 inf", "0 3 0 1/2 inf"}) {
    const auto w = hyp(base);
    for (int sign : {1, -1})
      for (Int k = 4; k <= 6; ++k) {
        const Address b = bifurcate_at_height(w, Rational(sign * (2 * k + 1), 2));
        const Address lo = less(b, w.address()) ? b : w.address();
        const Address hi = less(b, w.address()) ? w.address() : b;
        for (const auto& p : pts)
          if (p != w.address()) {
            EXPECT_FALSE(less(lo, p) && less(p, hi)) << base << " " << k << " " << format(p);
          }
      }
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(satellite(classify(parse_intermediate("1/2 inf"))),
            (Satellite{IntermediateAddress::terminator(), Rational(1, 2)}));
  EXPECT_TRUE(std::holds_alternative<Primitive>(classify(parse_intermediate("0 1 1 0 1/2 inf"))));
  const auto c = bifurcate(hyp("inf"), Entry::half_above(0), Rational(2, 3));
  EXPECT_EQ(satellite(classify(c)).rotation, Rational(2, 3));
  EXPECT_THROW(classify(IntermediateAddress::terminator()), DomainError);
}

TEST(Classify, PrimitiveIffNoShorterCompletion) {
  for (const auto& w : enumerated(4, 1)) {
    const std::size_t n = w.period();
    const auto head = w.kneading_sequence().first(n - 1);
    bool shorter = false;
    for (Int last = -4; last <= 4 && !shorter; ++last) {
      std::vector<Int> word;
      for (const auto& x : head) word.push_back(x.value);
      word.push_back(last);
      shorter = primitive_period(word) < n;
    }
    EXPECT_EQ(std::holds_alternative<Satellite>(classify(w.addr())), shorter) << format(w.address());
  }
}

TEST(Wake, Examples) {
  const auto w = hyp("0 1 1 0 1/2 inf");
  EXPECT_TRUE(wake_contains(w, w.address()));
  EXPECT_FALSE(wake_contains(w, A("(0)")));
  EXPECT_TRUE(wake_contains(hyp("inf"), A("(5)")));
  EXPECT_FALSE(wake_contains(w, A("(0 1 1 0 0 2)")));
  EXPECT_FALSE(wake_contains(w, A("inf")));
}

TEST(Wake, ChildrenLieInParentWake) {
  for (const auto& w : enumerated(3, 1))
    for (Int k = -2; k <= 2; ++k) {
      const HyperbolicComponent v(bifurcate_at_height(w, Rational(2 * k + 1, 2)));
      EXPECT_TRUE(precedes(w, v)) << format(w.address()) << " " << k;
      EXPECT_FALSE(precedes(v, w));
    }
}

TEST(Component, SharedAcrossThreads) {
  const auto w = hyp("0 1 1 0 1/2 inf");
  std::vector<std::thread> ts;
  std::vector<int> ok(8, 0);
  for (int i = 0; i < 8; ++i)
    ts.emplace_back([&, i] {
      HyperbolicComponent copy = w;
      ok[i] = copy.characteristic() == w.characteristic() &&
              sector_boundary(w, 2) == P("(0 1 1 0 0 2)");
    });
  for (auto& t : ts) t.join();
  for (int v : ok) EXPECT_EQ(v, 1);
}
