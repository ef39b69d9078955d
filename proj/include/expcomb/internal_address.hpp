#ifndef EXPCOMB_INTERNAL_ADDRESS_HPP
#define EXPCOMB_INTERNAL_ADDRESS_HPP

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entry.hpp"
#include "error.hpp"
#include "itinerary.hpp"
#include "lexer.hpp"

namespace expcomb {

/// (period, sector number); an empty number is the infinity mark.
struct InternalEntry {
  Int period = 1;
  std::optional<Entry> number;

  friend bool operator==(const InternalEntry&, const InternalEntry&) = default;
};

struct InternalAddress {
  std::vector<InternalEntry> entries;

  bool terminates() const { return !entries.empty() && !entries.back().number; }
  friend bool operator==(const InternalAddress&, const InternalAddress&) = default;
};

namespace detail {

inline std::vector<Symbol> periodized(const Itinerary& k, std::size_t n, std::size_t len) {
  const auto w = k.first(n);
  std::vector<Symbol> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = w[i % n];
  return out;
}

inline std::size_t internal_scan_limit(const Itinerary& k) {
  return 64 * (k.prefix().size() + k.cycle().size() + 1);
}

}  // namespace detail

inline InternalAddress internal_from_kneading(const Itinerary& k) {
  InternalAddress a;
  const Symbol u1 = k.at(1);
  if (u1.is_star()) {
    a.entries.push_back({1, std::nullopt});
    return a;
  }
  if (u1.is_boundary()) {
    a.entries.push_back({1, Entry::half_above(u1.value - 1)});
    return a;
  }
  a.entries.push_back({1, Entry::integer(u1.value)});
  std::size_t n = 1;
  const std::size_t limit = detail::internal_scan_limit(k);
  for (;;) {
    const auto base = k.first(n);
    std::optional<std::size_t> diff;
    const std::size_t window =
        k.is_finite() ? k.length() : k.prefix().size() + n * k.cycle().size() + n;
    for (std::size_t p = n + 1; p <= window; ++p) {
      if (k.at(p) != base[(p - 1) % n]) {
        diff = p;
        break;
      }
    }
    if (!diff) break;
    const std::size_t p = *diff;
    if (p > limit) throw DomainError("internal address scan did not terminate");
    const Symbol x = k.at(p);
    const Int ub = base[(p - 1) % n].value;
    if (x.is_star()) {
      a.entries.push_back({static_cast<Int>(p), std::nullopt});
      break;
    }
    if (x.is_boundary()) {
      a.entries.push_back({static_cast<Int>(p), Entry::half_above(x.value - 1 - ub)});
      break;
    }
    a.entries.push_back({static_cast<Int>(p), Entry::integer(x.value - ub)});
    n = p;
  }
  return a;
}

inline Itinerary kneading_from_internal(const InternalAddress& a) {
  if (a.entries.empty() || a.entries.front().period != 1)
    throw DomainError("an internal address starts with period 1");
  std::vector<Symbol> w;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const auto& [n, m] = a.entries[i];
    if (i > 0 && n <= a.entries[i - 1].period)
      throw DomainError("internal address periods must increase");
    const std::size_t len = w.size();
    while (static_cast<Int>(w.size()) < n - 1) w.push_back(w[w.size() % len]);
    const Int ub = w.empty() ? 0 : w[(n - 1) % static_cast<Int>(len)].value;
    if (!m) {
      if (i + 1 != a.entries.size()) throw DomainError("infinity mark before the last entry");
      w.push_back(Symbol::star());
      return Itinerary::finite(std::move(w));
    }
    if (m->is_half()) {
      if (i + 1 != a.entries.size()) throw DomainError("half-integer before the last entry");
      w.push_back(Symbol::boundary(m->floor() + ub + 1));
      return Itinerary::periodic(std::move(w));
    }
    if (i > 0 && m->as_integer() == 0) throw DomainError("sector number zero");
    w.push_back(Symbol::integer(detail::checked_add(ub, m->as_integer())));
  }
  return Itinerary::periodic(std::move(w));
}

namespace detail {
inline std::string number_str(const Entry& e) {
  if (e.is_integer()) return e.str();
  return std::to_string(e.floor()) + "+1/2";
}
}  // namespace detail

inline std::string format(const InternalAddress& a) {
  std::string s;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (i) s += "->";
    s += "(" + std::to_string(a.entries[i].period) + "," +
         (a.entries[i].number ? detail::number_str(*a.entries[i].number) : "inf") + ")";
  }
  return s;
}

namespace detail {

/// Splits "(a,b)->(c,d)" into pairs of raw strings with their offsets.
struct RawPair {
  std::string first, second;
  std::size_t pos_first, pos_second;
};

inline std::vector<RawPair> split_arrow_pairs(std::string_view s) {
  std::vector<RawPair> out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (i >= s.size() || s[i] != c)
      throw ParseError(std::string("expected '") + c + "'", i);
    ++i;
  };
  auto field = [&](char stop, std::size_t& pos) {
    skip_ws();
    pos = i;
    std::string f;
    while (i < s.size() && s[i] != stop) {
      if (!std::isspace(static_cast<unsigned char>(s[i]))) f += s[i];
      ++i;
    }
    if (f.empty()) throw ParseError("empty field", pos);
    return f;
  };
  for (;;) {
    expect('(');
    RawPair p;
    p.first = field(',', p.pos_first);
    expect(',');
    p.second = field(')', p.pos_second);
    expect(')');
    out.push_back(p);
    skip_ws();
    if (i == s.size()) break;
    if (s.substr(i, 2) != "->") throw ParseError("expected '->'", i);
    i += 2;
  }
  return out;
}

}  // namespace detail

inline InternalAddress parse_internal(std::string_view text) {
  InternalAddress a;
  for (const auto& p : detail::split_arrow_pairs(text)) {
    InternalEntry e;
    if (!detail::parse_int(p.first, e.period) || e.period < 1)
      throw ParseError("bad period '" + p.first + "'", p.pos_first);
    if (p.second != "inf") {
      Int v;
      const auto plus = p.second.find("+1/2");
      if (plus != std::string::npos && plus + 4 == p.second.size() && plus > 0 &&
          detail::parse_int(std::string_view(p.second).substr(0, plus), v)) {
        e.number = Entry::half_above(v);
      } else if (detail::parse_int(p.second, v)) {
        e.number = Entry::integer(v);
      } else {
        throw ParseError("bad sector number '" + p.second + "'", p.pos_second);
      }
    }
    a.entries.push_back(e);
  }
  if (a.entries.front().period != 1) throw ParseError("first period must be 1", 0);
  for (std::size_t i = 1; i < a.entries.size(); ++i)
    if (a.entries[i].period <= a.entries[i - 1].period)
      throw ParseError("periods must increase", 0);
  for (std::size_t i = 0; i + 1 < a.entries.size(); ++i)
    if (!a.entries[i].number || a.entries[i].number->is_half())
      throw ParseError("only the last entry may be inf or a half-integer", 0);
  return a;
}

}  // namespace expcomb

#endif
