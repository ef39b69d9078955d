#ifndef EXPCOMB_ENUMERATE_HPP
#define EXPCOMB_ENUMERATE_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "address.hpp"
#include "periodic.hpp"

namespace expcomb {

struct EnumerationBounds {
  std::size_t max_length = 5;
  Int entry_bound = 2;
};

namespace detail {

// Calls f on every word of length len over [-b, b], in lexicographic order.
template <class F>
void for_each_word(std::size_t len, Int b, F&& f) {
  std::vector<Int> w(len, -b);
  for (;;) {
    f(w);
    std::size_t i = len;
    while (i > 0 && w[i - 1] == b) w[--i] = -b;
    if (i == 0) return;
    ++w[i - 1];
  }
}

}  // namespace detail

/// Intermediate addresses of length <= max, sorted, terminator last.
inline std::vector<IntermediateAddress> enumerate_intermediate(const EnumerationBounds& b) {
  std::vector<IntermediateAddress> out;
  for (std::size_t len = 2; len <= b.max_length; ++len)
    detail::for_each_word(len - 2, b.entry_bound, [&](const std::vector<Int>& body) {
      for (Int t = -b.entry_bound; t < b.entry_bound; ++t)
        out.emplace_back(body, Entry::half_above(t));
    });
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return less(Address(x), Address(y));
  });
  if (b.max_length >= 1) out.push_back(IntermediateAddress::terminator());
  return out;
}

/// Periodic addresses of exact period <= max, sorted.
inline std::vector<InfiniteAddress> enumerate_periodic(const EnumerationBounds& b) {
  std::vector<InfiniteAddress> out;
  for (std::size_t p = 1; p <= b.max_length; ++p)
    detail::for_each_word(p, b.entry_bound, [&](const std::vector<Int>& w) {
      if (primitive_period(w) == p) out.push_back(per(w));
    });
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return less(Address(x), Address(y));
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace expcomb

#endif
