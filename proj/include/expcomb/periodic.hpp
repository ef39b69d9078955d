#ifndef EXPCOMB_PERIODIC_HPP
#define EXPCOMB_PERIODIC_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

namespace expcomb {

/// Length of the shortest word whose repetition gives w.
template <class T>
std::size_t primitive_period(const std::vector<T>& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = (w[i] == w[i - d]);
    if (ok) return d;
  }
  return n;
}

/// Brings prefix + cycle^infinity into canonical form: primitive cycle, and
/// no prefix entry that could be absorbed into the cycle.
template <class T>
void canonicalize_cycle(std::vector<T>& prefix, std::vector<T>& cycle) {
  if (cycle.empty()) return;
  cycle.resize(primitive_period(cycle));
  while (!prefix.empty() && prefix.back() == cycle.back()) {
    prefix.pop_back();
    std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
  }
}

/// k-th element (0-based) of prefix + cycle^infinity.
template <class T>
const T& element_at(const std::vector<T>& prefix, const std::vector<T>& cycle, std::size_t k) {
  if (k < prefix.size()) return prefix[k];
  return cycle[(k - prefix.size()) % cycle.size()];
}

/// Number of leading positions that decide equality of two eventually periodic
/// sequences: past both prefixes, one common period of both cycles.
inline std::size_t decision_window(std::size_t pre_a, std::size_t per_a, std::size_t pre_b,
                                   std::size_t per_b) {
  return pre_a + pre_b + std::lcm(per_a, per_b) + std::max(per_a, per_b);
}

}  // namespace expcomb

#endif
