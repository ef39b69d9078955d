#ifndef EXPCOMB_TUNING_HPP
#define EXPCOMB_TUNING_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "address.hpp"
#include "component.hpp"
#include "error.hpp"
#include "internal_address.hpp"

namespace expcomb {

enum class TuningVariant { Upper, Lower };

/// Length-n blocks read off the sector boundaries of a component of period n >= 2.
class TuningBlockTable {
 public:
  explicit TuningBlockTable(HyperbolicComponent base) : base_(std::move(base)) {
    if (base_.period() < 2) throw DomainError("tuning needs a base of period at least 2");
  }

  const HyperbolicComponent& base() const { return base_; }

  std::vector<Int> block(Int i) const { return base_.boundary(i).prefix(base_.period()); }

 private:
  HyperbolicComponent base_;
};

inline std::vector<Int> tuning_block(const TuningBlockTable& t, Int i) { return t.block(i); }

namespace detail {

// Block for entry k when the tuned tail lies above (or below) the base.
inline std::vector<Int> block_for(const TuningBlockTable& t, Int k, bool above) {
  const Int u = t.base().forbidden_entry();
  return t.block(checked_add(checked_add(u, k), above ? 0 : 1));
}

inline Address prepend_word(const std::vector<Int>& w, Address a) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) a = prepend(*it, a);
  return a;
}

inline Address tune_prefix(const TuningBlockTable& t, const std::vector<Int>& pre, Address tail) {
  const Address s = t.base().address();
  for (auto it = pre.rbegin(); it != pre.rend(); ++it)
    tail = prepend_word(block_for(t, *it, less(s, tail)), tail);
  return tail;
}

}  // namespace detail

inline Address tune(const TuningBlockTable& t, const Address& r, TuningVariant v) {
  const Address s = t.base().address();
  if (r.is_terminator()) return s;
  if (r.is_intermediate()) {
    const auto& ri = r.intermediate();
    const Int u = t.base().forbidden_entry();
    const Int idx = detail::checked_add(u, ri.tail()->plus_half().as_integer());
    return detail::tune_prefix(t, ri.body(), detail::prepend_word(t.block(idx), s));
  }
  const auto& ra = r.infinite();
  const auto& cyc = ra.period();
  const std::size_t m = cyc.size();
  // above[i]: whether the image of the i-th shift of the cycle lies above s.
  std::vector<bool> above(m, v == TuningVariant::Lower);
  std::optional<InfiniteAddress> image;
  for (std::size_t iter = 0; iter <= 2 * m; ++iter) {
    std::vector<Int> word;
    for (std::size_t i = 0; i < m; ++i) {
      const auto b = detail::block_for(t, cyc[i], above[(i + 1) % m]);
      word.insert(word.end(), b.begin(), b.end());
    }
    const InfiniteAddress x = per(word);
    std::vector<bool> actual(m);
    for (std::size_t i = 0; i < m; ++i)
      actual[i] = less(s, shift(Address(x), i * t.base().period()));
    if (actual == above) {
      image = x;
      break;
    }
    above = actual;
  }
  if (!image) throw DomainError("tuning sign assignment has no consistent fixed point");
  return detail::tune_prefix(t, ra.preperiod(), *image);
}

inline Address tune(const HyperbolicComponent& base, const Address& r, TuningVariant v) {
  return tune(TuningBlockTable(base), r, v);
}

/// Internal address predicted for the tuned image of an address with internal address ir.
inline InternalAddress tuned_internal_address(const HyperbolicComponent& base,
                                              const InternalAddress& ir) {
  InternalAddress out = base.internal_address();
  const Int n = static_cast<Int>(base.period());
  auto m1 = ir.entries.front().number;
  if (m1 && m1->is_integer() && m1->as_integer() >= 0) m1 = m1->plus(1);
  out.entries.back().number = m1;
  for (std::size_t i = 1; i < ir.entries.size(); ++i)
    out.entries.push_back({detail::checked_mul(ir.entries[i].period, n), ir.entries[i].number});
  return out;
}

}  // namespace expcomb

#endif
