#pragma once

#include "amc/linsynth.hpp"

#include <bit>
#include <unordered_map>

namespace amc::detail {

/// Lazily materialized subset sums over groups of `width` consecutive
/// variables. The sum for `mask` is the sum for `mask` minus its lowest bit
/// plus that bit's variable, so each non-singleton subset costs one step.
class SubsetSumTable {
public:
  SubsetSumTable(AdditiveCircuit& ac, std::size_t n, std::size_t width)
      : ac_(ac), n_(n), width_(width), memo_((n + width - 1) / width) {}

  std::size_t groups() const noexcept { return memo_.size(); }
  std::size_t width() const noexcept { return width_; }
  std::size_t group_width(std::size_t g) const noexcept { return std::min(width_, n_ - g * width_); }

  Signal get(std::size_t g, std::uint64_t mask) {
    if (mask == 0) {
      return zero_signal;
    }
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    const auto var = ac_.variable(g * width_ + low);
    const auto rest = mask & (mask - 1);
    if (rest == 0) {
      return var;
    }
    auto& memo = memo_[g];
    if (const auto it = memo.find(mask); it != memo.end()) {
      return it->second;
    }
    const auto sig = ac_.add(get(g, rest), var);
    memo.emplace(mask, sig);
    return sig;
  }

private:
  AdditiveCircuit& ac_;
  std::size_t n_;
  std::size_t width_;
  std::vector<std::unordered_map<std::uint64_t, Signal>> memo_;
};

/// One 1 of the grouped matrix B: row `row` has pattern `mask` in group
/// `group`, realized by `signal`.
struct ReducedEntry {
  std::uint32_t row;
  std::uint32_t group;
  std::uint64_t mask;
  Signal signal;
};

/// Builds B row by row and emits the table entries it references in
/// ascending (group, mask) order.
std::vector<ReducedEntry> reduce_matrix(const BooleanMatrix& a, SubsetSumTable& table);

SynthReport base_report(const BooleanMatrix& a, Method method, std::size_t s, std::size_t p);

} // namespace amc::detail
