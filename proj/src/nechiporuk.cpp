#include "amc/linsynth.hpp"

#include "subset_table.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_set>
#include <stdexcept>

namespace amc {

namespace {

struct PairTerm {
  std::uint32_t upper;
  std::uint32_t lower;
  Signal signal;
};

struct ConstructionCounts {
  std::size_t reduced_weight = 0;
  std::size_t pairing_additions = 0;
};

// Stage 2 over rows [begin, end), whose B entries are entries[first, last).
void synthesize_section(AdditiveCircuit& ac, std::span<const detail::ReducedEntry> section_entries,
                        std::size_t begin, std::size_t end, std::vector<Signal>& row_out,
                        ConstructionCounts& counts) {
  const auto height = end - begin;
  std::vector<detail::ReducedEntry> by_column(section_entries.begin(), section_entries.end());
  std::sort(by_column.begin(), by_column.end(), [](const auto& x, const auto& y) {
    if (x.group != y.group) {
      return x.group < y.group;
    }
    if (x.mask != y.mask) {
      return x.mask < y.mask;
    }
    return x.row < y.row;
  });

  std::vector<PairTerm> pairs;
  std::vector<std::vector<Signal>> unpaired(height);
  for (std::size_t i = 0; i < by_column.size();) {
    std::size_t j = i;
    while (j < by_column.size() && by_column[j].group == by_column[i].group && by_column[j].mask == by_column[i].mask) {
      ++j;
    }
    // Ones of this column are by_column[i, j), top to bottom.
    std::size_t k = i;
    for (; k + 1 < j; k += 2) {
      pairs.push_back({by_column[k].row, by_column[k + 1].row, by_column[k].signal});
    }
    if (k < j) {
      unpaired[by_column[k].row - begin].push_back(by_column[k].signal);
    }
    i = j;
  }

  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
    return x.upper != y.upper ? x.upper < y.upper : x.lower < y.lower;
  });

  std::vector<std::vector<Signal>> partners(height);
  std::vector<Signal> chain;
  for (std::size_t i = 0; i < pairs.size();) {
    std::size_t j = i;
    chain.clear();
    while (j < pairs.size() && pairs[j].upper == pairs[i].upper && pairs[j].lower == pairs[i].lower) {
      chain.push_back(pairs[j].signal);
      ++j;
    }
    const auto y = ac.sum(chain);
    counts.pairing_additions += chain.size() - 1;
    partners[pairs[i].upper - begin].push_back(y);
    partners[pairs[i].lower - begin].push_back(y);
    i = j;
  }

  for (std::size_t r = 0; r < height; ++r) {
    auto& terms = partners[r];
    terms.insert(terms.end(), unpaired[r].begin(), unpaired[r].end());
    row_out[begin + r] = ac.sum(terms);
  }
}

AdditiveCircuit build(const BooleanMatrix& a, const SynthParams& params, ConstructionCounts& counts) {
  AdditiveCircuit ac(a.cols());
  if (a.cols() == 0) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      ac.add_output(zero_signal);
    }
    return ac;
  }
  detail::SubsetSumTable table(ac, a.cols(), params.s);
  const auto entries = detail::reduce_matrix(a, table);
  counts.reduced_weight = entries.size();

  std::vector<Signal> row_out(a.rows(), zero_signal);
  std::size_t first = 0;
  for (std::size_t begin = 0; begin < a.rows(); begin += params.p) {
    const auto end = std::min(a.rows(), begin + params.p);
    std::size_t last = first;
    while (last < entries.size() && entries[last].row < end) {
      ++last;
    }
    synthesize_section(ac, std::span(entries).subspan(first, last - first), begin, end, row_out, counts);
    first = last;
  }
  for (auto s : row_out) {
    ac.add_output(s);
  }
  return ac;
}

// Step count of build() for a fixed group width, without emitting anything.
// Mirrors build(): table steps, then per section the y chains and row sums.
class CostModel {
public:
  CostModel(const BooleanMatrix& a, std::size_t s) : m_(a.rows()), groups_((a.cols() + s - 1) / s), s_(s) {
    row_start_.reserve(m_ + 1);
    std::vector<std::vector<std::uint64_t>> used(groups_);
    for (std::size_t r = 0; r < m_; ++r) {
      row_start_.push_back(keys_.size());
      for (std::size_t g = 0; g < groups_; ++g) {
        const auto width = std::min(s, a.cols() - g * s);
        const auto mask = a.extract(r, g * s, width);
        if (mask != 0) {
          keys_.push_back({static_cast<std::uint32_t>(g), mask});
          used[g].push_back(mask);
        }
      }
    }
    row_start_.push_back(keys_.size());
    for (auto& masks : used) {
      std::sort(masks.begin(), masks.end());
      masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
      std::unordered_set<std::uint64_t> built;
      for (auto mask : masks) {
        for (; std::popcount(mask) >= 2 && built.insert(mask).second; mask &= mask - 1) {
          ++table_steps_;
        }
      }
    }
    dense_ = s <= 24 && groups_ <= (std::size_t{1} << 24) >> s;
    if (dense_) {
      pending_.assign(groups_ << s, none);
    }
  }

  std::size_t cost(std::size_t p) const {
    std::size_t total = table_steps_;
    std::vector<std::uint64_t> pair_ids;
    std::vector<std::size_t> unpaired;
    std::vector<std::size_t> partners;
    std::vector<std::size_t> touched;
    std::map<std::pair<std::uint32_t, std::uint64_t>, std::uint32_t> sparse;
    for (std::size_t begin = 0; begin < m_; begin += p) {
      const auto end = std::min(m_, begin + p);
      const auto height = end - begin;
      pair_ids.clear();
      unpaired.assign(height, 0);
      partners.assign(height, 0);
      for (std::size_t r = begin; r < end; ++r) {
        for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
          const auto [g, mask] = keys_[k];
          std::uint32_t* slot;
          if (dense_) {
            const auto idx = (static_cast<std::size_t>(g) << s_) | mask;
            slot = &pending_[idx];
            if (*slot == none) {
              touched.push_back(idx);
            }
          } else {
            slot = &sparse.try_emplace({g, mask}, none).first->second;
          }
          if (*slot == none || *slot == paired) {
            *slot = static_cast<std::uint32_t>(r - begin);
          } else {
            pair_ids.push_back(static_cast<std::uint64_t>(*slot) * height + (r - begin));
            *slot = paired;
          }
        }
      }
      // Slots still holding a row are the unpaired bottom ones of their column.
      if (dense_) {
        for (auto idx : touched) {
          if (pending_[idx] != paired && pending_[idx] != none) {
            ++unpaired[pending_[idx]];
          }
          pending_[idx] = none;
        }
        touched.clear();
      } else {
        for (const auto& [key, v] : sparse) {
          if (v != paired) {
            ++unpaired[v];
          }
        }
        sparse.clear();
      }
      std::sort(pair_ids.begin(), pair_ids.end());
      for (std::size_t i = 0; i < pair_ids.size();) {
        std::size_t j = i;
        while (j < pair_ids.size() && pair_ids[j] == pair_ids[i]) {
          ++j;
        }
        total += j - i - 1;
        ++partners[pair_ids[i] / height];
        ++partners[pair_ids[i] % height];
        i = j;
      }
      for (std::size_t r = 0; r < height; ++r) {
        const auto terms = partners[r] + unpaired[r];
        total += terms > 0 ? terms - 1 : 0;
      }
    }
    return total;
  }

private:
  static constexpr std::uint32_t none = 0xffffffffU;
  static constexpr std::uint32_t paired = 0xfffffffeU;

  std::size_t m_;
  std::size_t groups_;
  std::size_t s_;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> keys_;
  std::vector<std::size_t> row_start_;
  std::size_t table_steps_ = 0;
  bool dense_ = false;
  mutable std::vector<std::uint32_t> pending_;
};

} // namespace

SynthResult nechiporuk_synthesize(const BooleanMatrix& a, const SynthParams& params) {
  SynthParams p = params;
  p.method = Method::Nechiporuk;
  validate_params(a.rows(), a.cols(), p);
  ConstructionCounts counts;
  SynthResult result;
  result.circuit = build(a, p, counts);
  result.report = detail::base_report(a, Method::Nechiporuk, p.s, p.p);
  result.report.cost_actual = result.circuit.cost();
  result.report.reduced_weight = counts.reduced_weight;
  result.report.pairing_additions = counts.pairing_additions;
  result.report.verified = !result.circuit.first_mismatch(a).has_value();
  return result;
}

std::size_t nechiporuk_cost(const BooleanMatrix& a, const SynthParams& params) {
  SynthParams p = params;
  p.method = Method::Nechiporuk;
  validate_params(a.rows(), a.cols(), p);
  return CostModel(a, p.s).cost(p.p);
}

SynthParams tune_params(const BooleanMatrix& a) {
  const auto m = a.rows();
  const auto n = a.cols();
  if (m <= 2 || n == 0) {
    return default_params(m, n);
  }
  std::vector<std::size_t> heights;
  for (std::size_t p = 1; p < m; p *= 2) {
    heights.push_back(p);
  }
  heights.push_back(m);

  SynthParams best = default_params(m, n);
  if (best.method != Method::Nechiporuk) {
    best = {Method::Nechiporuk, 1, m};
  }
  auto best_cost = nechiporuk_cost(a, best);
  for (std::size_t s = 1; s <= std::min<std::size_t>(n, 62) && (std::uint64_t{1} << s) < m; ++s) {
    const CostModel model(a, s);
    for (auto p : heights) {
      const SynthParams candidate{Method::Nechiporuk, s, p};
      const auto cost = model.cost(p);
      if (cost < best_cost) {
        best_cost = cost;
        best = candidate;
      }
    }
  }
  return best;
}

} // namespace amc
