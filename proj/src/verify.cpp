#include "amc/verify.hpp"

#include "amc/errors.hpp"

#include <bit>
#include <cmath>
#include <random>

namespace amc {

EquivalenceVerdict check_linear(const BooleanMatrix& a, const AdditiveCircuit& lin) {
  if (lin.n_vars() != a.cols() || lin.outputs().size() != a.rows()) {
    throw std::invalid_argument("check_linear: circuit is " + std::to_string(lin.outputs().size()) + "x" +
                                std::to_string(lin.n_vars()) + ", matrix is " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()));
  }
  EquivalenceVerdict v;
  v.mode = VerdictMode::Exhaustive;
  v.samples = a.cols();
  if (const auto col = lin.first_mismatch(a)) {
    v.equal = false;
    std::vector<bool> unit(a.cols(), false);
    unit[*col] = true;
    v.witness = std::move(unit);
  }
  return v;
}

namespace {

// Compares 64 assignments at once; returns the first differing lane mask.
std::uint64_t compare_block(const Circuit& lhs, const Circuit& rhs, std::span<const std::uint64_t> in,
                            std::vector<std::uint64_t>& out_l, std::vector<std::uint64_t>& out_r,
                            std::vector<std::uint64_t>& scratch) {
  evaluate_words(lhs, in, out_l, scratch);
  evaluate_words(rhs, in, out_r, scratch);
  std::uint64_t diff = 0;
  for (std::size_t k = 0; k < out_l.size(); ++k) {
    diff |= out_l[k] ^ out_r[k];
  }
  return diff;
}

std::vector<bool> lane(std::span<const std::uint64_t> in, unsigned l) {
  std::vector<bool> bits(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    bits[i] = ((in[i] >> l) & 1U) != 0;
  }
  return bits;
}

} // namespace

EquivalenceVerdict check_circuits(const Circuit& lhs, const Circuit& rhs, std::size_t limit, std::size_t samples,
                                  std::uint64_t seed) {
  if (lhs.n_inputs() != rhs.n_inputs() || lhs.outputs().size() != rhs.outputs().size()) {
    throw UnsupportedInput("arity mismatch: " + std::to_string(lhs.n_inputs()) + " -> " +
                           std::to_string(lhs.outputs().size()) + " versus " + std::to_string(rhs.n_inputs()) +
                           " -> " + std::to_string(rhs.outputs().size()));
  }
  const auto n = lhs.n_inputs();
  EquivalenceVerdict v;
  std::vector<std::uint64_t> in(n);
  std::vector<std::uint64_t> out_l(lhs.outputs().size());
  std::vector<std::uint64_t> out_r(rhs.outputs().size());
  std::vector<std::uint64_t> scratch;

  if (n <= limit && n < 64) {
    v.mode = VerdictMode::Exhaustive;
    const std::uint64_t rows = std::uint64_t{1} << n;
    v.samples = rows;
    const std::uint64_t valid = rows >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rows) - 1;
    for (std::uint64_t base = 0; base < rows; base += 64) {
      // Lane l holds assignment base + l.
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t w = 0;
        for (unsigned l = 0; l < 64; ++l) {
          w |= (((base + l) >> i) & 1U) << l;
        }
        in[i] = w;
      }
      const auto diff = compare_block(lhs, rhs, in, out_l, out_r, scratch) & valid;
      if (diff != 0) {
        v.equal = false;
        v.witness = lane(in, static_cast<unsigned>(std::countr_zero(diff)));
        return v;
      }
    }
    return v;
  }

  v.mode = VerdictMode::Sampled;
  v.samples = samples;
  v.seed = seed;
  v.escape_probability = std::pow(1.0 - std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(n, 1000))),
                                  static_cast<double>(samples));
  std::mt19937_64 rng(seed);
  for (std::size_t done = 0; done < samples; done += 64) {
    for (auto& w : in) {
      w = rng();
    }
    const auto lanes = std::min<std::size_t>(64, samples - done);
    const std::uint64_t valid = lanes == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << lanes) - 1;
    const auto diff = compare_block(lhs, rhs, in, out_l, out_r, scratch) & valid;
    if (diff != 0) {
      v.equal = false;
      v.witness = lane(in, static_cast<unsigned>(std::countr_zero(diff)));
      return v;
    }
  }
  return v;
}

std::vector<std::string> audit_costs(const SynthReport& r) {
  std::vector<std::string> violations;
  const auto recomputed = construction_cost_bound(r.m, r.n, std::max<std::size_t>(r.s, 1), std::max<std::size_t>(r.p, 1),
                                             r.active_square);
  if (std::abs(recomputed - r.cost_formula) > 1e-9 * std::max(1.0, recomputed)) {
    violations.emplace_back("formula_recompute");
  }
  if (r.method == Method::Nechiporuk && static_cast<double>(r.cost_actual) > r.cost_formula) {
    violations.emplace_back("formula_bound");
  }
  if (r.nonzero_rows > r.weight || r.cost_naive != r.weight - r.nonzero_rows) {
    violations.emplace_back("naive_closed_form");
  }
  if (2 * r.pairing_additions > r.reduced_weight) {
    violations.emplace_back("pairing_bound");
  }
  if (r.active_square < r.weight || r.active_square > r.m * r.n) {
    violations.emplace_back("active_square_range");
  }
  if (!r.verified) {
    violations.emplace_back("unverified");
  }
  return violations;
}

} // namespace amc
