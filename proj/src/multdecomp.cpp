#include "amc/multdecomp.hpp"

#include "amc/errors.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace amc {

Decomposition decompose(const Circuit& c) {
  if (c.outputs().size() != 1) {
    throw UnsupportedInput("the multiplicative decomposition handles single-output circuits; this one has " +
                           std::to_string(c.outputs().size()) + " outputs");
  }
  const auto n = c.n_inputs();
  const auto M = stats(c).mult_complexity;
  const auto columns = n + M;
  const auto words = (columns + 63) / 64;

  // Affine form of every gate: `words` support words plus a constant bit.
  std::vector<std::uint64_t> support(c.size() * words, 0);
  std::vector<bool> constant(c.size(), false);
  const auto form = [&](GateId id) { return std::span(support).subspan(static_cast<std::size_t>(id) * words, words); };
  const auto combination = [&](GateId id) {
    const auto f = form(id);
    return AffineCombination{{f.begin(), f.end()}, constant[id]};
  };

  Decomposition d;
  auto& skel = d.skeleton;
  skel.n = n;
  skel.M = M;
  skel.h.reserve(2 * M);

  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto id = static_cast<GateId>(i);
    const auto& g = c.gate(id);
    auto dst = form(id);
    switch (g.kind) {
    case GateKind::Input:
      dst[g.a / 64] |= std::uint64_t{1} << (g.a % 64);
      break;
    case GateKind::One:
      constant[i] = true;
      break;
    case GateKind::Xor: {
      const auto lhs = form(g.a);
      const auto rhs = form(g.b);
      for (std::size_t w = 0; w < words; ++w) {
        dst[w] = lhs[w] ^ rhs[w];
      }
      constant[i] = constant[g.a] != constant[g.b];
      break;
    }
    case GateKind::And: {
      const auto column = n + skel.and_order.size();
      skel.h.push_back(combination(g.a));
      skel.h.push_back(combination(g.b));
      skel.and_order.push_back(id);
      dst[column / 64] |= std::uint64_t{1} << (column % 64);
      break;
    }
    }
  }
  skel.f = combination(c.outputs().front());

  auto& sm = d.matrix;
  sm.matrix = BooleanMatrix(2 * M + 1, columns);
  sm.const_bits.assign(2 * M + 1, false);
  for (std::size_t r = 0; r <= 2 * M; ++r) {
    const auto& comb = r < 2 * M ? skel.h[r] : skel.f;
    const auto row = sm.matrix.row(r);
    std::copy(comb.support.begin(), comb.support.end(), row.begin());
    sm.const_bits[r] = comb.constant;
  }
  return d;
}

bool satisfies_precedence(const Decomposition& d) {
  const auto& skel = d.skeleton;
  for (std::size_t i = 0; i < skel.M; ++i) {
    for (auto r : {2 * i, 2 * i + 1}) {
      for (std::size_t k = i; k < skel.M; ++k) {
        if (d.matrix.matrix.get(r, skel.n + k)) {
          return false;
        }
      }
    }
  }
  return true;
}

std::optional<double> skeleton_active_square_bound(std::size_t M, std::size_t n) {
  if (M == 0) {
    return std::nullopt;
  }
  const double m = static_cast<double>(M);
  return (2.0 * m + 1.0) * (static_cast<double>(n) + m / 2.0 + std::log2(m));
}

namespace {

void check_shape(const MultSkeleton& skel, const AdditiveCircuit& lin) {
  if (lin.n_vars() != skel.n + skel.M || lin.outputs().size() != 2 * skel.M + 1) {
    throw std::invalid_argument("linear circuit shape does not match the skeleton");
  }
}

std::size_t constant_of(const MultSkeleton& skel, std::size_t row) {
  return row < 2 * skel.M ? skel.h[row].constant : skel.f.constant;
}

} // namespace

Circuit recompose(const MultSkeleton& skel, const AdditiveCircuit& lin) {
  check_shape(skel, lin);
  const auto n = skel.n;
  const auto M = skel.M;

  // Wave of a signal: the largest 1-based g index it depends on.
  std::vector<std::uint32_t> wave(lin.signal_count(), 0);
  for (std::size_t v = n; v < n + M; ++v) {
    wave[v] = static_cast<std::uint32_t>(v - n + 1);
  }
  std::vector<std::vector<std::uint32_t>> by_wave(M + 1);
  for (std::size_t k = 0; k < lin.steps().size(); ++k) {
    const auto& st = lin.steps()[k];
    const auto w = std::max(wave[st.a], wave[st.b]);
    wave[lin.n_vars() + k] = w;
    by_wave[w].push_back(static_cast<std::uint32_t>(k));
  }
  const auto wave_of = [&](Signal s) { return s == zero_signal ? 0U : wave[s]; };

  Circuit c(n);
  std::vector<GateId> gate_of(lin.signal_count(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    gate_of[i] = c.input(i);
  }
  std::optional<GateId> one;
  std::optional<GateId> zero;
  const auto get_one = [&] {
    if (!one) {
      one = c.add_one();
    }
    return *one;
  };
  const auto emit_wave = [&](std::size_t w) {
    for (auto k : by_wave[w]) {
      const auto& st = lin.steps()[k];
      gate_of[lin.n_vars() + k] = c.add_xor(gate_of[st.a], gate_of[st.b]);
    }
  };
  const auto realize = [&](std::size_t row) -> GateId {
    const auto s = lin.outputs()[row];
    const bool k = constant_of(skel, row) != 0;
    if (s == zero_signal) {
      if (k) {
        return get_one();
      }
      if (!zero) {
        const auto o = get_one();
        zero = c.add_xor(o, o);
      }
      return *zero;
    }
    return k ? c.add_xor(gate_of[s], get_one()) : gate_of[s];
  };

  for (std::size_t i = 0; i < M; ++i) {
    emit_wave(i);
    for (auto row : {2 * i, 2 * i + 1}) {
      if (wave_of(lin.outputs()[row]) > i) {
        throw std::logic_error("scheduling deadlock: row " + std::to_string(row) + " needs g" +
                               std::to_string(wave_of(lin.outputs()[row])) + " before AND " + std::to_string(i + 1));
      }
    }
    const auto left = realize(2 * i);
    const auto right = realize(2 * i + 1);
    gate_of[n + i] = c.add_and(left, right);
  }
  emit_wave(M);
  c.add_output(realize(2 * M));
  return c;
}

std::size_t recomposed_gate_count(const MultSkeleton& skel, const AdditiveCircuit& lin) {
  check_shape(skel, lin);
  std::size_t total = lin.cost() + skel.M;
  bool zero_needed = false;
  for (std::size_t row = 0; row <= 2 * skel.M; ++row) {
    const bool k = constant_of(skel, row) != 0;
    if (lin.outputs()[row] == zero_signal) {
      zero_needed = zero_needed || !k;
    } else if (k) {
      ++total;
    }
  }
  return total + (zero_needed ? 1 : 0);
}

OptimizeResult optimize(const Circuit& c, const OptimizeOptions& options) {
  const auto d = decompose(c);
  const auto& a = d.matrix.matrix;
  SynthParams params;
  if (options.params) {
    params = *options.params;
  } else if (options.tune) {
    params = tune_params(a);
  } else {
    params = default_params(a.rows(), a.cols());
  }
  auto synth = synthesize(a, params);

  OptimizeResult result{recompose(d.skeleton, synth.circuit), {}};
  auto& r = result.report;
  r.synth = synth.report;
  r.M = d.skeleton.M;
  r.n = d.skeleton.n;
  r.original_total = stats(c).total_gates;
  r.optimized_total = stats(result.circuit).total_gates;
  if (r.M >= 2) {
    const double m = static_cast<double>(r.M);
    r.theorem_reference_value = m * (m + 2.0 * static_cast<double>(r.n)) / (2.0 * std::log2(m));
  }
  r.skeleton_active_square_bound = skeleton_active_square_bound(r.M, r.n);
  r.equivalence = check_circuits(c, result.circuit, options.exhaustive_limit, options.samples, options.seed);
  return result;
}

} // namespace amc
