#pragma once

#include "amc/bitmatrix.hpp"
#include "amc/circuit.hpp"
#include "amc/linsynth.hpp"
#include "amc/verify.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace amc {

/// Affine form over the columns [x0..x(n-1), g1..gM] plus a constant.
struct AffineCombination {
  std::vector<std::uint64_t> support; // bit c is column c
  bool constant = false;

  bool has(std::size_t column) const noexcept { return (support[column / 64] >> (column % 64)) & 1U; }
  bool operator==(const AffineCombination&) const = default;
};

/// AND gates in circuit order with their operand forms. h[2i] and h[2i+1]
/// feed AND number i (0-based) and only use g columns of earlier ANDs.
struct MultSkeleton {
  std::size_t n = 0;
  std::size_t M = 0;
  std::vector<GateId> and_order;
  std::vector<AffineCombination> h;
  AffineCombination f;
};

/// Rows [h_1..h_2M, f], columns [x, g]; constants kept beside the matrix.
struct SkeletonMatrix {
  BooleanMatrix matrix{1, 0};
  std::vector<bool> const_bits;
};

struct Decomposition {
  MultSkeleton skeleton;
  SkeletonMatrix matrix;
};

/// Flattens every XOR/ONE cone feeding an AND input or the output into an
/// affine form; duplicated terms cancel. Throws UnsupportedInput unless the
/// circuit has exactly one output.
Decomposition decompose(const Circuit& c);

/// True when every h row of AND i has zeros in columns g_i..g_M.
bool satisfies_precedence(const Decomposition& d);

/// (2M+1)(n + M/2 + log2 M); nullopt for M = 0.
std::optional<double> skeleton_active_square_bound(std::size_t M, std::size_t n);

/// Issues the steps of `lin` (variables [x, g]) in waves of g availability,
/// firing AND i as soon as its two rows are complete, then adds ONE per set
/// constant bit. Throws std::logic_error if a row would need a g column that
/// is not yet defined.
Circuit recompose(const MultSkeleton& skel, const AdditiveCircuit& lin);

/// Gate count recompose produces: lin cost + M + set constants on rows with a
/// nonzero linear part + 1 if some row is the constant 0.
std::size_t recomposed_gate_count(const MultSkeleton& skel, const AdditiveCircuit& lin);

struct OptimizeOptions {
  /// nullopt: default_params of the skeleton shape.
  std::optional<SynthParams> params;
  /// Pick parameters with tune_params instead (ignored when params is set).
  bool tune = false;
  std::size_t exhaustive_limit = default_exhaustive_limit;
  std::size_t samples = default_samples;
  std::uint64_t seed = 1;
};

struct OptimizeReport {
  SynthReport synth;
  std::size_t M = 0;
  std::size_t n = 0;
  std::size_t original_total = 0;
  std::size_t optimized_total = 0;
  /// M (M + 2n) / (2 log2 M); nullopt for M < 2.
  std::optional<double> theorem_reference_value;
  std::optional<double> skeleton_active_square_bound;
  EquivalenceVerdict equivalence;
};

struct OptimizeResult {
  Circuit circuit;
  OptimizeReport report;
};

/// decompose, synthesize the skeleton operator, recompose, then check the
/// result against the input circuit.
OptimizeResult optimize(const Circuit& c, const OptimizeOptions& options = {});

std::string to_json(const OptimizeReport& r);

} // namespace amc
