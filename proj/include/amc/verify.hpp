#pragma once

#include "amc/bitmatrix.hpp"
#include "amc/circuit.hpp"
#include "amc/linsynth.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace amc {

enum class VerdictMode { Exhaustive, Sampled };

struct EquivalenceVerdict {
  VerdictMode mode = VerdictMode::Exhaustive;
  bool equal = true;
  /// Assignment (check_circuits) or unit vector (check_linear) where the two
  /// sides differ.
  std::optional<std::vector<bool>> witness;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Sampled mode: chance that a function differing on a single point
  /// escapes detection, (1 - 2^-n)^samples. Zero for exhaustive verdicts.
  double escape_probability = 0.0;
};

inline constexpr std::size_t default_exhaustive_limit = 12;
inline constexpr std::size_t default_samples = 100000;

/// Complete for GF(2) additive circuits: compares the circuit on every unit
/// vector e_j against column j of `a`.
EquivalenceVerdict check_linear(const BooleanMatrix& a, const AdditiveCircuit& lin);

/// Exhaustive when n_inputs <= limit, else `samples` seeded random
/// assignments. Throws UnsupportedInput on differing input or output arity.
EquivalenceVerdict check_circuits(const Circuit& lhs, const Circuit& rhs, std::size_t limit = default_exhaustive_limit,
                                  std::size_t samples = default_samples, std::uint64_t seed = 1);

/// Names of violated cost assertions; empty when the report is consistent:
///   formula_recompute  stored cost_formula differs from the recomputed value
///   formula_bound      Nechiporuk cost_actual exceeds cost_formula
///   naive_closed_form  cost_naive != weight - nonzero_rows
///   pairing_bound      pairing_additions > reduced_weight / 2
///   active_square_range  S outside [weight, m n]
///   unverified         the synthesized circuit failed its check
std::vector<std::string> audit_costs(const SynthReport& report);

std::string to_json(const EquivalenceVerdict& v);

} // namespace amc
