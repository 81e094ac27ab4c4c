#pragma once

#include "amc/bitmatrix.hpp"
#include "amc/circuit.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amc {

/// Reference inside an additive circuit: variables are [0, n_vars), the
/// result of step k is n_vars + k.
using Signal = std::uint32_t;
inline constexpr Signal zero_signal = std::numeric_limits<Signal>::max();

struct AdditionStep {
  Signal a;
  Signal b;
};

/// Straight-line program of binary additions over a commutative semigroup,
/// read here over GF(2). Cost is the number of steps.
class AdditiveCircuit {
public:
  explicit AdditiveCircuit(std::size_t n_vars = 0) : n_vars_(n_vars) {}

  std::size_t n_vars() const noexcept { return n_vars_; }
  std::size_t cost() const noexcept { return steps_.size(); }
  std::size_t signal_count() const noexcept { return n_vars_ + steps_.size(); }
  const std::vector<AdditionStep>& steps() const noexcept { return steps_; }
  const std::vector<Signal>& outputs() const noexcept { return outputs_; }

  bool is_variable(Signal s) const noexcept { return s < n_vars_; }
  Signal variable(std::size_t i) const;

  /// Appends a + b. Operands must exist and differ.
  Signal add(Signal a, Signal b);
  /// Left-to-right chain; an empty span is zero_signal, one term is itself.
  Signal sum(std::span<const Signal> terms);
  void add_output(Signal s);

  /// Mutable step access for fault-injection tests.
  std::vector<AdditionStep>& mutable_steps() noexcept { return steps_; }

  /// The operator computed, by evaluating all unit vectors 64 at a time.
  BooleanMatrix to_matrix() const;
  /// Smallest j such that the circuit disagrees with column j of `a` on e_j.
  std::optional<std::size_t> first_mismatch(const BooleanMatrix& a) const;

private:
  std::size_t n_vars_;
  std::vector<AdditionStep> steps_;
  std::vector<Signal> outputs_;
};

enum class Method { Naive, Grouped, Nechiporuk };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

/// Group width s and section height p.
struct SynthParams {
  Method method = Method::Nechiporuk;
  std::size_t s = 1;
  std::size_t p = 1;

  bool operator==(const SynthParams&) const = default;
};

/// Throws std::invalid_argument when `params` is out of range for an m x n
/// matrix. Nechiporuk needs 2^s < m once m > 2.
void validate_params(std::size_t m, std::size_t n, const SynthParams& params);

struct SynthReport {
  Method method = Method::Naive;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t s = 1;
  std::size_t p = 1;
  std::size_t weight = 0;
  std::size_t active_square = 0;
  std::size_t window = 0;
  std::size_t cost_actual = 0;
  double cost_formula = 0.0;
  std::size_t cost_naive = 0;
  bool verified = false;
  /// Weight of the grouped matrix B (one 1 per nonzero row/group pattern).
  std::size_t reduced_weight = 0;
  /// Additions spent on the pair sums y_{i,j}.
  std::size_t pairing_additions = 0;
  std::size_t nonzero_rows = 0;
};

struct SynthResult {
  AdditiveCircuit circuit;
  SynthReport report;
};

/// n 2^s / s + S / (2s) + m p + ceil(m/p) 2^s ceil(n/s).
double construction_cost_bound(std::size_t m, std::size_t n, std::size_t s, std::size_t p, std::size_t active_square);

/// Sum over rows of max(row weight - 1, 0).
std::size_t naive_cost(const BooleanMatrix& a);

AdditiveCircuit naive_synthesize(const BooleanMatrix& a);

struct GroupSums {
  AdditiveCircuit circuit;
  /// table[g][mask] is the sum of the variables of group g selected by
  /// mask; entry 0 is zero_signal.
  std::vector<std::vector<Signal>> table;
};

inline constexpr std::size_t max_full_table_width = 20;

/// Every nonempty subset sum of every group of s consecutive variables
/// (the last group may be narrower). Costs 2^w - w - 1 per group of width w.
GroupSums group_sums(std::size_t n, std::size_t s);

/// Four-Russians baseline: pruned subset-sum tables, then each row as a
/// chain over its per-group sums.
AdditiveCircuit grouped_synthesize(const BooleanMatrix& a, std::size_t s);

/// Subset-sum tables, then rows are cut into sections of height p and, in
/// every column of the grouped matrix, ones are paired top to bottom; the
/// shared pair sums y_{i,j} serve both rows. The result is verified on all
/// unit vectors before it is returned.
SynthResult nechiporuk_synthesize(const BooleanMatrix& a, const SynthParams& params);

/// Dispatches on params.method and fills the report for every method.
SynthResult synthesize(const BooleanMatrix& a, const SynthParams& params);

/// Asymptotic schedule s ~ log m - 3 log log m, p ~ m / log^2 m, clamped to
/// valid values; Naive for m <= 4.
SynthParams default_params(std::size_t m, std::size_t n);

/// Group width for the grouped baseline: round(log m - log log m), clamped.
std::size_t grouped_default_width(std::size_t m, std::size_t n);

/// Cheapest Nechiporuk parameters for this particular matrix over a sweep
/// of every valid s and p in {powers of two up to m, m}. Each candidate is
/// costed exactly without emitting a circuit.
SynthParams tune_params(const BooleanMatrix& a);

/// Exact step count nechiporuk_synthesize would produce, counted without
/// building the circuit.
std::size_t nechiporuk_cost(const BooleanMatrix& a, const SynthParams& params);

/// XOR circuit with one input per variable. The final step of row k is
/// named y<k> when not already claimed by an earlier row; zero rows share
/// one ONE XOR ONE gate.
Circuit specialize_to_xor(const AdditiveCircuit& ac);

std::string to_json(const SynthReport& r);

} // namespace amc
