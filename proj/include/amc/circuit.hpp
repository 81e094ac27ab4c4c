#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amc {

enum class GateKind : std::uint8_t { Input, One, Xor, And };

using GateId = std::uint32_t;

/// For Input gates `a` holds the input index; for Xor/And `a` and `b` are
/// operand ids, always smaller than the gate's own id.
struct Gate {
  GateKind kind = GateKind::One;
  GateId a = 0;
  GateId b = 0;

  bool operator==(const Gate&) const = default;
};

struct CircuitStats {
  std::size_t total_gates = 0;
  std::size_t mult_complexity = 0;
  std::size_t add_complexity = 0;
};

/// Straight-line circuit over {XOR, AND, 1}. Gates 0..n-1 are the inputs
/// x0..x(n-1); every later gate only references earlier ids, so the gate
/// list is a topological order by construction.
class Circuit {
public:
  explicit Circuit(std::size_t n_inputs = 0);

  std::size_t n_inputs() const noexcept { return n_inputs_; }
  std::size_t size() const noexcept { return gates_.size(); }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const Gate& gate(GateId id) const { return gates_.at(id); }
  const std::vector<GateId>& outputs() const noexcept { return outputs_; }
  const std::string& name(GateId id) const { return names_.at(id); }

  GateId input(std::size_t index) const;

  /// An empty name selects "t<k>", k counting non-input gates.
  GateId add_one(std::string name = {});
  GateId add_xor(GateId a, GateId b, std::string name = {});
  GateId add_and(GateId a, GateId b, std::string name = {});
  void add_output(GateId id);
  void rename(GateId id, std::string name);

  bool operator==(const Circuit&) const = default;

private:
  GateId push(Gate g, std::string name);

  std::size_t n_inputs_;
  std::vector<Gate> gates_;
  std::vector<std::string> names_;
  std::vector<GateId> outputs_;
};

CircuitStats stats(const Circuit& c);

/// Evaluates every output on one assignment (assignment[i] is x_i).
std::vector<bool> evaluate(const Circuit& c, const std::vector<bool>& assignment);

/// Bit-parallel evaluation: inputs[i] carries 64 independent values of x_i,
/// one word per output. `scratch` is resized to the gate count.
void evaluate_words(const Circuit& c, std::span<const std::uint64_t> inputs, std::span<std::uint64_t> outputs,
                    std::vector<std::uint64_t>& scratch);

/// Function of n variables; entry k is f at the assignment whose bit i is x_i.
class TruthTable {
public:
  explicit TruthTable(std::size_t n_vars);

  std::size_t n_vars() const noexcept { return n_vars_; }
  std::size_t size() const noexcept { return std::size_t{1} << n_vars_; }
  bool operator[](std::size_t k) const noexcept { return (bits_[k / 64] >> (k % 64)) & 1U; }
  std::span<const std::uint64_t> words() const noexcept { return bits_; }
  std::span<std::uint64_t> words() noexcept { return bits_; }

  /// Entries in index order, "0001" for AND of two variables.
  std::string to_string() const;

  bool operator==(const TruthTable&) const = default;

private:
  std::size_t n_vars_;
  std::vector<std::uint64_t> bits_;
};

inline constexpr std::size_t default_truth_table_limit = 20;

/// One table per output. Throws std::invalid_argument if n_inputs > limit.
std::vector<TruthTable> truth_table(const Circuit& c, std::size_t limit = default_truth_table_limit);

/// Text format:
///   .inputs k
///   <name> = XOR|AND <op> <op>   or   <name> = ONE
///   .outputs <name> ...
/// '#' starts a comment line. Throws ParseError.
Circuit parse_circuit(std::string_view text);
std::string serialize_circuit(const Circuit& c);

/// One output, exactly `m_and` AND gates. Each AND operand is an XOR chain
/// over a random subset of the available signals (inputs and earlier AND
/// outputs), each taken with probability `xor_density`, plus ONE with
/// probability 1/2. The output is such a chain over all signals.
Circuit random_circuit(std::size_t n, std::size_t m_and, double xor_density, std::uint64_t seed);

} // namespace amc
