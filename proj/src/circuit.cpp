#include "amc/circuit.hpp"

#include <random>
#include <stdexcept>

namespace amc {

Circuit::Circuit(std::size_t n_inputs) : n_inputs_(n_inputs) {
  gates_.reserve(n_inputs);
  names_.reserve(n_inputs);
  for (std::size_t i = 0; i < n_inputs; ++i) {
    gates_.push_back({GateKind::Input, static_cast<GateId>(i), 0});
    names_.push_back("x" + std::to_string(i));
  }
}

GateId Circuit::input(std::size_t index) const {
  if (index >= n_inputs_) {
    throw std::out_of_range("input index " + std::to_string(index) + " out of range");
  }
  return static_cast<GateId>(index);
}

GateId Circuit::push(Gate g, std::string name) {
  const auto id = static_cast<GateId>(gates_.size());
  if (g.kind == GateKind::Xor || g.kind == GateKind::And) {
    if (g.a >= id || g.b >= id) {
      throw std::out_of_range("operand refers to an undefined gate");
    }
  }
  if (name.empty()) {
    name = "t" + std::to_string(id - n_inputs_);
  }
  gates_.push_back(g);
  names_.push_back(std::move(name));
  return id;
}

GateId Circuit::add_one(std::string name) { return push({GateKind::One, 0, 0}, std::move(name)); }

GateId Circuit::add_xor(GateId a, GateId b, std::string name) {
  return push({GateKind::Xor, a, b}, std::move(name));
}

GateId Circuit::add_and(GateId a, GateId b, std::string name) {
  return push({GateKind::And, a, b}, std::move(name));
}

void Circuit::add_output(GateId id) {
  if (id >= gates_.size()) {
    throw std::out_of_range("output refers to an undefined gate");
  }
  outputs_.push_back(id);
}

void Circuit::rename(GateId id, std::string name) {
  if (id < n_inputs_) {
    throw std::invalid_argument("inputs keep their implicit names");
  }
  names_.at(id) = std::move(name);
}

CircuitStats stats(const Circuit& c) {
  CircuitStats s;
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::Xor) {
      ++s.add_complexity;
    } else if (g.kind == GateKind::And) {
      ++s.mult_complexity;
    }
  }
  s.total_gates = s.add_complexity + s.mult_complexity;
  return s;
}

void evaluate_words(const Circuit& c, std::span<const std::uint64_t> inputs, std::span<std::uint64_t> outputs,
                    std::vector<std::uint64_t>& scratch) {
  if (inputs.size() != c.n_inputs() || outputs.size() != c.outputs().size()) {
    throw std::invalid_argument("evaluate_words: buffer size mismatch");
  }
  scratch.resize(c.size());
  const auto& gates = c.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    switch (g.kind) {
    case GateKind::Input:
      scratch[i] = inputs[g.a];
      break;
    case GateKind::One:
      scratch[i] = ~std::uint64_t{0};
      break;
    case GateKind::Xor:
      scratch[i] = scratch[g.a] ^ scratch[g.b];
      break;
    case GateKind::And:
      scratch[i] = scratch[g.a] & scratch[g.b];
      break;
    }
  }
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    outputs[k] = scratch[c.outputs()[k]];
  }
}

std::vector<bool> evaluate(const Circuit& c, const std::vector<bool>& assignment) {
  if (assignment.size() != c.n_inputs()) {
    throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) + " bits, circuit has " +
                                std::to_string(c.n_inputs()) + " inputs");
  }
  std::vector<std::uint64_t> in(assignment.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    in[i] = assignment[i] ? 1 : 0;
  }
  std::vector<std::uint64_t> out(c.outputs().size());
  std::vector<std::uint64_t> scratch;
  evaluate_words(c, in, out, scratch);
  std::vector<bool> result(out.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    result[k] = (out[k] & 1U) != 0;
  }
  return result;
}

TruthTable::TruthTable(std::size_t n_vars) : n_vars_(n_vars), bits_(((std::size_t{1} << n_vars) + 63) / 64, 0) {}

std::string TruthTable::to_string() const {
  std::string s(size(), '0');
  for (std::size_t k = 0; k < size(); ++k) {
    if ((*this)[k]) {
      s[k] = '1';
    }
  }
  return s;
}

std::vector<TruthTable> truth_table(const Circuit& c, std::size_t limit) {
  const auto n = c.n_inputs();
  if (n > limit) {
    throw std::invalid_argument("truth table of " + std::to_string(n) + " inputs exceeds limit " +
                                std::to_string(limit));
  }
  std::vector<TruthTable> tables(c.outputs().size(), TruthTable(n));
  const std::size_t rows = std::size_t{1} << n;
  const std::size_t blocks = (rows + 63) / 64;

  // Inputs 0..5 vary inside a word; the rest are constant per block.
  constexpr std::uint64_t lane_patterns[6] = {0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
                                              0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};
  std::vector<std::uint64_t> in(n);
  std::vector<std::uint64_t> out(c.outputs().size());
  std::vector<std::uint64_t> scratch;
  const std::uint64_t valid = rows >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rows) - 1;
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    for (std::size_t i = 0; i < n; ++i) {
      in[i] = i < 6 ? lane_patterns[i] : (((blk >> (i - 6)) & 1U) ? ~std::uint64_t{0} : 0);
    }
    evaluate_words(c, in, out, scratch);
    for (std::size_t k = 0; k < out.size(); ++k) {
      tables[k].words()[blk] = out[k] & valid;
    }
  }
  return tables;
}

Circuit random_circuit(std::size_t n, std::size_t m_and, double xor_density, std::uint64_t seed) {
  if (n == 0) {
    throw std::invalid_argument("random_circuit needs at least one input");
  }
  if (!(xor_density >= 0.0 && xor_density <= 1.0)) {
    throw std::invalid_argument("xor_density must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  const auto coin = [&rng](double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; };

  Circuit c(n);
  std::vector<GateId> signals;
  for (std::size_t i = 0; i < n; ++i) {
    signals.push_back(c.input(i));
  }
  GateId one = 0;
  bool have_one = false;

  const auto combination = [&]() {
    std::vector<GateId> terms;
    for (auto s : signals) {
      if (coin(xor_density)) {
        terms.push_back(s);
      }
    }
    const bool constant = coin(0.5);
    if (terms.empty()) {
      terms.push_back(signals[rng() % signals.size()]);
    }
    GateId acc = terms.front();
    for (std::size_t k = 1; k < terms.size(); ++k) {
      acc = c.add_xor(acc, terms[k]);
    }
    if (constant) {
      if (!have_one) {
        one = c.add_one();
        have_one = true;
      }
      acc = c.add_xor(acc, one);
    }
    return acc;
  };

  for (std::size_t i = 0; i < m_and; ++i) {
    const auto left = combination();
    const auto right = combination();
    signals.push_back(c.add_and(left, right));
  }
  c.add_output(combination());
  return c;
}

} // namespace amc
