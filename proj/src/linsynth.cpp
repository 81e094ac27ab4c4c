#include "amc/linsynth.hpp"

#include "subset_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace amc {

Signal AdditiveCircuit::variable(std::size_t i) const {
  if (i >= n_vars_) {
    throw std::out_of_range("variable index out of range");
  }
  return static_cast<Signal>(i);
}

Signal AdditiveCircuit::add(Signal a, Signal b) {
  const auto next = signal_count();
  if (a >= next || b >= next) {
    throw std::logic_error("addition operand refers to an undefined signal");
  }
  if (a == b) {
    throw std::logic_error("addition of a signal to itself");
  }
  steps_.push_back({a, b});
  return static_cast<Signal>(next);
}

Signal AdditiveCircuit::sum(std::span<const Signal> terms) {
  if (terms.empty()) {
    return zero_signal;
  }
  Signal acc = terms.front();
  for (auto t : terms.subspan(1)) {
    acc = add(acc, t);
  }
  return acc;
}

void AdditiveCircuit::add_output(Signal s) {
  if (s != zero_signal && s >= signal_count()) {
    throw std::logic_error("output refers to an undefined signal");
  }
  outputs_.push_back(s);
}

BooleanMatrix AdditiveCircuit::to_matrix() const {
  BooleanMatrix result(outputs_.size(), n_vars_);
  std::vector<std::uint64_t> value(signal_count());
  for (std::size_t base = 0; base < n_vars_; base += 64) {
    // Lane l of every word carries the evaluation on e_{base + l}.
    std::fill(value.begin(), value.begin() + static_cast<std::ptrdiff_t>(n_vars_), 0);
    for (std::size_t l = 0; l < 64 && base + l < n_vars_; ++l) {
      value[base + l] = std::uint64_t{1} << l;
    }
    for (std::size_t k = 0; k < steps_.size(); ++k) {
      value[n_vars_ + k] = value[steps_[k].a] ^ value[steps_[k].b];
    }
    for (std::size_t r = 0; r < outputs_.size(); ++r) {
      if (outputs_[r] != zero_signal) {
        result.row(r)[base / 64] = value[outputs_[r]];
      }
    }
  }
  return result;
}

std::optional<std::size_t> AdditiveCircuit::first_mismatch(const BooleanMatrix& a) const {
  if (a.cols() != n_vars_ || a.rows() != outputs_.size()) {
    throw std::invalid_argument("additive circuit shape does not match the matrix");
  }
  const auto got = to_matrix();
  std::optional<std::size_t> first;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto want = a.row(r);
    const auto have = got.row(r);
    for (std::size_t w = 0; w < want.size(); ++w) {
      if (const auto diff = want[w] ^ have[w]; diff != 0) {
        const auto col = w * 64 + static_cast<std::size_t>(std::countr_zero(diff));
        if (!first || col < *first) {
          first = col;
        }
        break;
      }
    }
  }
  return first;
}

std::string_view method_name(Method m) {
  switch (m) {
  case Method::Naive:
    return "naive";
  case Method::Grouped:
    return "grouped";
  case Method::Nechiporuk:
    return "nechiporuk";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (auto m : {Method::Naive, Method::Grouped, Method::Nechiporuk}) {
    if (method_name(m) == name) {
      return m;
    }
  }
  return std::nullopt;
}

void validate_params(std::size_t m, std::size_t n, const SynthParams& params) {
  if (params.method == Method::Naive) {
    return;
  }
  if (params.s < 1 || params.s > n || params.s > 63) {
    throw std::invalid_argument("group width s=" + std::to_string(params.s) + " must lie in [1, min(n, 63)] for n=" +
                                std::to_string(n));
  }
  if (params.method == Method::Nechiporuk) {
    // s < log2 m, i.e. 2^s < m.
    if (m > 2 && (std::uint64_t{1} << params.s) >= m) {
      throw std::invalid_argument("group width s=" + std::to_string(params.s) + " violates s < log2 m for m=" +
                                  std::to_string(m));
    }
    if (params.p < 1 || params.p > m) {
      throw std::invalid_argument("section height p=" + std::to_string(params.p) + " must lie in [1, " +
                                  std::to_string(m) + "]");
    }
  }
}

double construction_cost_bound(std::size_t m, std::size_t n, std::size_t s, std::size_t p, std::size_t active_square) {
  const double S = static_cast<double>(s);
  const double two_s = std::ldexp(1.0, static_cast<int>(s));
  const auto groups = static_cast<double>((n + s - 1) / s);
  const auto sections = static_cast<double>((m + p - 1) / p);
  return static_cast<double>(n) * two_s / S + static_cast<double>(active_square) / (2.0 * S) +
         static_cast<double>(m) * static_cast<double>(p) + sections * two_s * groups;
}

std::size_t naive_cost(const BooleanMatrix& a) {
  std::size_t total = 0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto w = a.row_weight(r);
    total += w > 0 ? w - 1 : 0;
  }
  return total;
}

AdditiveCircuit naive_synthesize(const BooleanMatrix& a) {
  AdditiveCircuit ac(a.cols());
  std::vector<Signal> terms;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    terms.clear();
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (a.get(r, c)) {
        terms.push_back(static_cast<Signal>(c));
      }
    }
    ac.add_output(ac.sum(terms));
  }
  return ac;
}

GroupSums group_sums(std::size_t n, std::size_t s) {
  if (s < 1 || s > n) {
    throw std::invalid_argument("group_sums requires 1 <= s <= n");
  }
  if (s > max_full_table_width) {
    throw std::invalid_argument("full subset-sum table wider than " + std::to_string(max_full_table_width));
  }
  GroupSums result{AdditiveCircuit(n), {}};
  detail::SubsetSumTable table(result.circuit, n, s);
  result.table.resize(table.groups());
  for (std::size_t g = 0; g < table.groups(); ++g) {
    const std::uint64_t masks = std::uint64_t{1} << table.group_width(g);
    auto& row = result.table[g];
    row.resize(masks);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
      row[mask] = table.get(g, mask);
    }
  }
  return result;
}

namespace detail {

std::vector<ReducedEntry> reduce_matrix(const BooleanMatrix& a, SubsetSumTable& table) {
  std::vector<ReducedEntry> entries;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t g = 0; g < table.groups(); ++g) {
      const auto mask = a.extract(r, g * table.width(), table.group_width(g));
      if (mask != 0) {
        entries.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(g), mask, zero_signal});
      }
    }
  }
  std::vector<std::pair<std::uint32_t, std::uint64_t>> columns;
  columns.reserve(entries.size());
  for (const auto& e : entries) {
    columns.emplace_back(e.group, e.mask);
  }
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
  for (const auto& [g, mask] : columns) {
    table.get(g, mask);
  }
  for (auto& e : entries) {
    e.signal = table.get(e.group, e.mask);
  }
  return entries;
}

SynthReport base_report(const BooleanMatrix& a, Method method, std::size_t s, std::size_t p) {
  SynthReport r;
  r.method = method;
  r.m = a.rows();
  r.n = a.cols();
  r.s = s;
  r.p = p;
  r.weight = weight(a);
  const auto as = active_square(a);
  r.active_square = as.value;
  r.window = as.window;
  r.cost_naive = naive_cost(a);
  for (std::size_t k = 0; k < a.rows(); ++k) {
    r.nonzero_rows += a.row_weight(k) > 0 ? 1 : 0;
  }
  r.cost_formula = construction_cost_bound(r.m, r.n, std::max<std::size_t>(s, 1), std::max<std::size_t>(p, 1),
                                      r.active_square);
  return r;
}

} // namespace detail

AdditiveCircuit grouped_synthesize(const BooleanMatrix& a, std::size_t s) {
  if (s < 1 || s > a.cols() || s > 63) {
    throw std::invalid_argument("grouped_synthesize requires 1 <= s <= min(n, 63)");
  }
  AdditiveCircuit ac(a.cols());
  detail::SubsetSumTable table(ac, a.cols(), s);
  const auto entries = detail::reduce_matrix(a, table);
  std::vector<Signal> terms;
  std::size_t e = 0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    terms.clear();
    for (; e < entries.size() && entries[e].row == r; ++e) {
      terms.push_back(entries[e].signal);
    }
    ac.add_output(ac.sum(terms));
  }
  return ac;
}

SynthResult synthesize(const BooleanMatrix& a, const SynthParams& params) {
  validate_params(a.rows(), a.cols(), params);
  if (params.method == Method::Nechiporuk) {
    return nechiporuk_synthesize(a, params);
  }
  SynthResult result;
  if (params.method == Method::Naive) {
    result.circuit = naive_synthesize(a);
    result.report = detail::base_report(a, Method::Naive, 1, a.rows());
    result.report.reduced_weight = result.report.weight;
  } else {
    result.circuit = grouped_synthesize(a, params.s);
    result.report = detail::base_report(a, Method::Grouped, params.s, a.rows());
    std::size_t reduced = 0;
    const auto groups = (a.cols() + params.s - 1) / params.s;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t g = 0; g < groups; ++g) {
        reduced += a.extract(r, g * params.s, std::min(params.s, a.cols() - g * params.s)) != 0 ? 1 : 0;
      }
    }
    result.report.reduced_weight = reduced;
  }
  result.report.cost_actual = result.circuit.cost();
  result.report.verified = !result.circuit.first_mismatch(a).has_value();
  return result;
}

SynthParams default_params(std::size_t m, std::size_t n) {
  if (m <= 4 || n == 0) {
    return {Method::Naive, 1, std::max<std::size_t>(m, 1)};
  }
  const double lg = std::log2(static_cast<double>(m));
  const auto s_max = std::max<long long>(1, static_cast<long long>(std::ceil(lg)) - 1);
  auto s = std::clamp<long long>(std::llround(lg - 3.0 * std::log2(lg)), 1, s_max);
  s = std::min<long long>(s, static_cast<long long>(n));
  const auto p = std::clamp<long long>(std::llround(static_cast<double>(m) / (lg * lg)), 1,
                                       static_cast<long long>(m));
  return {Method::Nechiporuk, static_cast<std::size_t>(s), static_cast<std::size_t>(p)};
}

std::size_t grouped_default_width(std::size_t m, std::size_t n) {
  if (m <= 2 || n == 0) {
    return 1;
  }
  const double lg = std::log2(static_cast<double>(m));
  const auto s = std::llround(lg - std::log2(lg));
  return static_cast<std::size_t>(std::clamp<long long>(s, 1, std::min<long long>(static_cast<long long>(n), 20)));
}

Circuit specialize_to_xor(const AdditiveCircuit& ac) {
  Circuit c(ac.n_vars());
  std::vector<GateId> gate_of(ac.signal_count());
  for (std::size_t i = 0; i < ac.n_vars(); ++i) {
    gate_of[i] = c.input(i);
  }
  for (std::size_t k = 0; k < ac.steps().size(); ++k) {
    const auto& st = ac.steps()[k];
    gate_of[ac.n_vars() + k] = c.add_xor(gate_of[st.a], gate_of[st.b]);
  }
  std::vector<bool> claimed(c.size(), false);
  std::optional<GateId> zero;
  for (std::size_t r = 0; r < ac.outputs().size(); ++r) {
    const auto s = ac.outputs()[r];
    GateId g = 0;
    if (s == zero_signal) {
      if (!zero) {
        const auto one = c.add_one("one");
        zero = c.add_xor(one, one, "zero");
      }
      g = *zero;
    } else {
      g = gate_of[s];
      if (!ac.is_variable(s) && !claimed[g]) {
        c.rename(g, "y" + std::to_string(r));
        claimed[g] = true;
      }
    }
    c.add_output(g);
  }
  return c;
}

} // namespace amc
