#include "amc/errors.hpp"
#include "amc/linsynth.hpp"
#include "amc/multdecomp.hpp"
#include "amc/verify.hpp"

#include <cmath>
#include <json.hpp>

namespace amc {

namespace {

using json = nlohmann::ordered_json;

json synth_object(const SynthReport& r) {
  json j;
  j["method"] = method_name(r.method);
  j["m"] = r.m;
  j["n"] = r.n;
  j["s"] = r.s;
  j["p"] = r.p;
  j["weight"] = r.weight;
  j["active_square"] = r.active_square;
  j["window"] = r.window;
  j["cost_actual"] = r.cost_actual;
  j["cost_formula"] = r.cost_formula;
  j["cost_formula_ceil"] = static_cast<std::uint64_t>(std::ceil(r.cost_formula));
  j["cost_naive"] = r.cost_naive;
  j["verified"] = r.verified;
  j["reduced_weight"] = r.reduced_weight;
  // weight(B) s / S(A): measured, not bounded.
  j["reduced_weight_ratio"] = r.active_square == 0 ? 0.0
                                                   : static_cast<double>(r.reduced_weight * r.s) /
                                                         static_cast<double>(r.active_square);
  j["pairing_additions"] = r.pairing_additions;
  j["nonzero_rows"] = r.nonzero_rows;
  j["tool_version"] = tool_version;
  return j;
}

std::string bits(const std::vector<bool>& v) {
  std::string s(v.size(), '0');
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) {
      s[i] = '1';
    }
  }
  return s;
}

json verdict_object(const EquivalenceVerdict& v) {
  json j;
  j["mode"] = v.mode == VerdictMode::Exhaustive ? "exhaustive" : "sampled";
  j["equal"] = v.equal;
  if (v.witness) {
    j["witness"] = bits(*v.witness);
  }
  j["samples"] = v.samples;
  j["seed"] = v.seed;
  j["escape_probability"] = v.escape_probability;
  return j;
}

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

} // namespace

std::string to_json(const SynthReport& r) { return synth_object(r).dump(); }

std::string to_json(const EquivalenceVerdict& v) { return verdict_object(v).dump(); }

std::string to_json(const OptimizeReport& r) {
  auto j = synth_object(r.synth);
  j["M"] = r.M;
  j["original_total"] = r.original_total;
  j["optimized_total"] = r.optimized_total;
  j["theorem_reference_value"] = optional_number(r.theorem_reference_value);
  j["skeleton_active_square_bound"] = optional_number(r.skeleton_active_square_bound);
  j["equivalence"] = verdict_object(r.equivalence);
  return j.dump();
}

} // namespace amc
