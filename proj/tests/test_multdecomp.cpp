#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "amc/errors.hpp"
#include "amc/multdecomp.hpp"
#include "oracles.hpp"

#include <json.hpp>

using amc::Circuit;
using amc::Method;

namespace {

// (x0 + x1) x2 + x0 + 1
Circuit worked_example() {
  return amc::parse_circuit(".inputs 3\n"
                            "a = XOR x0 x1\n"
                            "g = AND a x2\n"
                            "b = XOR g x0\n"
                            "one = ONE\n"
                            "f = XOR b one\n"
                            ".outputs f\n");
}

std::string row_string(const amc::BooleanMatrix& a, std::size_t r) {
  std::string s;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    s.push_back(a.get(r, c) ? '1' : '0');
  }
  return s;
}

void check_skeleton_semantics(const Circuit& c) {
  const auto d = amc::decompose(c);
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << c.n_inputs()); ++k) {
    const auto x = oracle::assignment(k, c.n_inputs());
    CHECK(oracle::run_skeleton(d, x) == oracle::evaluate(c, x)[0]);
  }
}

} // namespace

TEST_CASE("decompose single AND") {
  Circuit c(2);
  c.add_output(c.add_and(0, 1));
  const auto d = amc::decompose(c);
  CHECK(d.skeleton.M == 1);
  CHECK(d.matrix.matrix.rows() == 3);
  CHECK(d.matrix.matrix.cols() == 3);
  CHECK(row_string(d.matrix.matrix, 0) == "100");
  CHECK(row_string(d.matrix.matrix, 1) == "010");
  CHECK(row_string(d.matrix.matrix, 2) == "001");
  CHECK(d.matrix.const_bits == std::vector<bool>{false, false, false});
  CHECK(amc::satisfies_precedence(d));
}

TEST_CASE("decompose the worked example") {
  const auto d = amc::decompose(worked_example());
  CHECK(d.skeleton.M == 1);
  CHECK(row_string(d.matrix.matrix, 0) == "1100");
  CHECK(row_string(d.matrix.matrix, 1) == "0010");
  CHECK(row_string(d.matrix.matrix, 2) == "1001");
  CHECK(d.matrix.const_bits == std::vector<bool>{false, false, true});
  check_skeleton_semantics(worked_example());
}

TEST_CASE("decompose a pure XOR chain") {
  Circuit c(5);
  amc::GateId acc = 0;
  for (std::size_t i = 1; i < 5; ++i) {
    acc = c.add_xor(acc, static_cast<amc::GateId>(i));
  }
  c.add_output(acc);
  const auto d = amc::decompose(c);
  CHECK(d.skeleton.M == 0);
  CHECK(d.matrix.matrix.rows() == 1);
  CHECK(row_string(d.matrix.matrix, 0) == "11111");
}

TEST_CASE("flattening cancels duplicated terms") {
  // h = (x0 + x1) + (x1 + x2) = x0 + x2; the shared cone feeds two places.
  const auto c = amc::parse_circuit(".inputs 3\n"
                                    "u = XOR x0 x1\n"
                                    "v = XOR x1 x2\n"
                                    "w = XOR u v\n"
                                    "k = ONE\n"
                                    "z = XOR k k\n"
                                    "g = AND w z\n"
                                    "f = XOR g u\n"
                                    ".outputs f\n");
  const auto d = amc::decompose(c);
  CHECK(row_string(d.matrix.matrix, 0) == "1010");
  CHECK(row_string(d.matrix.matrix, 1) == "0000");
  CHECK(row_string(d.matrix.matrix, 2) == "1101");
  CHECK(d.matrix.const_bits == std::vector<bool>{false, false, false});
  check_skeleton_semantics(c);
}

TEST_CASE("decomposition of random DAGs") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto c = oracle::random_dag(1 + seed % 8, 30, seed % 12, seed);
    const auto d = amc::decompose(c);
    CHECK(d.skeleton.M == amc::stats(c).mult_complexity);
    CHECK(amc::satisfies_precedence(d));
    check_skeleton_semantics(c);
  }
}

TEST_CASE("multi-output circuits are rejected") {
  Circuit c(2);
  c.add_output(0);
  c.add_output(1);
  CHECK_THROWS_AS(amc::decompose(c), amc::UnsupportedInput);
  CHECK_THROWS_AS(amc::optimize(c), amc::UnsupportedInput);
}

TEST_CASE("skeleton active-square bound") {
  CHECK_FALSE(amc::skeleton_active_square_bound(0, 3).has_value());
  CHECK(*amc::skeleton_active_square_bound(1, 2) == doctest::Approx(7.5));
  CHECK(*amc::skeleton_active_square_bound(4, 4) == doctest::Approx(72.0));
}

TEST_CASE("recompose") {
  SUBCASE("single AND round trip") {
    Circuit c(2);
    c.add_output(c.add_and(0, 1));
    const auto d = amc::decompose(c);
    const auto lin = amc::naive_synthesize(d.matrix.matrix);
    const auto r = amc::recompose(d.skeleton, lin);
    CHECK(amc::stats(r).mult_complexity == 1);
    CHECK(amc::stats(r).add_complexity == 0);
    CHECK(oracle::equivalent(c, r));
  }
  SUBCASE("worked example is equivalent on all 8 assignments") {
    const auto c = worked_example();
    const auto d = amc::decompose(c);
    const auto lin = amc::naive_synthesize(d.matrix.matrix);
    const auto r = amc::recompose(d.skeleton, lin);
    CHECK(oracle::truth_tables(r) == oracle::truth_tables(c));
    CHECK(amc::stats(r).total_gates == amc::recomposed_gate_count(d.skeleton, lin));
    // lin: x0+x1 and x0+g1 (2 steps), 1 AND, 1 constant.
    CHECK(amc::stats(r).total_gates == 4);
  }
  SUBCASE("a linear circuit that needs g early deadlocks") {
    const auto d = amc::decompose(worked_example());
    // Row h_1 computed as (x0 + g1) + (x1 + g1): right function, wrong wave.
    amc::AdditiveCircuit lin(4);
    const auto a = lin.add(0, 3);
    const auto b = lin.add(1, 3);
    lin.add_output(lin.add(a, b));
    lin.add_output(2);
    lin.add_output(lin.add(0, 3));
    CHECK(lin.first_mismatch(d.matrix.matrix) == std::nullopt);
    CHECK_THROWS_AS(amc::recompose(d.skeleton, lin), std::logic_error);
  }
  SUBCASE("constant rows") {
    // AND of ONE with (x0 + x0): h rows are the constants 1 and 0.
    const auto c = amc::parse_circuit(".inputs 1\nk = ONE\nz = XOR x0 x0\ng = AND k z\n.outputs g\n");
    const auto d = amc::decompose(c);
    const auto lin = amc::naive_synthesize(d.matrix.matrix);
    const auto r = amc::recompose(d.skeleton, lin);
    CHECK(oracle::equivalent(c, r));
    CHECK(amc::stats(r).mult_complexity == 1);
    CHECK(amc::stats(r).total_gates == amc::recomposed_gate_count(d.skeleton, lin));
  }
}

TEST_CASE("optimize preserves function and AND count") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto n = 2 + seed % 9;
    const auto c = seed % 2 ? amc::random_circuit(n, 1 + seed % 20, 0.5, seed) : oracle::random_dag(n, 60, 10, seed);
    for (bool tune : {false, true}) {
      amc::OptimizeOptions options;
      options.tune = tune;
      const auto res = amc::optimize(c, options);
      CHECK(res.report.synth.verified);
      CHECK(res.report.equivalence.equal);
      CHECK(oracle::equivalent(c, res.circuit));
      CHECK(amc::stats(res.circuit).mult_complexity == amc::stats(c).mult_complexity);
      const auto d = amc::decompose(c);
      const auto lin = amc::synthesize(d.matrix.matrix, {res.report.synth.method, res.report.synth.s,
                                                         res.report.synth.p})
                           .circuit;
      CHECK(res.report.optimized_total == amc::recomposed_gate_count(d.skeleton, lin));
      // Cancellation-free synthesis reproduces the skeleton exactly.
      const auto again = amc::decompose(res.circuit);
      CHECK(again.skeleton.M == d.skeleton.M);
      CHECK(again.matrix.matrix == d.matrix.matrix);
      CHECK(again.matrix.const_bits == d.matrix.const_bits);
    }
  }
}

TEST_CASE("optimize an affine circuit") {
  const auto c = amc::random_circuit(9, 0, 0.5, 2);
  const auto res = amc::optimize(c);
  CHECK(amc::stats(res.circuit).mult_complexity == 0);
  CHECK(res.report.M == 0);
  CHECK(res.report.synth.method == Method::Naive);
  CHECK_FALSE(res.report.theorem_reference_value.has_value());
  CHECK(oracle::equivalent(c, res.circuit));
}

TEST_CASE("optimize with explicit methods") {
  const auto c = amc::random_circuit(10, 30, 0.5, 12);
  for (auto params : {amc::SynthParams{Method::Naive, 1, 61}, amc::SynthParams{Method::Grouped, 3, 61},
                      amc::SynthParams{Method::Nechiporuk, 2, 8}}) {
    amc::OptimizeOptions options;
    options.params = params;
    const auto res = amc::optimize(c, options);
    CHECK(res.report.synth.method == params.method);
    CHECK(res.report.equivalence.equal);
    CHECK(amc::stats(res.circuit).mult_complexity == 30);
  }
  amc::OptimizeOptions bad;
  bad.params = amc::SynthParams{Method::Nechiporuk, 9, 8};
  CHECK_THROWS_AS(amc::optimize(c, bad), std::invalid_argument);
}

TEST_CASE("optimize beyond the exhaustive limit samples") {
  const auto c = amc::random_circuit(20, 40, 0.5, 4);
  amc::OptimizeOptions options;
  options.samples = 20000;
  const auto res = amc::optimize(c, options);
  CHECK(res.report.equivalence.mode == amc::VerdictMode::Sampled);
  CHECK(res.report.equivalence.equal);
  CHECK(res.report.equivalence.samples == 20000);
}

TEST_CASE("optimize report JSON") {
  const auto res = amc::optimize(amc::random_circuit(6, 8, 0.5, 1));
  const auto j = nlohmann::json::parse(amc::to_json(res.report));
  CHECK(j["M"] == 8);
  CHECK(j["original_total"] == res.report.original_total);
  CHECK(j["optimized_total"] == res.report.optimized_total);
  // 8 (8 + 12) / (2 log2 8) = 160 / 6.
  CHECK(j["theorem_reference_value"].get<double>() == doctest::Approx(160.0 / 6.0));
  CHECK(j["m"] == 17);
  CHECK(j["n"] == 14);
  CHECK(j.contains("tool_version"));
  CHECK(j["equivalence"]["equal"] == true);
}
