#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "amc/errors.hpp"
#include "amc/verify.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <json.hpp>

using amc::BooleanMatrix;
using amc::Method;

TEST_CASE("check_linear") {
  SUBCASE("naive synthesis passes") {
    const auto a = amc::random_matrix(16, 16, 0.5, 4);
    const auto v = amc::check_linear(a, amc::naive_synthesize(a));
    CHECK(v.equal);
    CHECK(v.mode == amc::VerdictMode::Exhaustive);
    CHECK_FALSE(v.witness.has_value());
  }
  SUBCASE("zero matrix with an empty circuit") {
    amc::AdditiveCircuit ac(4);
    for (int k = 0; k < 3; ++k) {
      ac.add_output(amc::zero_signal);
    }
    CHECK(amc::check_linear(BooleanMatrix(3, 4), ac).equal);
  }
  SUBCASE("a corrupted step is caught with its unit vector") {
    // Row 0 = x0 + x1 + x2; rewiring the second step to x3 breaks columns 2 and 3.
    auto ac = amc::naive_synthesize(amc::parse_matrix("1 4\n1110\n"));
    ac.mutable_steps()[1].b = 3;
    const auto v = amc::check_linear(amc::parse_matrix("1 4\n1110\n"), ac);
    CHECK_FALSE(v.equal);
    REQUIRE(v.witness.has_value());
    CHECK(*v.witness == std::vector<bool>{false, false, true, false});
  }
  SUBCASE("random single-step mutations are always detected") {
    std::mt19937_64 rng(7);
    std::size_t detected = 0;
    std::size_t mutants = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const auto a = amc::random_matrix(24, 24, 0.4, seed);
      auto ac = amc::nechiporuk_synthesize(a, {Method::Nechiporuk, 2, 6}).circuit;
      if (ac.cost() == 0) {
        continue;
      }
      auto& st = ac.mutable_steps()[rng() % ac.cost()];
      const auto limit = static_cast<amc::Signal>(&st - ac.steps().data()) + ac.n_vars();
      const auto old = st.b;
      st.b = static_cast<amc::Signal>(rng() % limit);
      if (st.b == st.a) {
        continue;
      }
      ++mutants;
      bool oracle_equal = true;
      for (std::size_t j = 0; j < a.cols() && oracle_equal; ++j) {
        std::vector<bool> e(a.cols(), false);
        e[j] = true;
        oracle_equal = oracle::run_additive(ac, e) == oracle::mat_vec(a, e);
      }
      const auto v = amc::check_linear(a, ac);
      CHECK(v.equal == oracle_equal);
      if (!v.equal) {
        ++detected;
        std::vector<bool> e(a.cols(), false);
        e[std::find(v.witness->begin(), v.witness->end(), true) - v.witness->begin()] = true;
        CHECK(oracle::run_additive(ac, e) != oracle::mat_vec(a, e));
      }
      st.b = old;
    }
    CHECK(mutants > 20);
    CHECK(detected > 0);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(amc::check_linear(BooleanMatrix(2, 3), amc::naive_synthesize(BooleanMatrix(2, 4))),
                    std::invalid_argument);
  }
}

TEST_CASE("check_circuits") {
  amc::Circuit and2(2);
  and2.add_output(and2.add_and(0, 1));
  amc::Circuit xor2(2);
  xor2.add_output(xor2.add_xor(0, 1));

  SUBCASE("reflexive and exhaustive") {
    const auto v = amc::check_circuits(and2, and2);
    CHECK(v.equal);
    CHECK(v.mode == amc::VerdictMode::Exhaustive);
    CHECK(v.samples == 4);
  }
  SUBCASE("AND versus XOR differ first at (1,0)") {
    const auto v = amc::check_circuits(and2, xor2);
    CHECK_FALSE(v.equal);
    // Assignment index 1 (x0 = 1, x1 = 0) is the first row where 0 != 1.
    CHECK(*v.witness == std::vector<bool>{true, false});
    CHECK(oracle::evaluate(and2, *v.witness) != oracle::evaluate(xor2, *v.witness));
  }
  SUBCASE("sampled mode beyond the limit") {
    const auto c = amc::random_circuit(30, 20, 0.3, 5);
    auto d = amc::random_circuit(30, 20, 0.3, 5);
    const auto v = amc::check_circuits(c, d, 12, 5000, 9);
    CHECK(v.equal);
    CHECK(v.mode == amc::VerdictMode::Sampled);
    CHECK(v.samples == 5000);
    CHECK(v.escape_probability > 0.99);
    const auto e = amc::check_circuits(c, amc::random_circuit(30, 20, 0.3, 6), 12, 5000, 9);
    CHECK_FALSE(e.equal);
    CHECK(oracle::evaluate(c, *e.witness) != oracle::evaluate(amc::random_circuit(30, 20, 0.3, 6), *e.witness));
  }
  SUBCASE("exhaustive verdict matches the truth-table oracle") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const auto a = oracle::random_dag(5, 12, 4, seed);
      const auto b = oracle::random_dag(5, 12, 4, seed + 1000);
      const auto v = amc::check_circuits(a, b);
      CHECK(v.equal == oracle::equivalent(a, b));
      if (!v.equal) {
        CHECK(oracle::evaluate(a, *v.witness) != oracle::evaluate(b, *v.witness));
      }
    }
  }
  SUBCASE("arity mismatch") {
    CHECK_THROWS_AS(amc::check_circuits(and2, amc::Circuit(3)), amc::UnsupportedInput);
  }
}

TEST_CASE("audit_costs") {
  const auto a = amc::random_matrix(64, 64, 0.5, 3);
  auto r = amc::nechiporuk_synthesize(a, {Method::Nechiporuk, 3, 8}).report;
  CHECK(amc::audit_costs(r).empty());

  SUBCASE("cost above the formula is flagged") {
    r.cost_actual = static_cast<std::size_t>(r.cost_formula) + 1;
    CHECK(amc::audit_costs(r) == std::vector<std::string>{"formula_bound"});
  }
  SUBCASE("edited formula is recomputed") {
    r.cost_formula += 5.0;
    CHECK(amc::audit_costs(r) == std::vector<std::string>{"formula_recompute"});
  }
  SUBCASE("naive closed form") {
    r.cost_naive += 1;
    CHECK(amc::audit_costs(r) == std::vector<std::string>{"naive_closed_form"});
  }
  SUBCASE("pairing bound") {
    r.pairing_additions = r.reduced_weight / 2 + 1;
    CHECK(amc::audit_costs(r) == std::vector<std::string>{"pairing_bound"});
  }
  SUBCASE("unverified") {
    r.verified = false;
    CHECK(amc::audit_costs(r) == std::vector<std::string>{"unverified"});
  }
  SUBCASE("naive report for the identity") {
    CHECK(amc::audit_costs(amc::synthesize(BooleanMatrix::identity(8), {Method::Naive, 1, 8}).report).empty());
  }
}

TEST_CASE("verdict JSON") {
  amc::EquivalenceVerdict v;
  v.equal = false;
  v.witness = std::vector<bool>{true, false, true};
  v.samples = 8;
  const auto j = nlohmann::json::parse(amc::to_json(v));
  CHECK(j["mode"] == "exhaustive");
  CHECK(j["equal"] == false);
  CHECK(j["witness"] == "101");
  CHECK(j["samples"] == 8);
  CHECK(j["seed"] == 0);
  amc::EquivalenceVerdict eq;
  CHECK_FALSE(nlohmann::json::parse(amc::to_json(eq)).contains("witness"));
}
