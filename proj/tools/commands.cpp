#include "commands.hpp"

#include "amc/bitmatrix.hpp"
#include "amc/circuit.hpp"
#include "amc/errors.hpp"
#include "amc/linsynth.hpp"
#include "amc/multdecomp.hpp"
#include "amc/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace amc::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << text;
}

struct MethodFlags {
  std::string method = "auto";
  std::size_t s = 0;
  std::size_t p = 0;
};

void add_method_flags(CLI::App& cmd, MethodFlags& flags) {
  cmd.add_option("--method", flags.method, "naive, grouped, nechiporuk, auto or tuned")
      ->check(CLI::IsMember({"naive", "grouped", "nechiporuk", "auto", "tuned"}));
  cmd.add_option("--s", flags.s, "group width (grouped, nechiporuk)");
  cmd.add_option("--p", flags.p, "section height (nechiporuk)");
}

// Turns flags into concrete parameters for an m x n operator. Unset s and p
// fall back to the method's defaults.
SynthParams resolve_params(const MethodFlags& flags, const BooleanMatrix& a) {
  const auto m = a.rows();
  const auto n = a.cols();
  if (flags.method == "tuned") {
    return tune_params(a);
  }
  if (flags.method == "naive") {
    return {Method::Naive, 1, m};
  }
  if (flags.method == "grouped") {
    return {Method::Grouped, flags.s ? flags.s : grouped_default_width(m, n), m};
  }
  auto params = default_params(m, n);
  if (flags.method == "nechiporuk" && params.method != Method::Nechiporuk) {
    params = {Method::Nechiporuk, 1, m};
  }
  if (flags.method == "auto" && params.method != Method::Nechiporuk && (flags.s || flags.p)) {
    params = {Method::Nechiporuk, 1, m};
  }
  if (params.method == Method::Nechiporuk) {
    params.s = flags.s ? flags.s : params.s;
    params.p = flags.p ? flags.p : params.p;
  }
  return params;
}

std::string witness_bits(const std::vector<bool>& w) {
  std::string s;
  for (bool b : w) {
    s.push_back(b ? '1' : '0');
  }
  return s;
}

int cmd_synth(const std::string& input, const MethodFlags& flags, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  const auto a = parse_matrix(read_file(input));
  const auto result = synthesize(a, resolve_params(flags, a));
  const auto verdict = check_linear(a, result.circuit);
  if (!verdict.equal) {
    fmt::print(err, "internal error: synthesized circuit is wrong on unit vector {}\n", witness_bits(*verdict.witness));
    out << to_json(result.report) << '\n';
    return verification_failure;
  }
  const auto violations = audit_costs(result.report);
  if (!out_path.empty()) {
    write_file(out_path, serialize_circuit(specialize_to_xor(result.circuit)));
  }
  out << to_json(result.report) << '\n';
  if (!violations.empty()) {
    for (const auto& v : violations) {
      fmt::print(err, "audit violation: {}\n", v);
    }
    return verification_failure;
  }
  return ok;
}

struct CheckFlags {
  std::uint64_t seed = 1;
  std::size_t samples = default_samples;
  std::size_t exhaustive_limit = default_exhaustive_limit;
};

void add_check_flags(CLI::App& cmd, CheckFlags& flags) {
  cmd.add_option("--seed", flags.seed, "seed for sampled equivalence checks");
  cmd.add_option("--samples", flags.samples, "random assignments beyond the exhaustive limit");
  cmd.add_option("--exhaustive-limit", flags.exhaustive_limit, "largest input count checked exhaustively")
      ->check(CLI::Range(0, 20));
}

int cmd_optimize(const std::string& input, const MethodFlags& flags, const CheckFlags& check,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
  const auto c = parse_circuit(read_file(input));
  if (c.outputs().size() != 1) {
    fmt::print(err, "unsupported: optimize handles single-output circuits, this file has {} outputs\n",
               c.outputs().size());
    return unsupported_input;
  }
  OptimizeOptions options;
  options.exhaustive_limit = check.exhaustive_limit;
  options.samples = check.samples;
  options.seed = check.seed;
  if (flags.method == "tuned") {
    options.tune = true;
  } else if (flags.method != "auto" || flags.s || flags.p) {
    options.params = resolve_params(flags, decompose(c).matrix.matrix);
  }
  const auto result = optimize(c, options);
  if (!out_path.empty()) {
    write_file(out_path, serialize_circuit(result.circuit));
  }
  out << to_json(result.report) << '\n';
  if (!result.report.synth.verified || !result.report.equivalence.equal) {
    fmt::print(err, "internal error: optimized circuit differs from the input{}\n",
               result.report.equivalence.witness
                   ? " at " + witness_bits(*result.report.equivalence.witness)
                   : std::string());
    return verification_failure;
  }
  return ok;
}

int cmd_verify(const std::string& lhs, const std::string& rhs, const CheckFlags& check, std::ostream& out) {
  const auto a = parse_circuit(read_file(lhs));
  const auto b = parse_circuit(read_file(rhs));
  const auto v = check_circuits(a, b, check.exhaustive_limit, check.samples, check.seed);
  out << to_json(v) << '\n';
  return v.equal ? ok : not_equal;
}

struct BenchFlags {
  std::vector<std::size_t> sizes{256, 1024, 4096};
  std::vector<double> densities{0.5};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::vector<std::string> methods{"all"};
  std::size_t jobs = 1;
  bool no_timing = false;
  std::string out;
};

struct BenchRow {
  std::size_t m = 0;
  std::size_t n = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
  std::string method;
  SynthReport report;
  double ratio_to_theorem = 0.0;
  double wall_time_ms = 0.0;
};

constexpr const char* bench_header =
    "m,n,density,seed,method,s,p,weight,active_square,cost_actual,cost_formula,cost_naive,ratio_to_theorem,"
    "wall_time_ms";

int cmd_bench(const BenchFlags& flags, std::ostream& out, std::ostream& err) {
  std::vector<std::string> methods;
  for (const auto& m : flags.methods) {
    if (m == "all") {
      methods.insert(methods.end(), {"naive", "grouped", "nechiporuk"});
    } else {
      methods.push_back(m);
    }
  }
  struct Instance {
    std::size_t size;
    double density;
    std::uint64_t seed;
  };
  std::vector<Instance> grid;
  for (auto size : flags.sizes) {
    for (auto d : flags.densities) {
      for (auto seed : flags.seeds) {
        grid.push_back({size, d, seed});
      }
    }
  }
  if (grid.empty() || methods.empty()) {
    fmt::print(err, "bench: empty grid\n");
    return parse_error;
  }

  // rows[i * methods + k]; filled by workers, written in grid order.
  std::vector<std::optional<BenchRow>> rows(grid.size() * methods.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      const auto& inst = grid[i];
      const auto a = random_matrix(inst.size, inst.size, inst.density, inst.seed);
      for (std::size_t k = 0; k < methods.size(); ++k) {
        MethodFlags mf;
        mf.method = methods[k];
        const auto start = std::chrono::steady_clock::now();
        const auto result = synthesize(a, resolve_params(mf, a));
        const auto stop = std::chrono::steady_clock::now();
        if (!result.report.verified || !audit_costs(result.report).empty()) {
          continue;
        }
        BenchRow row;
        row.m = a.rows();
        row.n = a.cols();
        row.density = inst.density;
        row.seed = inst.seed;
        row.method = methods[k];
        row.report = result.report;
        const auto S = static_cast<double>(result.report.active_square);
        row.ratio_to_theorem =
            S > 0 ? static_cast<double>(result.report.cost_actual) * std::log2(static_cast<double>(row.m)) / S : 0.0;
        row.wall_time_ms =
            flags.no_timing ? 0.0 : std::chrono::duration<double, std::milli>(stop - start).count();
        rows[i * methods.size() + k] = std::move(row);
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::max<std::size_t>(flags.jobs, 1); ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) {
    t.join();
  }

  std::ostringstream csv;
  csv << bench_header << '\n';
  std::size_t excluded = 0;
  // (size, method) -> (ratio sum, count), in first-seen order.
  std::vector<std::pair<std::pair<std::size_t, std::string>, std::pair<double, std::size_t>>> summary;
  for (const auto& row : rows) {
    if (!row) {
      ++excluded;
      continue;
    }
    const auto& r = row->report;
    csv << fmt::format("{},{},{:.6f},{},{},{},{},{},{},{},{:.3f},{},{:.6f},{:.3f}\n", row->m, row->n, row->density,
                       row->seed, row->method, r.s, r.p, r.weight, r.active_square, r.cost_actual, r.cost_formula,
                       r.cost_naive, row->ratio_to_theorem, row->wall_time_ms);
    const auto key = std::make_pair(row->m, row->method);
    auto it = std::find_if(summary.begin(), summary.end(), [&](const auto& e) { return e.first == key; });
    if (it == summary.end()) {
      summary.push_back({key, {0.0, 0}});
      it = std::prev(summary.end());
    }
    it->second.first += row->ratio_to_theorem;
    ++it->second.second;
  }
  if (flags.out.empty() || flags.out == "-") {
    out << csv.str();
  } else {
    write_file(flags.out, csv.str());
  }
  for (const auto& [key, acc] : summary) {
    fmt::print(flags.out.empty() || flags.out == "-" ? err : out,
               "summary m={} method={} rows={} mean_ratio_to_theorem={:.6f}\n", key.first, key.second, acc.second,
               acc.first / static_cast<double>(acc.second));
  }
  if (excluded != 0) {
    fmt::print(err, "bench: {} unverified runs excluded\n", excluded);
    return verification_failure;
  }
  return ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthesis of XOR/AND circuits: linear operators and multiplicative skeletons", "amc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);

  std::string input;
  std::string second;
  std::string out_path;
  MethodFlags mflags;
  CheckFlags cflags;
  BenchFlags bflags;

  auto* synth = app.add_subcommand("synth", "synthesize an XOR circuit for a matrix file");
  synth->add_option("matrix", input, "matrix file")->required();
  add_method_flags(*synth, mflags);
  synth->add_option("--out", out_path, "write the XOR circuit here");

  auto* opt = app.add_subcommand("optimize", "re-synthesize the linear part of a single-output circuit");
  opt->add_option("circuit", input, "circuit file")->required();
  add_method_flags(*opt, mflags);
  add_check_flags(*opt, cflags);
  opt->add_option("--out", out_path, "write the optimized circuit here");

  auto* ver = app.add_subcommand("verify", "check two circuit files for equivalence");
  ver->add_option("lhs", input, "first circuit")->required();
  ver->add_option("rhs", second, "second circuit")->required();
  add_check_flags(*ver, cflags);

  auto* bench = app.add_subcommand("bench", "sweep random square matrices and write CSV rows");
  bench->add_option("--sizes", bflags.sizes, "m = n values")->delimiter(',');
  bench->add_option("--densities", bflags.densities, "densities")->delimiter(',');
  bench->add_option("--seeds", bflags.seeds, "seeds")->delimiter(',');
  bench->add_option("--methods", bflags.methods, "all, naive, grouped, nechiporuk, auto or tuned")
      ->delimiter(',')
      ->check(CLI::IsMember({"all", "naive", "grouped", "nechiporuk", "auto", "tuned"}));
  bench->add_option("--jobs", bflags.jobs, "worker threads");
  bench->add_flag("--no-timing", bflags.no_timing, "write 0 for wall_time_ms");
  bench->add_option("--out", bflags.out, "CSV path, '-' for stdout");

  std::size_t gm = 0;
  std::size_t gn = 0;
  double density = 0.5;
  std::uint64_t seed = 1;
  std::size_t ands = 0;
  auto* genm = app.add_subcommand("gen-matrix", "write a random matrix file");
  genm->add_option("--m", gm)->required();
  genm->add_option("--n", gn)->required();
  genm->add_option("--density", density)->check(CLI::Range(0.0, 1.0));
  genm->add_option("--seed", seed);
  genm->add_option("--out", out_path)->required();

  auto* genc = app.add_subcommand("gen-circuit", "write a random single-output circuit file");
  genc->add_option("--n", gn)->required();
  genc->add_option("--and", ands, "number of AND gates")->required();
  genc->add_option("--xor-density", density)->check(CLI::Range(0.0, 1.0));
  genc->add_option("--seed", seed);
  genc->add_option("--out", out_path)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const auto code = app.exit(e, out, err);
    return code == 0 ? ok : parse_error;
  }

  try {
    if (*synth) {
      return cmd_synth(input, mflags, out_path, out, err);
    }
    if (*opt) {
      return cmd_optimize(input, mflags, cflags, out_path, out, err);
    }
    if (*ver) {
      return cmd_verify(input, second, cflags, out);
    }
    if (*bench) {
      if (bflags.out.empty()) {
        bflags.out = "-";
      }
      return cmd_bench(bflags, out, err);
    }
    if (*genm) {
      write_file(out_path, serialize_matrix(random_matrix(gm, gn, density, seed)));
      return ok;
    }
    if (*genc) {
      write_file(out_path, serialize_circuit(random_circuit(gn, ands, density, seed)));
      return ok;
    }
  } catch (const ParseError& e) {
    fmt::print(err, "parse error: {}\n", e.what());
    return parse_error;
  } catch (const UnsupportedInput& e) {
    fmt::print(err, "unsupported: {}\n", e.what());
    return unsupported_input;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "invalid argument: {}\n", e.what());
    return parse_error;
  } catch (const std::runtime_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return parse_error;
  }
  return ok;
}

} // namespace amc::cli
