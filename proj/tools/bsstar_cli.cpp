#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bsstar/cayley.hpp"
#include "bsstar/permutation.hpp"
#include "bsstar/tpath.hpp"
#include "bsstar/webbuilder.hpp"
#include "bsstar/witness_io.hpp"

namespace {

using namespace bsstar;

// exit codes: 0 ok, 1 usage / could not run, 2 a check failed, 3 budget ran out
constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_check_failed = 2;
constexpr int exit_budget = 3;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Uniform rank-space sampling without replacement; deterministic per seed.
std::vector<Permutation> random_triple(const CayleyGraph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::uint32_t nv = g.vertex_count();
  std::vector<std::uint32_t> picks;
  while (picks.size() < 3) {
    const std::uint32_t r = static_cast<std::uint32_t>(rng() % nv);
    bool fresh = true;
    for (const std::uint32_t p : picks) fresh = fresh && p != r;
    if (fresh) picks.push_back(r);
  }
  std::vector<Permutation> out;
  for (const std::uint32_t r : picks) out.push_back(unrank(g.n(), r));
  return out;
}

std::vector<Permutation> pick_triple(const CayleyGraph& g, const std::vector<std::string>& labels,
                                     bool have_seed, std::uint64_t seed) {
  if (!labels.empty()) {
    if (labels.size() != 3) throw usage_error("--terminals needs exactly three labels");
    std::vector<Permutation> out;
    for (const std::string& s : labels) {
      try {
        out.push_back(parse(s));
      } catch (const std::exception& e) {
        throw usage_error("bad terminal label \"" + s + "\": " + e.what());
      }
      if (out.back().n() != g.n()) {
        throw usage_error("terminal \"" + s + "\" does not match --n");
      }
    }
    return out;
  }
  if (have_seed) return random_triple(g, seed);
  throw usage_error("give --terminals or --seed");
}

int write_out(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return exit_ok;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot write " << out_path << "\n";
    return exit_usage;
  }
  f << text;
  return exit_ok;
}

int run_generate(int n, const std::string& fmt, const std::string& out) {
  if (fmt == "json") throw usage_error("generate writes --format dot or edges");
  const CayleyGraph g(n);
  std::ostringstream os;
  const std::uint32_t nv = g.vertex_count();
  if (fmt == "dot") {
    os << "graph bs" << n << " {\n";
    for (std::uint32_t u = 0; u < nv; ++u) {
      const Permutation p = unrank(n, u);
      for (const Permutation& q : g.neighbors(p)) {
        if (rank(q) > u) os << "  \"" << format(p) << "\" -- \"" << format(q) << "\";\n";
      }
    }
    os << "}\n";
  } else {
    for (std::uint32_t u = 0; u < nv; ++u) {
      const Permutation p = unrank(n, u);
      for (const Permutation& q : g.neighbors(p)) {
        if (rank(q) > u) os << format(p) << " " << format(q) << "\n";
      }
    }
  }
  return write_out(os.str(), out);
}

int run_witness(int n, const std::vector<std::string>& labels, bool have_seed, std::uint64_t seed,
                const std::string& out) {
  const CayleyGraph g(n);
  const TerminalTriple t = assign_roles(g, pick_triple(g, labels, have_seed, seed));
  const PairwiseWeb web = build_web(g, t);
  const TPathWitness w = assemble(g, web);
  const VerifyReport rep = verify_witness(g, w);
  if (!rep.pass) {
    std::cerr << "verifier rejected the built family: " << rep.first_violation << "\n";
    return exit_check_failed;
  }
  return write_out(witness_to_json(g, web, w), out);
}

int run_verify(const std::string& file) {
  std::ifstream f(file);
  if (!f) {
    std::cerr << "cannot read " << file << "\n";
    return exit_usage;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  WitnessDocument doc;
  try {
    doc = witness_from_json(ss.str());
  } catch (const std::invalid_argument& e) {
    std::cout << "[FAIL] " << e.what() << "\n";
    return exit_check_failed;
  }
  if (doc.formula != pi3_formula(doc.n)) {
    std::cout << "[FAIL] stored formula value " << doc.formula << " should be "
              << pi3_formula(doc.n) << "\n";
    return exit_check_failed;
  }
  const VerifyReport rep = reverify(doc);
  if (!rep.pass) {
    std::cout << "[FAIL] " << rep.first_violation << "\n";
    return exit_check_failed;
  }
  std::cout << "[PASS] " << doc.witness.t_paths.size()
            << " internally disjoint t-paths through {" << format(doc.web.terminals.a) << ", "
            << format(doc.web.terminals.b) << ", " << format(doc.web.terminals.c)
            << "} in dimension " << doc.n << "\n";
  return exit_ok;
}

int run_audit(int n) {
  const CayleyGraph g(n);
  const AuditReport rep = structural_audit(g);
  for (const AuditClause& clause : rep.clauses) {
    std::cout << (clause.pass ? "[PASS] " : "[FAIL] ") << clause.name << ": " << clause.detail
              << "\n";
  }
  return rep.pass ? exit_ok : exit_check_failed;
}

int run_pi3(const std::string& range, std::uint64_t seed) {
  int lo = 0, hi = 0;
  const std::size_t dots = range.find("..");
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoi(range);
    } else {
      lo = std::stoi(range.substr(0, dots));
      hi = std::stoi(range.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw usage_error("--n takes a dimension like 5 or a range like 3..8");
  }
  if (lo < 3 || hi > 9 || lo > hi) throw usage_error("--n range must sit inside 3..9");
  std::cout << " n  formula  bound  cmax  mode\n";
  for (int n = lo; n <= hi; ++n) {
    const CayleyGraph g(n);
    const BoundMode mode = n <= 4 ? BoundMode::exhaustive : BoundMode::sampled;
    const BoundReport b = upper_bound(g, mode, seed);
    std::cout << std::setw(2) << n << "  " << std::setw(7) << pi3_formula(n) << "  "
              << std::setw(5) << b.bound << "  " << std::setw(4) << b.cmax << "  "
              << (mode == BoundMode::exhaustive ? "exhaustive" : "sampled") << "\n";
  }
  return exit_ok;
}

int run_oracle(int n, const std::vector<std::string>& labels, bool have_seed, std::uint64_t seed) {
  const CayleyGraph g(n);
  const std::vector<Permutation> t = pick_triple(g, labels, have_seed, seed);
  const OracleResult res = brute_force_pi3(g, t);
  std::cout << "T = {" << format(t[0]) << ", " << format(t[1]) << ", " << format(t[2]) << "}\n";
  std::cout << "max internally disjoint t-paths: " << res.best
            << (res.exact ? "" : " (lower bound; search budget exhausted)") << "\n";
  for (const auto& path : res.family) {
    std::cout << " ";
    for (const Permutation& v : path) std::cout << " " << format(v);
    std::cout << "\n";
  }
  return res.exact ? exit_ok : exit_budget;
}

int run_bench(int max_n, std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  std::cout << " n  triples  total_ms  worst_ms  paths_each\n";
  for (int n = 3; n <= max_n; ++n) {
    const CayleyGraph g(n);
    const int rounds = 5;
    double total = 0.0, worst = 0.0;
    std::size_t paths = 0;
    for (int i = 0; i < rounds; ++i) {
      const auto t0 = clock::now();
      const TerminalTriple t =
          assign_roles(g, random_triple(g, seed + static_cast<std::uint64_t>(100 * n + i)));
      const PairwiseWeb web = build_web(g, t);
      const TPathWitness w = assemble(g, web);
      if (!verify_witness(g, w).pass) {
        std::cerr << "verifier rejected a bench run at dimension " << n << "\n";
        return exit_check_failed;
      }
      const double ms =
          std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      total += ms;
      worst = std::max(worst, ms);
      paths = w.t_paths.size();
    }
    std::cout << std::setw(2) << n << "  " << std::setw(7) << rounds << "  " << std::setw(8)
              << std::fixed << std::setprecision(1) << total << "  " << std::setw(8) << worst
              << "  " << std::setw(10) << paths << "\n";
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified internally disjoint t-path families on bubble-sort star graphs"};
  app.require_subcommand(1);

  int n = 0;
  std::vector<std::string> terminals;
  std::uint64_t seed = 0;
  std::string fmt = "edges", out, file, range = "3..8";
  int bench_n = 6;

  CLI::App* gen = app.add_subcommand("generate", "export the graph as dot or an edge list");
  gen->add_option("--n", n, "dimension")->required()->check(CLI::Range(3, 9));
  gen->add_option("--format", fmt, "dot | edges")->check(CLI::IsMember({"dot", "edges", "json"}));
  gen->add_option("--out", out, "output path (default stdout)");

  CLI::App* wit = app.add_subcommand("witness", "build and serialize a certified t-path family");
  wit->add_option("--n", n, "dimension")->required()->check(CLI::Range(3, 9));
  wit->add_option("--terminals", terminals, "three vertex labels")->expected(3);
  CLI::Option* wit_seed = wit->add_option("--seed", seed, "random triple seed");
  wit->add_option("--out", out, "output path (default stdout)");

  CLI::App* ver = app.add_subcommand("verify", "re-check a witness file from scratch");
  ver->add_option("--file", file, "witness JSON path")->required();

  CLI::App* aud = app.add_subcommand("audit", "run the exhaustive structural checks");
  aud->add_option("--n", n, "dimension (3..5)")->required()->check(CLI::Range(3, 5));

  CLI::App* pi = app.add_subcommand("pi3", "print formula and upper bound per dimension");
  pi->add_option("--n", range, "dimension or range, e.g. 5 or 3..8");
  pi->add_option("--seed", seed, "sampling seed for dimensions above 4");

  CLI::App* orc = app.add_subcommand("oracle", "exhaustive per-triple maximum (dimension 3..4)");
  orc->add_option("--n", n, "dimension")->required()->check(CLI::Range(3, 4));
  orc->add_option("--terminals", terminals, "three vertex labels")->expected(3);
  CLI::Option* orc_seed = orc->add_option("--seed", seed, "random triple seed");

  CLI::App* ben = app.add_subcommand("bench", "time the pipeline across dimensions");
  ben->add_option("--n", bench_n, "largest dimension")->check(CLI::Range(3, 8));
  ben->add_option("--seed", seed, "triple selection seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (gen->parsed()) return run_generate(n, fmt, out);
    if (wit->parsed()) return run_witness(n, terminals, wit_seed->count() > 0, seed, out);
    if (ver->parsed()) return run_verify(file);
    if (aud->parsed()) return run_audit(n);
    if (pi->parsed()) return run_pi3(range, seed);
    if (orc->parsed()) return run_oracle(n, terminals, orc_seed->count() > 0, seed);
    if (ben->parsed()) return run_bench(bench_n, seed);
  } catch (const usage_error& e) {
    std::cerr << e.what() << "\n";
    return exit_usage;
  } catch (const SearchBudgetError& e) {
    std::cerr << e.what() << "\n";
    return exit_budget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
