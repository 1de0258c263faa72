#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <random>

#include "vpc/corpus.hpp"
#include "vpc/dynsys.hpp"
#include "vpc/probe.hpp"
#include "vpc/repl.hpp"
#include "vpc/service.hpp"

using namespace vpc;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path root_or(const std::string& corpus) { return corpus.empty() ? corpus_root() : fs::path(corpus); }

void require_theory(const fs::path& root, const std::string& name) {
  auto names = list_theories(root);
  if (std::find(names.begin(), names.end(), name) == names.end()) throw UsageError("unknown theory '" + name + "' under " + root.string());
}

int cmd_check(const fs::path& root, const std::string& theory, const std::string& file, bool completeness) {
  require_theory(root, theory);
  if (!fs::exists(file)) throw UsageError("no such file: " + file);
  ProofFile pf;
  try {
    pf = parse_proof_file(read_file(file));
  } catch (const ParseError& e) {
    std::cout << file << ": " << e.what() << "\n";
    return kFail;
  }
  TheoryPack pack = load_store(root, theory, pf.label);
  CheckOptions co;
  co.completeness = completeness;
  ProofOutcome o = verify_proof(pack, pf, co);
  if (o.ok) {
    std::cout << pf.label << ": " << o.check.summary() << "\n";
    return kOk;
  }
  std::cout << pf.label << ": FAILED\n" << (o.check.ok ? o.message + "\n" : o.check.summary());
  return kFail;
}

int cmd_replay(const fs::path& root, const std::string& theory, bool completeness) {
  std::vector<std::string> names = theory == "all" ? list_theories(root) : std::vector<std::string>{theory};
  if (theory != "all") require_theory(root, theory);
  size_t total = 0, passed = 0;
  double seconds = 0;
  for (const auto& n : names) {
    auto files = proof_files(root, n);
    TheoryPack pack = load_pack(root, n);
    ReplayOptions ro;
    ro.completeness = completeness;
    auto rep = replay(pack, files, ro);
    for (const auto& o : rep.outcomes)
      if (!o.ok) std::cout << n << " " << o.label << ": " << o.message << "\n";
    total += files.size();
    passed += rep.passed();
    seconds += rep.seconds;
  }
  if (passed == total) {
    std::cout << total << " proofs OK\n";
    return kOk;
  }
  std::cout << passed << " of " << total << " proofs OK\n";
  return kFail;
}

int cmd_probe(const fs::path& root, const std::string& theory, size_t trials, uint64_t seed, const std::vector<int64_t>& Ns, bool verbose) {
  require_theory(root, theory);
  TheoryPack pack = load_pack(root, theory);
  std::unique_ptr<TheoryPack> obj;
  if (!pack.object_theory.empty()) obj = std::make_unique<TheoryPack>(load_pack(root, pack.object_theory));
  size_t violations = 0, entries = 0;
  for (int64_t N : Ns) {
    MachineConfig cfg;
    cfg.N = N;
    Machine m(pack, cfg, obj.get());
    auto rep = probe_pack(m, trials, seed);
    for (const auto& e : rep.entries) {
      ++entries;
      violations += e.violations.size();
      if (verbose || !e.violations.empty())
        std::cout << "N=" << N << " " << e.label << (e.falsity ? " (falsity)" : "") << ": " << e.premise_computable << "/" << e.trials
                  << " premises computable, " << e.violations.size() << " violations\n";
      for (size_t k = 0; k < std::min<size_t>(e.violations.size(), 3); ++k)
        std::cout << "  " << e.violations[k].env << " -> " << e.violations[k].detail << "\n";
    }
  }
  std::cout << entries << " axiom probes, " << trials << " trials each, " << violations << " violations\n";
  return violations ? kFail : kOk;
}

struct DynsysArgs {
  std::string spec;
  std::optional<int64_t> v0, n, steps, N;
  std::string certify, lattice, csv, closure;
  uint64_t seed = 1;
};

int cmd_dynsys(const DynsysArgs& a) {
  if (!fs::exists(a.spec)) throw UsageError("no such file: " + a.spec);
  MapSpec spec;
  try {
    spec = parse_map_spec(read_file(a.spec));
  } catch (const std::invalid_argument& e) {
    throw UsageError(a.spec + ": " + e.what());
  }
  MachineConfig cfg;
  if (a.N) cfg.N = *a.N;
  else if (spec.N) cfg.N = *spec.N;
  if (!a.certify.empty()) {
    int64_t lo = 0, hi = 0;
    char c = 0;
    std::istringstream in(a.certify);
    if (!(in >> lo >> c >> hi) || c != ',') throw UsageError("--certify expects lo,hi");
    spec.certify = Interval{false, lo, hi};
  }
  if (!a.lattice.empty()) {
    int w = 0, h = 0;
    char x = 0;
    std::istringstream in(a.lattice);
    if (!(in >> w >> x >> h) || (x != 'x' && x != 'X')) throw UsageError("--lattice expects WxH");
    spec.lattice = {w, h};
  }
  if (!a.closure.empty()) {
    if (!closure_by_name(a.closure)) throw UsageError("unknown closure '" + a.closure + "'");
    spec.closure = a.closure;
  }
  int rc = kOk;
  std::string csv;
  if (spec.lattice) {
    Lattice lat(spec.lattice->first, spec.lattice->second, spec.neighborhood, spec.r_max);
    std::vector<int64_t> r0 = spec.r0;
    if (r0.empty()) {
      std::mt19937_64 rng(a.seed);
      std::uniform_int_distribution<int64_t> d(0, spec.r_max / static_cast<int64_t>(4 * lat.nodes()));
      for (size_t i = 0; i < lat.nodes(); ++i) r0.push_back(d(rng));
    }
    int64_t steps = a.steps ? *a.steps : spec.steps.value_or(100);
    Closure cl = *closure_by_name(spec.closure);
    std::vector<LatticeState> states{initial_state(lat, r0)};
    try {
      for (int64_t t = 0; t < steps; ++t) states.push_back(lattice_step(lat, states.back(), cl));
    } catch (const ClosureViolation& e) {
      std::cout << "step " << states.size() << ": " << e.what() << "\n";
      rc = kFail;
    }
    const auto& first = states.front();
    const auto& last = states.back();
    std::cout << "lattice " << lat.width() << "x" << lat.height() << " " << cl.name << ", " << states.size() - 1 << " steps\n";
    std::cout << "sum r: " << first.sum_r() << " -> " << last.sum_r() << ", sum r + sum u: " << first.sum_r() + first.sum_u() << " -> "
              << last.sum_r() + last.sum_u() << "\n";
    csv = lattice_csv(states);
  } else {
    const PartitionedLinear& f = *spec.map;
    if (spec.certify) {
      Certificate c = certify(f, *spec.certify, cfg);
      std::cout << (c.issued ? "certificate: " : "refused: ") << c.reason << "\n";
      if (c.validated)
        std::cout << "validated " << c.validated_starts << " starts, " << c.validated_steps << " steps"
                  << (c.validation_error.empty() ? "" : ", error " + c.validation_error) << "\n";
      if (!c.issued || !c.validation_error.empty()) rc = kFail;
    }
    std::optional<int64_t> v0 = a.v0 ? a.v0 : spec.v0;
    if (v0) {
      int64_t n = a.n ? *a.n : spec.n.value_or(100);
      if (n < 0) throw UsageError("--n must be nonnegative");
      Trace tr = trace(f, *v0, n, cfg);
      std::cout << "v" << tr.values.size() - 1 << " = " << tr.values.back() << "\n";
      if (tr.cycle_start) std::cout << "cycle: first repeat of step " << *tr.cycle_start << ", length " << *tr.cycle_length << "\n";
      else std::cout << "no repeated state within " << n << " steps\n";
      if (tr.error) {
        std::cout << "error: " << *tr.error << "\n";
        rc = kFail;
      }
      csv = trajectory_csv(tr);
    } else if (!spec.certify) {
      throw UsageError("nothing to do: give --v0 or --certify");
    }
  }
  if (!a.csv.empty()) {
    if (csv.empty()) throw UsageError("--csv needs a trajectory or a lattice run");
    write_file(a.csv, csv);
  }
  return rc;
}

HttpServer* g_server = nullptr;

int cmd_serve(const fs::path& root, const std::string& host, int port) {
  SessionService svc(root);
  HttpServer server(svc);
  int bound = server.bind(host, port);
  if (bound < 0) throw UsageError("cannot bind " + host + ":" + std::to_string(port));
  std::cout << "listening on http://" << host << ":" << bound << "/v1" << std::endl;
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  server.listen();
  g_server = nullptr;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vpc: proof checker and assistant for program-based theories"};
  app.require_subcommand(1);
  std::string corpus;
  uint64_t seed = 1;
  app.add_option("--corpus", corpus, "corpus root (default: VPC_CORPUS or the bundled corpus)");
  app.add_option("--seed", seed, "seed for everything random");

  std::string theory, file;
  bool completeness = false;
  auto* check = app.add_subcommand("check", "check a proof file");
  check->add_option("theory", theory)->required();
  check->add_option("proof", file)->required();
  check->add_flag("--completeness", completeness, "also require every step to be an enumerated option");

  std::string premises_file, until;
  auto* interact = app.add_subcommand("interact", "interactive proof session");
  interact->add_option("theory", theory)->required();
  interact->add_option("--premises", premises_file, "file with the premise statements");
  interact->add_option("--until", until, "store holds the corpus theorems before this label");

  auto* rep = app.add_subcommand("replay", "replay the corpus proofs of a theory ('all' for every theory)");
  rep->add_option("theory", theory)->required();
  rep->add_flag("--completeness", completeness, "check options completeness while replaying");

  size_t trials = 500;
  std::vector<int64_t> Ns{7, 127, 2147483647};
  bool verbose = false;
  auto* probe = app.add_subcommand("probe", "random soundness probes of the axioms");
  probe->add_option("theory", theory)->required();
  probe->add_option("--trials", trials, "trials per axiom and N");
  probe->add_option("--seed", seed, "probe seed");
  probe->add_option("--N", Ns, "largest integers to probe with");
  probe->add_flag("-v,--verbose", verbose, "one line per axiom");

  DynsysArgs da;
  auto* dyn = app.add_subcommand("run-dynsys", "iterate, certify or run a lattice from a map spec file");
  dyn->add_option("spec", da.spec)->required();
  dyn->add_option("--v0", da.v0, "starting value");
  dyn->add_option("--n", da.n, "iterations");
  dyn->add_option("--certify", da.certify, "certify over lo,hi");
  dyn->add_option("--lattice", da.lattice, "run a WxH lattice");
  dyn->add_option("--steps", da.steps, "lattice steps");
  dyn->add_option("--closure", da.closure, "zero-flow, uniform-split or saturating-push");
  dyn->add_option("--csv", da.csv, "write the trajectory as CSV");
  dyn->add_option("--N", da.N, "largest integer");
  dyn->add_option("--seed", da.seed, "seed for random initial lattice states");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "JSON session service under /v1");
  serve->add_option("--host", host, "bind address");
  serve->add_option("--port", port, "port (0 picks one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  try {
    fs::path root = root_or(corpus);
    if (check->parsed()) return cmd_check(root, theory, file, completeness);
    if (rep->parsed()) return cmd_replay(root, theory, completeness);
    if (probe->parsed()) return cmd_probe(root, theory, trials, seed, Ns, verbose);
    if (dyn->parsed()) {
      if (app.count("--seed") && !dyn->count("--seed")) da.seed = seed;
      return cmd_dynsys(da);
    }
    if (serve->parsed()) return cmd_serve(root, host, port);
    if (interact->parsed()) {
      require_theory(root, theory);
      std::vector<Atomic> premises;
      if (!premises_file.empty()) {
        if (!fs::exists(premises_file)) throw UsageError("no such file: " + premises_file);
        premises = parse_atomic_sequence(read_file(premises_file));
      }
      auto pack = std::make_shared<const TheoryPack>(load_store(root, theory, until));
      return run_repl(pack, premises, std::cin, std::cout);
    }
  } catch (const UsageError& e) {
    std::cerr << "vpc: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "vpc: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "vpc: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
