// One PASS/FAIL line per acceptance criterion. Exits 0 unless --strict is
// given and something failed.

#include <chrono>
#include <cstring>
#include <iostream>
#include <random>
#include <sstream>

#include "support.hpp"
#include "vpc/dynsys.hpp"
#include "vpc/equivalence.hpp"
#include "vpc/extraction.hpp"
#include "vpc/probe.hpp"

using namespace vpc;
using namespace vpc::testing;

namespace {

constexpr double kReplaySeconds = 60.0;
constexpr size_t kProbeTrials = 500;
constexpr int64_t kProbeN[] = {7, 127, 2147483647};
constexpr uint64_t kSeed = 20240601;
constexpr int64_t kBound = 5;  // interval bounds in [-kBound, kBound]
constexpr int64_t kTentA = 50, kCheckSteps = 1000, kStarts = 101;
constexpr int kSemigroupTrials = 200;
constexpr int64_t kCycleWithin = 100, kDifferWithin = 100, kWideA = 5000;
constexpr int kLatticeSide = 4, kLatticeSteps = 100;
constexpr int64_t kLatticeRmax = 1024, kLatticeR0Max = 60;

struct Result {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int n, const char* name, const Result& r) {
  if (!r.pass) ++failures;
  std::cout << (r.pass ? "PASS" : "FAIL") << "  " << n << " " << name << ": " << r.detail << std::endl;
}

std::vector<std::string> proof_theories() {
  std::vector<std::string> out;
  for (const auto& t : list_theories(corpus_root()))
    if (!proof_files(corpus_root(), t).empty()) out.push_back(t);
  return out;
}

Result replay_all(bool completeness, size_t* derived_out = nullptr, size_t* checked_out = nullptr) {
  auto t0 = std::chrono::steady_clock::now();
  size_t total = 0, passed = 0, derived = 0, checked = 0;
  std::string first;
  for (const auto& t : list_theories(corpus_root())) {
    TheoryPack pack = load_pack(corpus_root(), t);  // packs without proofs must still load
    auto files = proof_files(corpus_root(), t);
    ReplayOptions opt;
    opt.completeness = completeness;
    ReplayReport r = replay(pack, files, opt);
    total += files.size();
    passed += r.passed();
    for (const auto& o : r.outcomes) {
      if (!o.ok && first.empty()) first = t + "/" + o.label + ": " + o.message;
      checked += static_cast<size_t>(o.check.completeness_checked);
    }
    for (const auto& f : files)
      for (const auto& l : parse_proof_file(read_file(f)).lines) derived += l.connections.size();  // a contraction line has two
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (derived_out) *derived_out = derived;
  if (checked_out) *checked_out = checked;
  std::ostringstream d;
  d << passed << "/" << total << " proofs in " << secs << " s (limit " << kReplaySeconds << " s)";
  if (!first.empty()) d << "; first failure " << first;
  return {total > 0 && passed == total && secs < kReplaySeconds, d.str()};
}

Result options_completeness() {
  size_t derived = 0, checked = 0;
  Result r = replay_all(true, &derived, &checked);
  std::ostringstream d;
  d << checked << "/" << derived << " connection lists of derived lines found in the options enumeration";
  return {r.pass && checked == derived, d.str()};
}

std::vector<Atomic> as_list(const TheoremStatement& s) {
  std::vector<Atomic> v = s.premise;
  if (s.conclusion) v.push_back(*s.conclusion);
  return v;
}

Result extraction() {
  size_t n = 0, equiv = 0, clean = 0, reduced = 0;
  std::string first;
  for (const auto& t : proof_theories())
    for (const auto& f : proof_files(corpus_root(), t)) {
      ProofFile pf = parse_proof_file(read_file(f));
      ++n;
      Extraction ex = extract(pf.lines);
      bool same_kind = ex.statement.falsity() == pf.statement.falsity();
      if (same_kind && io_equiv(as_list(ex.statement), as_list(pf.statement)) && io_equiv(as_list(pf.statement), as_list(ex.statement)))
        ++equiv;
      else if (first.empty())
        first = t + "/" + pf.label + " not equivalent";
      if (ex.redundancy_free())
        ++clean;
      else if (first.empty())
        first = t + "/" + pf.label + " has redundant premises";
      // the last d list holds premise labels only and the lists never outnumber the lines
      size_t np = 0;
      while (np < pf.lines.size() && pf.lines[np].is_premise()) ++np;
      const auto& dl = ex.trace.d_lists;
      bool ok = !dl.empty() && dl.size() <= pf.lines.size();
      if (ok)
        for (int k : dl.back()) ok = ok && k >= 1 && static_cast<size_t>(k) <= np;
      if (ok)
        ++reduced;
      else if (first.empty())
        first = t + "/" + pf.label + " reduction did not end in premises";
    }
  std::ostringstream d;
  d << equiv << "/" << n << " equivalent, " << clean << "/" << n << " redundancy free, " << reduced << "/" << n << " reductions end in premises";
  if (!first.empty()) d << "; " << first;
  return {n > 0 && equiv == n && clean == n && reduced == n, d.str()};
}

Result probes() {
  size_t probes = 0, violations = 0, falsity_runs = 0, short_runs = 0;
  std::ostringstream bad;
  for (const auto& t : list_theories(corpus_root())) {
    TheoryPack pack = load_pack(corpus_root(), t);
    std::unique_ptr<TheoryPack> obj;
    if (!pack.object_theory.empty()) obj = std::make_unique<TheoryPack>(load_pack(corpus_root(), pack.object_theory));
    // inherited axioms are probed once, under the theory that declares them
    std::set<std::string> own;
    for (const auto& e : pack.entries) own.insert(e.label);
    for (const auto& dir : parse_setup(read_file(corpus_root() / t / "setup.dat")))
      if (dir.keyword == "extends")
        for (const auto& e : load_pack(corpus_root(), dir.args.at(0)).entries) own.erase(e.label);
    std::set<std::string> failing;
    for (int64_t N : kProbeN) {
      MachineConfig cfg;
      cfg.N = N;
      Machine m(pack, cfg, obj.get());
      for (const auto& e : pack.entries) {
        if (e.kind != EntryKind::Axiom || !own.count(e.label)) continue;
        EntryProbe p = probe_entry(m, e, kProbeTrials, kSeed);
        ++probes;
        if (p.trials < kProbeTrials) ++short_runs;
        if (e.falsity) falsity_runs += p.premise_computable;
        violations += p.violations.size();
        if (!p.violations.empty()) failing.insert(e.label);
      }
    }
    for (const auto& l : failing) bad << " " << t << "/" << l;
  }
  std::ostringstream d;
  d << probes << " axiom probes x " << kProbeTrials << " trials over N in {7,127,2^31-1}, " << violations << " violations, " << falsity_runs
    << " falsity premises executed";
  if (!bad.str().empty()) d << "; violating:" << bad.str();
  return {probes > 0 && violations == 0 && falsity_runs == 0 && short_runs == 0, d.str()};
}

Interval hull_of(const std::vector<int64_t>& xs) {
  auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return {false, *lo, *hi};
}

Result interval_oracle() {
  TheoryPack pack = load_pack(corpus_root(), "intervals");
  Machine m(pack);
  const auto prog = parse_atomic_sequence("int [a b] [p] int [c d] [q] adddi [p q] [s] multdi [p q] [t] smultdi [c p] [w] cup [p q] [u]");
  size_t cases = 0, mismatches = 0, enclosed = 0;
  for (int64_t a = -kBound; a <= kBound; ++a)
    for (int64_t b = a; b <= kBound; ++b)
      for (int64_t c = -kBound; c <= kBound; ++c)
        for (int64_t d = c; d <= kBound; ++d) {
          Env env;
          env.vars = {{"a", a}, {"b", b}, {"c", c}, {"d", d}};
          m.exec(prog, env);
          std::vector<int64_t> sums, prods, scaled, all;
          for (int64_t x = a; x <= b; ++x) {
            scaled.push_back(c * x);
            all.push_back(x);
            for (int64_t y = c; y <= d; ++y) {
              sums.push_back(x + y);
              prods.push_back(x * y);
            }
          }
          for (int64_t y = c; y <= d; ++y) all.push_back(y);
          auto got = [&](const char* n) { return std::get<Interval>(env.vars.at(n)); };
          Interval t = got("t"), exact = hull_of(prods);
          ++cases;
          if (!(got("s") == hull_of(sums) && t == exact && got("w") == hull_of(scaled) && got("u") == hull_of(all))) ++mismatches;
          if (!t.empty && t.lo <= exact.lo && exact.hi <= t.hi) ++enclosed;
        }
  std::ostringstream d;
  d << cases << " interval pairs, " << mismatches << " mismatches, multdi encloses the product range in " << enclosed << "/" << cases;
  return {cases > 0 && mismatches == 0 && enclosed == cases, d.str()};
}

Result dynsys_certification() {
  auto f = PartitionedLinear::tent(kTentA);
  CertifyOptions opt;
  opt.check_steps = kCheckSteps;
  Certificate c = certify(f, {false, 0, 2 * kTentA}, {}, opt);
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int64_t> v(0, 2 * kTentA), n(0, 500);
  int semigroup_ok = 0;
  for (int i = 0; i < kSemigroupTrials; ++i) {
    int64_t x = v(rng), a = n(rng), b = n(rng);
    if (iterate(f, iterate(f, x, a), b) == iterate(f, x, a + b)) ++semigroup_ok;
  }
  std::ostringstream d;
  d << "certificate " << (c.issued ? "issued" : "refused") << " (" << c.reason << "), " << c.validated_starts << " starts x " << kCheckSteps
    << " steps, " << (c.validation_error.empty() ? "no errors" : c.validation_error) << ", semigroup " << semigroup_ok << "/" << kSemigroupTrials;
  return {c.issued && c.validated && c.validated_starts == kStarts && c.validated_steps == kStarts * kCheckSteps && c.validation_error.empty() &&
              semigroup_ok == kSemigroupTrials,
          d.str()};
}

Result tent_claims() {
  Trace t = trace(PartitionedLinear::tent(kTentA), 2, kCycleWithin);
  bool cycles = t.cycle_start && *t.cycle_start + *t.cycle_length <= kCycleWithin;
  auto g = PartitionedLinear::tent(kWideA);
  Trace a = trace(g, 2, kDifferWithin), b = trace(g, 3, kDifferWithin);
  int64_t differ_at = -1;
  // t = 0 differs by construction, so look from t = 1
  for (size_t i = 1; i < a.values.size() && i < b.values.size(); ++i)
    if (a.values[i] != b.values[i]) {
      differ_at = static_cast<int64_t>(i);
      break;
    }
  std::ostringstream d;
  if (cycles)
    d << "a=" << kTentA << " v0=2 repeats at step " << *t.cycle_start + *t.cycle_length << " (cycle of length " << *t.cycle_length << ")";
  else
    d << "a=" << kTentA << " v0=2 no repeat within " << kCycleWithin;
  d << "; a=" << kWideA << " trajectories from 2 and 3 " << (differ_at >= 0 ? "differ at t=" + std::to_string(differ_at) : "agree");
  return {cycles && !a.error && !b.error && differ_at >= 0 && differ_at <= kDifferWithin, d.str()};
}

Result lattice_conservation() {
  Lattice lat(kLatticeSide, kLatticeSide, Neighborhood::Neumann, kLatticeRmax);
  std::mt19937_64 rng(kSeed);
  std::vector<int64_t> r0(lat.nodes());
  for (auto& v : r0) v = std::uniform_int_distribution<int64_t>(0, kLatticeR0Max)(rng);
  bool all = true;
  std::ostringstream d;
  for (const auto& c : bundled_closures()) {
    LatticeState s = initial_state(lat, r0);
    int64_t sum0 = s.sum_r(), lo = sum0, hi = sum0, total0 = s.sum_r() + s.sum_u();
    bool total_kept = true;
    std::string violation;
    for (int t = 0; t < kLatticeSteps && violation.empty(); ++t) {
      try {
        s = lattice_step(lat, s, c);
      } catch (const ClosureViolation& e) {
        violation = e.what();
        break;
      }
      lo = std::min(lo, s.sum_r());
      hi = std::max(hi, s.sum_r());
      total_kept = total_kept && s.sum_r() + s.sum_u() == total0;
    }
    bool ok = violation.empty() && lo == sum0 && hi == sum0;
    all = all && ok;
    d << c.name << " " << (ok ? "ok" : "NOT CONSERVED") << " (sum r " << sum0 << ", range [" << lo << " " << hi << "]"
      << ", sum r + sum u " << (total_kept ? "constant" : "varies") << ", bounds " << (violation.empty() ? "held" : violation) << "); ";
  }
  std::string text = d.str();
  text.resize(text.size() - 2);
  return {all, text};
}

Result round_trips() {
  size_t files = 0, identical = 0;
  std::string first;
  for (const auto& t : list_theories(corpus_root())) {
    for (const char* kind : {"setup", "axiom", "list", "disj"}) {
      fs::path f = corpus_root() / t / (std::string(kind) + ".dat");
      if (!fs::exists(f)) continue;
      ++files;
      std::string text = read_file(f);
      if (canonical_render(kind, text) == text)
        ++identical;
      else if (first.empty())
        first = f.string();
    }
    for (const auto& f : proof_files(corpus_root(), t)) {
      ++files;
      std::string text = read_file(f);
      if (render_proof_file(parse_proof_file(text)) == text)
        ++identical;
      else if (first.empty())
        first = f.string();
    }
  }
  struct Spot {
    const char* theory;
    const char* label;
  };
  const Spot spots[] = {{"integers", "thm 1"}, {"integers", "thm 16"}, {"integers", "thm 17"}, {"pecr-higher-order", "thm 7"}, {"matrices", "thm 29"}};
  size_t spot_ok = 0;
  for (const auto& s : spots) {
    try {
      ProofFile pf = corpus_proof(s.theory, s.label);
      auto pack = std::make_shared<const TheoryPack>(load_store(corpus_root(), s.theory, s.label));
      auto st = rebuild(pack, pf);
      std::string block = render_theorem_block(pf.kind_word, pf.label, extract(st->lines()), st->lines());
      if (st->complete() && tokens(block) == tokens(render_proof_file(pf)))
        ++spot_ok;
      else if (first.empty())
        first = std::string(s.theory) + "/" + s.label + " output differs";
    } catch (const std::exception& e) {
      if (first.empty()) first = std::string(s.theory) + "/" + s.label + ": " + e.what();
    }
  }
  std::ostringstream d;
  d << identical << "/" << files << " files render back unchanged, " << spot_ok << "/" << std::size(spots) << " spot theorems token-identical";
  if (!first.empty()) d << "; " << first;
  return {files > 0 && identical == files && spot_ok == std::size(spots), d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  auto guarded = [](Result (*fn)()) {
    try {
      return fn();
    } catch (const std::exception& e) {
      return Result{false, std::string("error: ") + e.what()};
    }
  };
  report(1, "corpus replay", guarded([] { return replay_all(false); }));
  report(2, "options completeness", guarded(options_completeness));
  report(3, "theorem extraction", guarded(extraction));
  report(4, "soundness probes", guarded(probes));
  report(5, "interval oracle", guarded(interval_oracle));
  report(6, "dynsys certification", guarded(dynsys_certification));
  report(7, "tent map claims", guarded(tent_claims));
  report(8, "lattice conservation", guarded(lattice_conservation));
  report(9, "format round-trips", guarded(round_trips));
  std::cout << "acceptance: " << (9 - failures) << "/9 criteria pass" << std::endl;
  return strict && failures ? 1 : 0;
}
