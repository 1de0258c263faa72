#include "vpc/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vpc/equivalence.hpp"

#ifndef VPC_CORPUS_DIR
#define VPC_CORPUS_DIR "corpus"
#endif

namespace vpc {

fs::path corpus_root() {
  if (const char* e = std::getenv("VPC_CORPUS"); e && *e) return e;
  return VPC_CORPUS_DIR;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

std::vector<std::string> list_theories(const fs::path& root) {
  std::vector<std::string> out;
  if (!fs::is_directory(root)) return out;
  for (const auto& d : fs::directory_iterator(root))
    if (d.is_directory() && fs::exists(d.path() / "setup.dat")) out.push_back(d.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<fs::path> proof_files(const fs::path& root, const std::string& name) {
  std::vector<fs::path> out;
  fs::path dir = root / name / "proofs";
  if (!fs::is_directory(dir)) return out;
  for (const auto& d : fs::directory_iterator(dir))
    if (d.path().extension() == ".prf") out.push_back(d.path());
  std::sort(out.begin(), out.end());
  return out;
}

EntryKind kind_of_label(const std::string& label) {
  if (label.rfind("thm", 0) == 0) return EntryKind::Theorem;
  if (label.rfind("lem", 0) == 0) return EntryKind::Lemma;
  return EntryKind::Axiom;
}

namespace {

std::string optional_file(const fs::path& p) { return fs::exists(p) ? read_file(p) : std::string(); }

void load_into(TheoryPack& pack, const fs::path& root, const std::string& name, int depth) {
  if (depth > 8) throw std::runtime_error("extends chain too deep at " + name);
  fs::path dir = root / name;
  if (!fs::exists(dir / "setup.dat")) throw std::runtime_error("unknown theory '" + name + "'");
  auto dirs = parse_setup(read_file(dir / "setup.dat"));
  for (const auto& d : dirs)
    if (d.keyword == "extends") load_into(pack, root, d.args.at(0), depth + 1);
  apply_setup(pack, dirs);
  for (auto& e : parse_store(optional_file(dir / "axiom.dat"))) pack.add_entry(std::move(e));
  for (auto& l : parse_list_defs(optional_file(dir / "list.dat"))) pack.lists.push_back(std::move(l));
  for (auto& d : parse_disj_defs(optional_file(dir / "disj.dat"))) pack.disjs.push_back(std::move(d));
}

}  // namespace

TheoryPack load_pack(const fs::path& root, const std::string& name) {
  TheoryPack pack;
  load_into(pack, root, name, 0);
  pack.name = name;
  pack.build_families();
  // seeds are applied after the own setup so seeded theorems see the full pack
  auto seeds = pack.seeds;
  for (const auto& [from, last] : seeds) {
    TheoryPack src = load_pack(root, from);
    ReplayOptions ro;
    ro.stop_after = last;
    auto rep = replay(src, proof_files(root, from), ro);
    if (!rep.ok()) throw std::runtime_error("seed replay of " + from + " failed");
    for (const auto& o : rep.outcomes)
      if (const StoreEntry* e = src.find_entry(o.label); e && !pack.find_entry(o.label)) pack.add_entry(*e);
  }
  return pack;
}

ProofOutcome verify_proof(const TheoryPack& pack, const ProofFile& pf, const CheckOptions& opts) {
  ProofOutcome o;
  o.label = pf.label;
  o.check = check_proof(pack, pf, opts);
  if (!o.check.ok) {
    const auto& d = o.check.diagnostics.front();
    o.message = "line " + std::to_string(d.line) + ": " + d.message;
    return o;
  }
  try {
    o.extraction = extract(pf.lines);
  } catch (const std::exception& e) {
    o.message = std::string("extraction: ") + e.what();
    return o;
  }
  const auto& got = o.extraction.statement;
  const auto& want = pf.statement;
  if (!o.extraction.redundancy_free()) {
    o.message = "redundant premise line " + std::to_string(o.extraction.redundant_premises.front());
    return o;
  }
  bool same = got.falsity() == want.falsity();
  if (same) {
    auto a = got.premise, b = want.premise;
    if (got.conclusion) a.push_back(*got.conclusion);
    if (want.conclusion) b.push_back(*want.conclusion);
    same = io_equiv(a, b, pack.constants).has_value();
  }
  if (!same) {
    o.message = "extracted " + got.render() + " differs from printed " + want.render();
    return o;
  }
  o.rendered = render_theorem_block(pf.kind_word, pf.label, o.extraction, pf.lines);
  o.ok = true;
  return o;
}

bool ReplayReport::ok() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const ProofOutcome& o) { return o.ok; });
}

size_t ReplayReport::passed() const {
  return static_cast<size_t>(std::count_if(outcomes.begin(), outcomes.end(), [](const ProofOutcome& o) { return o.ok; }));
}

ReplayReport replay(TheoryPack& pack, const std::vector<fs::path>& files, const ReplayOptions& opts) {
  ReplayReport rep;
  auto t0 = std::chrono::steady_clock::now();
  CheckOptions co;
  co.completeness = opts.completeness;
  for (const auto& f : files) {
    ProofOutcome o;
    ProofFile pf;
    try {
      pf = parse_proof_file(read_file(f));
      o = verify_proof(pack, pf, co);
    } catch (const std::exception& e) {
      o.message = e.what();
    }
    o.file = f;
    if (o.label.empty()) o.label = f.stem().string();
    if (o.ok) {
      StoreEntry e = o.extraction.entry(pf.label, kind_of_label(pf.label));
      // the printed statement is what later proofs cite
      e.premise = pf.statement.premise;
      if (pf.statement.conclusion) e.conclusion = *pf.statement.conclusion;
      pack.add_entry(std::move(e));
    }
    bool stop = !o.ok || o.label == opts.stop_after;
    rep.outcomes.push_back(std::move(o));
    if (stop) break;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

TheoryPack load_store(const fs::path& root, const std::string& name, const std::string& until) {
  TheoryPack pack = load_pack(root, name);
  std::vector<fs::path> files;
  for (const auto& f : proof_files(root, name)) {
    if (!until.empty() && parse_proof_file(read_file(f)).label == until) break;
    files.push_back(f);
  }
  auto rep = replay(pack, files);
  if (!rep.ok()) throw std::runtime_error(name + " corpus fails at " + rep.outcomes.back().label + ": " + rep.outcomes.back().message);
  return pack;
}

}  // namespace vpc
