#include "vpc/extraction.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace vpc {

namespace {

size_t premise_count(const std::vector<ProofLine>& lines) {
  size_t n = 0;
  while (n < lines.size() && lines[n].is_premise()) ++n;
  return n;
}

void add_cited(const ProofLine& l, std::vector<int>& out) {
  for (const auto& c : l.connections) out.insert(out.end(), c.lines.begin(), c.lines.end());
}

void normalise(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

ReductionTrace reduce(const std::vector<ProofLine>& lines) {
  ReductionTrace t;
  size_t np = premise_count(lines);
  if (lines.empty() || lines.size() == np) {
    for (size_t i = 0; i < np; ++i) t.used_premises.insert(lines[i].label);
    return t;
  }
  auto line_at = [&](int label) -> const ProofLine& {
    if (label < 1 || static_cast<size_t>(label) > lines.size()) throw std::out_of_range("connection cites missing line " + std::to_string(label));
    return lines[static_cast<size_t>(label - 1)];
  };
  auto note_entries = [&](const ProofLine& l) {
    for (const auto& c : l.connections)
      if (std::find(t.used_entries.begin(), t.used_entries.end(), c.label) == t.used_entries.end()) t.used_entries.push_back(c.label);
  };
  const ProofLine& last = lines.back();
  t.used_lines.insert(last.label);
  note_entries(last);
  std::vector<int> d;
  add_cited(last, d);
  normalise(d);
  t.d_lists.push_back(d);
  for (;;) {
    bool derived_left = false;
    std::vector<int> next;
    for (int k : d) {
      const ProofLine& l = line_at(k);
      t.used_lines.insert(k);
      if (l.is_premise()) {
        next.push_back(k);
        continue;
      }
      derived_left = true;
      note_entries(l);
      add_cited(l, next);
    }
    if (!derived_left) break;
    normalise(next);
    d = std::move(next);
    t.d_lists.push_back(d);
  }
  for (int k : d) t.used_premises.insert(k);
  return t;
}

Extraction extract(const std::vector<ProofLine>& lines) {
  size_t np = premise_count(lines);
  if (lines.size() <= np) throw std::invalid_argument("proof has no derived line");
  Extraction ex;
  ex.trace = reduce(lines);
  for (size_t i = 0; i < np; ++i) {
    if (ex.trace.used_premises.count(lines[i].label))
      ex.statement.premise.push_back(lines[i].statement);
    else
      ex.redundant_premises.push_back(lines[i].label);
  }
  for (size_t i = np; i + 1 < lines.size(); ++i)
    if (!ex.trace.used_lines.count(lines[i].label)) ex.unused_lines.push_back(lines[i].label);
  if (lines.back().is_false)
    ex.warnings.push_back("falsity theorem: minimality of the premise is not verified");
  else
    ex.statement.conclusion = lines.back().statement;
  return ex;
}

StoreEntry Extraction::entry(const std::string& label, EntryKind kind) const {
  StoreEntry e;
  e.label = label;
  e.kind = kind;
  e.falsity = statement.falsity();
  e.premise = statement.premise;
  if (statement.conclusion) e.conclusion = *statement.conclusion;
  e.used = trace.used_entries;
  return e;
}

std::vector<std::string> theorem_connections(const TheoryPack& pack, const std::string& label) {
  const StoreEntry* root = pack.find_entry(label);
  if (!root && !pack.is_family_label(label)) throw std::invalid_argument("unknown label '" + label + "'");
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::function<void(const std::string&)> walk = [&](const std::string& l) {
    if (!seen.insert(l).second) return;
    const StoreEntry* e = pack.find_entry(l);
    if (!e || e->kind == EntryKind::Axiom) {
      out.push_back(l);
      return;
    }
    for (const auto& u : e->used) walk(u);
  };
  walk(label);
  return out;
}

std::vector<std::string> dependents_of(const TheoryPack& pack, const std::string& axiom) {
  std::vector<std::string> out;
  for (const auto& e : pack.entries) {
    if (e.kind == EntryKind::Axiom) continue;
    auto c = theorem_connections(pack, e.label);
    if (std::find(c.begin(), c.end(), axiom) != c.end()) out.push_back(e.label);
  }
  return out;
}

std::string render_theorem_block(const std::string& kind_word, const std::string& label, const Extraction& ex,
                                 const std::vector<ProofLine>& lines) {
  ProofFile f;
  f.kind_word = kind_word;
  f.label = label;
  f.statement = ex.statement;
  f.lines = lines;
  return render_proof_file(f);
}

}  // namespace vpc
