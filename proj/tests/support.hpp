#pragma once

// Helpers shared by the corpus tests and the acceptance runner.

#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vpc/corpus.hpp"
#include "vpc/prover.hpp"

namespace vpc::testing {

inline ProofFile corpus_proof(const std::string& theory, const std::string& label) {
  for (const auto& f : proof_files(corpus_root(), theory)) {
    ProofFile pf = parse_proof_file(read_file(f));
    if (pf.label == label) return pf;
  }
  throw std::runtime_error("no corpus proof " + theory + "/" + label);
}

inline std::vector<std::string> tokens(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

// Steps a printed listing through ProofState, one interactive step per line.
// A line with two connection lists contracts the pending split: each child
// either concludes the line or closes on a falsity entry.
inline std::unique_ptr<ProofState> rebuild(std::shared_ptr<const TheoryPack> pack, const ProofFile& pf) {
  std::vector<Atomic> premises;
  for (const auto& l : pf.lines)
    if (l.is_premise()) premises.push_back(l.statement);
  auto s = std::make_unique<ProofState>(pack, premises);
  std::set<int> pending;
  for (const auto& l : pf.lines)
    if (l.split) pending.insert(l.label);
  auto is_falsity = [&](const Connection& c) {
    const StoreEntry* e = pack->find_entry(c.label);
    return e && e->falsity;
  };
  auto close = [&](ProofState& child, const ProofLine& l, const Connection& c) {
    if (l.is_false || is_falsity(c))
      child.declare_false(c);
    else
      child.apply_statement(l.statement, c);
  };
  for (const auto& l : pf.lines) {
    if (l.is_premise()) continue;
    if (l.connections.size() == 1) {
      if (l.is_false)
        s->declare_false(l.connections[0]);
      else
        s->apply_statement(l.statement, l.connections[0]);
      continue;
    }
    if (l.connections.size() != 2 || pending.empty()) throw std::runtime_error("line " + std::to_string(l.label) + ": cannot replay");
    s->split(*pending.begin());
    pending.erase(pending.begin());
    close(s->child(0), l, l.connections[0]);
    close(s->child(1), l, l.connections[1]);
    s->contract();
  }
  return s;
}

}  // namespace vpc::testing
