#pragma once

#include <set>
#include <string>
#include <vector>

#include "vpc/pack.hpp"
#include "vpc/proof.hpp"

namespace vpc {

struct ReductionTrace {
  std::vector<std::vector<int>> d_lists;  // d(1), d(2), ... ending in premise labels only
  std::set<int> used_premises;
  std::set<int> used_lines;               // every line reached, premises included
  std::vector<std::string> used_entries;  // rule labels cited on reached lines, first-seen order
};

// Label-list reduction from the last line down to premises. Premises are the
// leading lines without connections.
ReductionTrace reduce(const std::vector<ProofLine>& lines);

struct Extraction {
  TheoremStatement statement;
  ReductionTrace trace;
  std::vector<int> redundant_premises;
  std::vector<int> unused_lines;  // derived lines the conclusion does not depend on
  std::vector<std::string> warnings;
  bool redundancy_free() const { return redundant_premises.empty(); }
  // Store form under the given label.
  StoreEntry entry(const std::string& label, EntryKind kind) const;
};

// Requires a complete listing (last line derived or :false).
Extraction extract(const std::vector<ProofLine>& lines);

// Transitive closure of a theorem's cited labels down to axioms and rule families.
std::vector<std::string> theorem_connections(const TheoryPack& pack, const std::string& label);

// Theorems whose closure contains the given axiom.
std::vector<std::string> dependents_of(const TheoryPack& pack, const std::string& axiom);

// "Theorem thm 1." + statement + blank + "Proof." + listing.
std::string render_theorem_block(const std::string& kind_word, const std::string& label, const Extraction& ex,
                                 const std::vector<ProofLine>& lines);

}  // namespace vpc
