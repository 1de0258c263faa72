#pragma once

#include <string>
#include <vector>

#include "vpc/equivalence.hpp"
#include "vpc/pack.hpp"

namespace vpc {

struct OptionEntry {
  std::string axiom_label;
  std::vector<int> lines;  // 1-based proof line labels, in premise slot order
  Atomic conclusion;       // meaningless when falsity
  bool falsity = false;
  Renaming renaming;       // premise bindings only
  Atomic pattern;          // rule conclusion before instantiation

  std::string render(int index) const;  // "index : label [l1 ... lk] -> conclusion"
};

// A proof line as seen by the matcher: a statement, or nothing for :false lines.
struct MatchLine {
  int label;
  Atomic statement;
};

// All premise tuples (in slot order) at which rule's premise matches the lines.
// A line fills several slots only when its statement has no outputs.
std::vector<std::pair<std::vector<int>, Renaming>> match_premise(const std::vector<Atomic>& premise, const std::vector<MatchLine>& lines,
                                                                const Constants& consts);

// Instantiates a rule conclusion, naming unbound variables freshly.
Atomic instantiate_conclusion(const Atomic& concl, Renaming m, const std::set<Name>& used, const Constants& consts);

class Matcher {
 public:
  explicit Matcher(const TheoryPack& pack) : pack_(pack) {}

  // Derivation options ordered by store order, then lexicographic line labels.
  std::vector<OptionEntry> enumerate(const std::vector<MatchLine>& lines) const;
  // Falsity matches only.
  std::vector<OptionEntry> enumerate_falsities(const std::vector<MatchLine>& lines) const;
  // Options of a single labelled rule at exactly the given lines.
  std::vector<OptionEntry> at(const std::string& label, const std::vector<int>& lines, const std::vector<MatchLine>& proof) const;

 private:
  std::vector<OptionEntry> run(const std::vector<Rule>& rules, const std::vector<MatchLine>& lines, bool falsity) const;
  const TheoryPack& pack_;
};

// True when printed equals the option's conclusion up to the choice of fresh
// names: bound slots must agree, fresh slots must be new, distinct and consistent.
bool conclusion_accepts(const OptionEntry& o, const Atomic& printed, const std::set<Name>& used, const Constants& consts);

std::string render_options(const std::vector<OptionEntry>& opts);

}  // namespace vpc
