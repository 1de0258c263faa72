#include "vpc/matcher.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "vpc/structure.hpp"

namespace vpc {

std::string OptionEntry::render(int index) const {
  std::string s = std::to_string(index) + " : " + axiom_label + " [";
  for (size_t i = 0; i < lines.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(lines[i]);
  }
  s += "] -> ";
  s += falsity ? ":false" : conclusion.render();
  return s;
}

bool conclusion_accepts(const OptionEntry& o, const Atomic& printed, const std::set<Name>& used, const Constants& consts) {
  const Atomic& pat = o.pattern;
  if (o.falsity || printed.name != pat.name || printed.in.size() != pat.in.size() || printed.out.size() != pat.out.size()) return false;
  Renaming fresh;
  std::set<Name> taken;
  auto check = [&](const IoList& p, const IoList& got) {
    for (size_t i = 0; i < p.size(); ++i) {
      const Name& v = p[i];
      if (consts.contains(v)) {
        if (got[i] != v) return false;
        continue;
      }
      auto b = o.renaming.find(v);
      if (b != o.renaming.end()) {
        if (got[i] != b->second) return false;
        continue;
      }
      auto f = fresh.find(v);
      if (f != fresh.end()) {
        if (f->second != got[i]) return false;
        continue;
      }
      if (used.count(got[i]) || consts.contains(got[i]) || !is_identifier(got[i]) || !taken.insert(got[i]).second) return false;
      fresh[v] = got[i];
    }
    return true;
  };
  return check(pat.in, printed.in) && check(pat.out, printed.out);
}

std::string render_options(const std::vector<OptionEntry>& opts) {
  std::string out;
  for (size_t i = 0; i < opts.size(); ++i) out += opts[i].render(static_cast<int>(i + 1)) + "\n";
  return out;
}

namespace {

struct Search {
  const std::vector<Atomic>& premise;
  const std::vector<MatchLine>& lines;
  const Constants& consts;
  std::vector<std::vector<size_t>> candidates;
  std::vector<int> chosen;
  std::vector<int> use_count;
  Renaming m;
  std::vector<std::pair<std::vector<int>, Renaming>> results;

  size_t bound_args(size_t slot) const {
    size_t n = 0;
    for (const auto* l : {&premise[slot].in, &premise[slot].out})
      for (const auto& v : *l)
        if (consts.contains(v) || m.count(v)) ++n;
    return n;
  }

  void run(size_t assigned) {
    if (assigned == premise.size()) {
      std::vector<int> tuple;
      for (int c : chosen) tuple.push_back(lines[static_cast<size_t>(c)].label);
      results.emplace_back(std::move(tuple), m);
      return;
    }
    size_t best = premise.size();
    size_t best_bound = 0, best_cands = 0;
    for (size_t s = 0; s < premise.size(); ++s) {
      if (chosen[s] >= 0) continue;
      size_t b = bound_args(s), c = candidates[s].size();
      if (best == premise.size() || b > best_bound || (b == best_bound && c < best_cands)) {
        best = s;
        best_bound = b;
        best_cands = c;
      }
    }
    for (size_t li : candidates[best]) {
      const Atomic& st = lines[li].statement;
      if (use_count[li] > 0 && !st.out.empty()) continue;
      Renaming saved = m;
      if (match_atomic(premise[best], st, m, consts)) {
        chosen[best] = static_cast<int>(li);
        ++use_count[li];
        run(assigned + 1);
        --use_count[li];
        chosen[best] = -1;
      }
      m = std::move(saved);
    }
  }
};

}  // namespace

std::vector<std::pair<std::vector<int>, Renaming>> match_premise(const std::vector<Atomic>& premise, const std::vector<MatchLine>& lines,
                                                                const Constants& consts) {
  Search s{premise, lines, consts, {}, {}, {}, {}, {}};
  s.candidates.resize(premise.size());
  for (size_t k = 0; k < premise.size(); ++k) {
    for (size_t li = 0; li < lines.size(); ++li) {
      const Atomic& st = lines[li].statement;
      if (st.name == premise[k].name && st.in.size() == premise[k].in.size() && st.out.size() == premise[k].out.size()) s.candidates[k].push_back(li);
    }
    if (s.candidates[k].empty()) return {};
  }
  s.chosen.assign(premise.size(), -1);
  s.use_count.assign(lines.size(), 0);
  s.run(0);
  return std::move(s.results);
}

Atomic instantiate_conclusion(const Atomic& concl, Renaming m, const std::set<Name>& used, const Constants& consts) {
  IoList unbound;
  for (const auto* l : {&concl.in, &concl.out})
    for (const auto& v : *l)
      if (!consts.contains(v) && !m.count(v) && std::find(unbound.begin(), unbound.end(), v) == unbound.end()) unbound.push_back(v);
  auto fresh = fresh_names(used, unbound.size(), consts);
  for (size_t i = 0; i < unbound.size(); ++i) m[unbound[i]] = fresh[i];
  return apply_renaming(concl, m);
}

std::vector<OptionEntry> Matcher::run(const std::vector<Rule>& rules, const std::vector<MatchLine>& lines, bool falsity) const {
  std::set<Name> present;
  std::set<Name> used;
  std::set<std::string> existing_empty;
  std::vector<Atomic> stmts;
  for (const auto& l : lines) {
    present.insert(l.statement.name);
    auto n = names_in({l.statement});
    used.insert(n.begin(), n.end());
    if (l.statement.out.empty()) existing_empty.insert(l.statement.render());
    stmts.push_back(l.statement);
  }
  std::vector<OptionEntry> out;
  std::set<std::string> seen;
  for (const auto& r : rules) {
    if (falsity != !r.conclusion.has_value()) continue;
    if (r.premise.empty()) continue;
    bool possible = std::all_of(r.premise.begin(), r.premise.end(), [&](const Atomic& a) { return present.count(a.name) > 0; });
    if (!possible) continue;
    auto matches = match_premise(r.premise, lines, pack_.constants);
    std::sort(matches.begin(), matches.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [tuple, m] : matches) {
      OptionEntry o;
      o.axiom_label = r.label;
      o.lines = tuple;
      o.falsity = falsity;
      if (!falsity) {
        Renaming full = m;
        o.conclusion = instantiate_conclusion(*r.conclusion, full, used, pack_.constants);
        if (o.conclusion.out.empty() && existing_empty.count(o.conclusion.render())) continue;
        auto ext = stmts;
        ext.push_back(o.conclusion);
        try {
          validate(ext, pack_.constants);
        } catch (const std::runtime_error&) {
          continue;
        }
        o.pattern = *r.conclusion;
      }
      o.renaming = std::move(m);
      std::string key = o.axiom_label + "|";
      for (int t : o.lines) key += std::to_string(t) + ",";
      key += falsity ? ":false" : o.conclusion.render();
      if (!seen.insert(key).second) continue;
      out.push_back(std::move(o));
    }
  }
  return out;
}

std::vector<OptionEntry> Matcher::enumerate(const std::vector<MatchLine>& lines) const {
  auto opts = run(pack_.rules(), lines, false);
  // empty-premise entries (e.g. ord 6) are always available
  std::set<std::string> existing;
  std::set<Name> used;
  for (const auto& l : lines) {
    existing.insert(l.statement.render());
    auto n = names_in({l.statement});
    used.insert(n.begin(), n.end());
  }
  std::vector<OptionEntry> with_empty;
  for (const auto& e : pack_.entries) {
    if (e.falsity || !e.premise.empty()) continue;
    Atomic c = instantiate_conclusion(e.conclusion, {}, used, pack_.constants);
    if (c.out.empty() && existing.count(c.render())) continue;
    with_empty.push_back(OptionEntry{e.label, {}, c, false, {}, e.conclusion});
  }
  // keep store order: merge empty-premise entries at their store position
  if (with_empty.empty()) return opts;
  std::map<std::string, size_t> order;
  for (size_t i = 0; i < pack_.entries.size(); ++i) order[pack_.entries[i].label] = i;
  auto rank = [&](const OptionEntry& o) -> size_t {
    auto it = order.find(o.axiom_label);
    return it == order.end() ? pack_.entries.size() : it->second;
  };
  opts.insert(opts.end(), with_empty.begin(), with_empty.end());
  std::stable_sort(opts.begin(), opts.end(), [&](const OptionEntry& a, const OptionEntry& b) { return rank(a) < rank(b); });
  return opts;
}

std::vector<OptionEntry> Matcher::enumerate_falsities(const std::vector<MatchLine>& lines) const { return run(pack_.rules(), lines, true); }

std::vector<OptionEntry> Matcher::at(const std::string& label, const std::vector<int>& at_lines, const std::vector<MatchLine>& proof) const {
  std::vector<OptionEntry> out;
  std::map<int, const MatchLine*> by_label;
  for (const auto& l : proof) by_label[l.label] = &l;
  std::vector<MatchLine> picked;
  std::set<int> seen_lines;
  for (int t : at_lines) {
    auto it = by_label.find(t);
    if (it == by_label.end()) return out;
    if (!seen_lines.insert(t).second && !it->second->statement.out.empty()) return out;
    picked.push_back(*it->second);
  }
  std::set<Name> used;
  for (const auto& l : proof) {
    auto n = names_in({l.statement});
    used.insert(n.begin(), n.end());
  }
  for (const auto& r : pack_.rules_labelled(label)) {
    if (r.premise.size() != picked.size()) continue;
    Renaming m;
    bool ok = true;
    for (size_t k = 0; k < picked.size() && ok; ++k) ok = match_atomic(r.premise[k], picked[k].statement, m, pack_.constants);
    if (!ok) continue;
    OptionEntry o;
    o.axiom_label = label;
    o.lines = at_lines;
    o.falsity = !r.conclusion.has_value();
    if (!o.falsity) {
      o.conclusion = instantiate_conclusion(*r.conclusion, m, used, pack_.constants);
      o.pattern = *r.conclusion;
    }
    o.renaming = m;
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace vpc
