#include "vpc/equivalence.hpp"

#include <set>

namespace vpc {

namespace {
bool bind(const Name& pat, const Name& inst, Renaming& m, const Constants& consts) {
  if (consts.contains(pat)) return pat == inst;
  auto it = m.find(pat);
  if (it == m.end()) {
    m.emplace(pat, inst);
    return true;
  }
  return it->second == inst;
}

bool bind_list(const IoList& pat, const IoList& inst, Renaming& m, const Constants& consts) {
  if (pat.size() != inst.size()) return false;
  for (size_t i = 0; i < pat.size(); ++i)
    if (!bind(pat[i], inst[i], m, consts)) return false;
  return true;
}

bool match_program(const Program& pat, const Program& inst, Renaming& m, const Constants& consts) {
  if (pat.kind() != inst.kind()) return false;
  switch (pat.kind()) {
    case Program::Kind::Atomic: return match_atomic(pat.atom(), inst.atom(), m, consts);
    case Program::Kind::List:
      if (pat.items().size() != inst.items().size()) return false;
      for (size_t i = 0; i < pat.items().size(); ++i)
        if (!match_program(pat.items()[i], inst.items()[i], m, consts)) return false;
      return true;
    case Program::Kind::Disjunction:
      return match_program(pat.left(), inst.left(), m, consts) && match_program(pat.right(), inst.right(), m, consts);
  }
  return false;
}
}  // namespace

bool match_atomic(const Atomic& pattern, const Atomic& instance, Renaming& m, const Constants& consts) {
  if (pattern.name != instance.name) return false;
  return bind_list(pattern.in, instance.in, m, consts) && bind_list(pattern.out, instance.out, m, consts);
}

std::optional<Renaming> io_equiv(const std::vector<Atomic>& instance, const std::vector<Atomic>& pattern, const Constants& consts) {
  if (instance.size() != pattern.size()) return std::nullopt;
  Renaming m;
  for (size_t i = 0; i < pattern.size(); ++i)
    if (!match_atomic(pattern[i], instance[i], m, consts)) return std::nullopt;
  return m;
}

std::optional<Renaming> io_equiv(const Program& instance, const Program& pattern, const Constants& consts) {
  Renaming m;
  const Program pi = instance.is_list() ? instance : Program::list({instance});
  const Program pp = pattern.is_list() ? pattern : Program::list({pattern});
  if (!match_program(pp, pi, m, consts)) return std::nullopt;
  return m;
}

Atomic apply_renaming(const Atomic& a, const Renaming& m) {
  auto ren = [&](const IoList& l) {
    IoList out;
    for (const auto& n : l) {
      auto it = m.find(n);
      out.push_back(it == m.end() ? n : it->second);
    }
    return out;
  };
  return Atomic{a.name, ren(a.in), ren(a.out)};
}

Program apply_renaming(const Program& p, const Renaming& m) {
  switch (p.kind()) {
    case Program::Kind::Atomic: return Program::atomic(apply_renaming(p.atom(), m));
    case Program::Kind::List: {
      std::vector<Program> items;
      for (const auto& it : p.items()) items.push_back(apply_renaming(it, m));
      return Program::list(std::move(items));
    }
    case Program::Kind::Disjunction: return Program::disjunction(apply_renaming(p.left(), m), apply_renaming(p.right(), m));
  }
  return p;
}

namespace {
using Alternative = std::set<std::string>;
using Normal = std::set<Alternative>;

Normal normalize(const Program& p) {
  switch (p.kind()) {
    case Program::Kind::Atomic: return {Alternative{p.atom().render()}};
    case Program::Kind::List: {
      Normal acc{Alternative{}};
      for (const auto& it : p.items()) {
        Normal sub = normalize(it);
        Normal next;
        for (const auto& a : acc)
          for (const auto& b : sub) {
            Alternative merged = a;
            merged.insert(b.begin(), b.end());
            next.insert(std::move(merged));
          }
        acc = std::move(next);
      }
      return acc;
    }
    case Program::Kind::Disjunction: {
      Normal out = normalize(p.left());
      Normal r = normalize(p.right());
      out.insert(r.begin(), r.end());
      return out;
    }
  }
  return {};
}

// Drops alternatives the oracle reports false. A program with only false
// alternatives normalizes to the empty set, so all false programs coincide.
Normal live(const Normal& n, const FalsityOracle& is_false) {
  if (!is_false) return n;
  Normal out;
  for (const auto& alt : n) {
    std::vector<Program> items;
    for (const auto& a : alt) items.push_back(Program::atomic(parse_atomic(a)));
    if (!is_false(Program::list(items))) out.insert(alt);
  }
  return out;
}
}  // namespace

bool prog_equiv(const Program& p, const Program& q, const FalsityOracle& is_false) {
  return live(normalize(p), is_false) == live(normalize(q), is_false);
}

}  // namespace vpc
