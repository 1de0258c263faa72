#include "vpc/probe.hpp"

#include <algorithm>
#include <map>

#include "vpc/equivalence.hpp"
#include "vpc/structure.hpp"

namespace vpc {

namespace {

IntArray identity_array(int64_t n) {
  IntArray r;
  r.dims = {n, n};
  r.data.assign(static_cast<size_t>(n * n), 0);
  for (int64_t i = 0; i < n; ++i) r.data[static_cast<size_t>(i * n + i)] = 1;
  return r;
}

IntArray matrix2(int64_t a, int64_t b, int64_t c, int64_t d) { return IntArray{{2, 2}, {a, b, c, d}}; }

// unimodular pairs (x, x^-1)
const std::vector<std::pair<IntArray, IntArray>>& inverse_pairs() {
  static const std::vector<std::pair<IntArray, IntArray>> pairs = {
      {matrix2(1, 1, 0, 1), matrix2(1, -1, 0, 1)},
      {matrix2(2, 1, 1, 1), matrix2(1, -1, -1, 2)},
      {matrix2(0, 1, 1, 0), matrix2(0, 1, 1, 0)},
      {matrix2(-1, 0, 0, 1), matrix2(-1, 0, 0, 1)},
  };
  return pairs;
}

std::optional<IntArray> known_inverse(const IntArray& a) {
  if (a.dims.size() == 2 && a.dims[0] == a.dims[1] && a == identity_array(a.dims[0])) return a;
  for (const auto& [x, y] : inverse_pairs()) {
    if (a == x) return y;
    if (a == y) return x;
  }
  return std::nullopt;
}

}  // namespace

Sampler::Sampler(const Machine& m, uint64_t seed) : m_(m), rng_(seed) {}

int64_t Sampler::clip(__int128 v) const {
  const int64_t n = m_.config().N;
  if (v > n) return n;
  if (v < -n) return -n;
  return static_cast<int64_t>(v);
}

int64_t Sampler::sample_int() {
  const int64_t n = m_.config().N;
  int r = static_cast<int>(uniform(0, 99));
  int64_t v;
  if (r < 25) {
    v = clip(uniform(-3, 3));
  } else if (r < 35) {
    static const int64_t offs[] = {0, 1, -1};
    switch (uniform(0, 3)) {
      case 0: v = n; break;
      case 1: v = -n; break;
      case 2: v = n - 1; break;
      default: v = offs[uniform(0, 2)];
    }
  } else if (r < 50) {
    v = uniform(-n, n);
  } else if (r < 75) {
    v = clip(uniform(-8, 120));
  } else if (!int_pool_.empty()) {
    v = int_pool_[static_cast<size_t>(uniform(0, static_cast<int64_t>(int_pool_.size()) - 1))];
  } else {
    v = clip(uniform(-3, 3));
  }
  int_pool_.push_back(v);
  return v;
}

Interval Sampler::sample_interval() {
  Interval p;
  int r = static_cast<int>(uniform(0, 99));
  if (r < 8) {
    p = Interval::none();
  } else if (r < 30 && !interval_pool_.empty()) {
    p = interval_pool_[static_cast<size_t>(uniform(0, static_cast<int64_t>(interval_pool_.size()) - 1))];
  } else {
    int64_t x = sample_int(), y = coin(0.2) ? x : sample_int();
    p = Interval{false, std::min(x, y), std::max(x, y)};
  }
  interval_pool_.push_back(p);
  return p;
}

IntArray Sampler::sample_array() {
  IntArray a;
  a.dims = shape_.empty() ? std::vector<int64_t>{2, 2} : shape_;
  if (coin(0.15)) a.dims = coin(0.5) ? std::vector<int64_t>{uniform(1, 3)} : std::vector<int64_t>{uniform(1, 3), uniform(1, 3)};
  bool square = a.dims.size() == 2 && a.dims[0] == a.dims[1];
  int r = static_cast<int>(uniform(0, 99));
  if (r < 15) {
    a.data.assign(static_cast<size_t>(std::max<int64_t>(1, a.dims.size() == 1 ? a.dims[0] : a.dims[0] * a.dims[1])), 0);
  } else if (r < 30 && square) {
    a = identity_array(a.dims[0]);
  } else if (r < 40 && a.dims == std::vector<int64_t>{2, 2}) {
    const auto& pr = inverse_pairs()[static_cast<size_t>(uniform(0, static_cast<int64_t>(inverse_pairs().size()) - 1))];
    a = coin(0.5) ? pr.first : pr.second;
  } else if (r < 60 && !array_pool_.empty()) {
    a = array_pool_[static_cast<size_t>(uniform(0, static_cast<int64_t>(array_pool_.size()) - 1))];
  } else {
    int64_t count = 1;
    for (auto d : a.dims) count *= d;
    a.data.clear();
    for (int64_t i = 0; i < count; ++i) a.data.push_back(coin(0.9) ? clip(uniform(-3, 3)) : sample_int());
  }
  array_pool_.push_back(a);
  return a;
}

Atomic Sampler::random_object_atom() {
  static const std::vector<Name> ins = {"a", "b", "c", "0", "1"};
  static const std::vector<Name> outs = {"x", "y", "z", "w", "u", "v"};
  Atomic a;
  // object programs: plain integer statements
  static const std::vector<std::pair<Name, std::pair<int, int>>> shapes = {
      {"add", {2, 1}}, {"mult", {2, 1}}, {"lt", {2, 0}}, {"eqi", {2, 0}}, {"typei", {1, 0}}, {"id", {1, 1}}};
  const auto& sh = shapes[static_cast<size_t>(uniform(0, static_cast<int64_t>(shapes.size()) - 1))];
  a.name = sh.first;
  for (int i = 0; i < sh.second.first; ++i) a.in.push_back(ins[static_cast<size_t>(uniform(0, static_cast<int64_t>(ins.size()) - 1))]);
  for (int i = 0; i < sh.second.second; ++i) a.out.push_back(outs[static_cast<size_t>(uniform(0, static_cast<int64_t>(outs.size()) - 1))]);
  return a;
}

Program Sampler::sample_prog() {
  int r = static_cast<int>(uniform(0, 99));
  Program p;
  if (r < 15) {
    p = Program();
  } else if (r < 35 && !prog_pool_.empty()) {
    p = prog_pool_[static_cast<size_t>(uniform(0, static_cast<int64_t>(prog_pool_.size()) - 1))];
  } else if (r < 45) {
    p = Program::disjunction(Program::atomic(random_object_atom()), Program::atomic(random_object_atom()));
  } else {
    std::vector<Program> items;
    int64_t k = uniform(1, 3);
    for (int64_t i = 0; i < k; ++i) items.push_back(Program::atomic(random_object_atom()));
    p = k == 1 && coin(0.5) ? items[0] : Program::list(items);
  }
  prog_pool_.push_back(p);
  return p;
}

Value Sampler::fresh(SlotType t) {
  switch (t) {
    case SlotType::I: return sample_int();
    case SlotType::B: return sample_interval();
    case SlotType::A: return sample_array();
    case SlotType::P: return sample_prog();
  }
  return int64_t{0};
}

namespace {

Program rename_prog(const Program& p, const std::string& suffix) {
  Renaming m;
  for (const auto& a : p.atoms())
    for (const auto* l : {&a.in, &a.out})
      for (const auto& n : *l)
        if (!is_int_literal(n)) m[n] = n + suffix;
  return apply_renaming(p, m);
}

Program entry_premise(const StoreEntry& e) {
  std::vector<Program> items;
  for (const auto& a : e.premise) items.push_back(Program::atomic(a));
  return items.size() == 1 ? items[0] : Program::list(items);
}

}  // namespace

Value Sampler::guided(SlotType t, const Atomic& a, size_t slot, const Env& env) {
  const Signature* sig = m_.pack().signature(a.name);
  std::string impl = sig ? sig->impl : a.name;
  auto other = [&](size_t k) -> const Value* {
    if (k >= a.in.size()) return nullptr;
    const Name& n = a.in[k];
    if (is_int_literal(n)) {
      static thread_local Value lit;
      lit = static_cast<int64_t>(std::stoll(n));
      return &lit;
    }
    auto it = env.vars.find(n);
    return it == env.vars.end() ? nullptr : &it->second;
  };
  const Value* o = other(slot == 0 ? 1 : 0);
  if (!coin(0.65)) return fresh(t);
  if (impl == "eqi" || impl == "eqdi" || impl == "eqa" || impl == "eqv") {
    static const size_t index_of[] = {0, 1, 2, 4};  // I B A P within Value
    if (o && o->index() == index_of[static_cast<int>(t)]) return *o;
  }
  if (t == SlotType::I && (impl == "lt" || impl == "le" || impl == "neq" || impl == "min" || impl == "max" || impl == "min1" || impl == "max1" ||
                           impl == "min2" || impl == "max2")) {
    if (o && std::holds_alternative<int64_t>(*o)) {
      int64_t d = uniform(impl == "lt" ? 1 : 0, 3);
      return clip(static_cast<__int128>(std::get<int64_t>(*o)) + (slot == 0 ? -d : d));
    }
  }
  if (impl == "int" && slot == 1 && o && std::holds_alternative<int64_t>(*o))
    return clip(static_cast<__int128>(std::get<int64_t>(*o)) + uniform(0, 5));
  if (impl == "tentenc" && t == SlotType::B) {
    int64_t top = 2 * m_.config().tent_a;
    if (coin(0.4)) return Interval{false, 0, top};
    int64_t x = uniform(0, top), y = uniform(0, top);
    return Interval{false, std::min(x, y), std::max(x, y)};
  }
  if (impl == "intelt" && a.in.size() == 2) {
    if (slot == 0 && o && std::holds_alternative<Interval>(*o) && !std::get<Interval>(*o).empty) {
      const auto& p = std::get<Interval>(*o);
      return uniform(p.lo, p.hi);
    }
    if (slot == 1 && o && std::holds_alternative<int64_t>(*o)) {
      int64_t v = std::get<int64_t>(*o);
      return Interval{false, clip(static_cast<__int128>(v) - uniform(0, 4)), clip(static_cast<__int128>(v) + uniform(0, 4))};
    }
  }
  if (impl == "intenc" && a.in.size() == 2 && o && std::holds_alternative<Interval>(*o) && !std::get<Interval>(*o).empty) {
    const auto& p = std::get<Interval>(*o);
    if (slot == 0) {
      int64_t x = uniform(p.lo, p.hi), y = uniform(p.lo, p.hi);
      return Interval{false, std::min(x, y), std::max(x, y)};
    }
    return Interval{false, clip(static_cast<__int128>(p.lo) - uniform(0, 4)), clip(static_cast<__int128>(p.hi) + uniform(0, 4))};
  }
  if ((impl == "dima" || impl == "lta" || impl == "adda" || impl == "lea") && o && std::holds_alternative<IntArray>(*o)) {
    IntArray b = std::get<IntArray>(*o);
    for (auto& e : b.data) {
      int64_t d = impl == "lta" || impl == "lea" ? uniform(1, 3) : uniform(-3, 3);
      e = clip(static_cast<__int128>(e) + (slot == 0 ? -d : d));
    }
    return b;
  }
  if (impl == "invm") {
    if (o && std::holds_alternative<IntArray>(*o))
      if (auto inv = known_inverse(std::get<IntArray>(*o))) return *inv;
    const auto& pr = inverse_pairs()[static_cast<size_t>(uniform(0, static_cast<int64_t>(inverse_pairs().size()) - 1))];
    return coin(0.5) ? pr.first : pr.second;
  }
  if (t == SlotType::P) {
    if ((impl == "eqio" || impl == "sub") && o && std::holds_alternative<Program>(*o)) {
      const Program& q = std::get<Program>(*o);
      if (impl == "eqio") return rename_prog(q, "r");
      // sub [q p]: q within p
      if (slot == 1) return Program::list({q, Program::atomic(random_object_atom())});
      auto el = q.elements();
      if (!el.empty()) return el[static_cast<size_t>(uniform(0, static_cast<int64_t>(el.size()) - 1))];
    }
  }
  return fresh(t);
}

std::optional<Program> Sampler::related_prog(const Name& n, const std::vector<Atomic>& premise, const Env& env) {
  auto prog_of = [&](const Name& v) -> const Program* {
    auto it = env.vars.find(v);
    return it != env.vars.end() && std::holds_alternative<Program>(it->second) ? &std::get<Program>(it->second) : nullptr;
  };
  // conc [x n] next to conc [x' c'] where x is a renamed x': rename c' alike
  for (const auto& a : premise) {
    if (a.name != "conc" || a.in.size() != 2 || a.in[1] != n) continue;
    const Program* x = prog_of(a.in[0]);
    if (!x) continue;
    for (const auto& b : premise) {
      if (b.name != "conc" || b.in.size() != 2 || &b == &a) continue;
      const Program *x2 = prog_of(b.in[0]), *c2 = prog_of(b.in[1]);
      if (x2 && c2 && rename_prog(*x2, "r") == *x) return rename_prog(*c2, "r");
    }
  }
  for (const auto& a : premise) {
    if (a.in.size() != 2 || (a.name != "eqio" && a.name != "eqv" && a.name != "sub")) continue;
    size_t slot = a.in[0] == n ? 0 : a.in[1] == n ? 1 : 2;
    if (slot == 2) continue;
    auto it = env.vars.find(a.in[1 - slot]);
    if (it == env.vars.end() || !std::holds_alternative<Program>(it->second)) continue;
    const Program& o = std::get<Program>(it->second);
    if (a.name == "eqio") return rename_prog(o, "r");
    if (a.name == "eqv") return o;
    // sub [q p]: q within p
    if (slot == 1) return Program::list({o, Program::atomic(random_object_atom())});
    auto el = o.elements();
    if (!el.empty()) return el[static_cast<size_t>(uniform(0, static_cast<int64_t>(el.size()) - 1))];
  }
  return std::nullopt;
}

std::optional<Program> Sampler::matching_conclusion(const Program& p) {
  const TheoryPack* obj = m_.object_pack();
  std::vector<Atomic> inst;
  for (const auto& e : p.elements()) {
    if (!e.is_atomic()) return std::nullopt;
    inst.push_back(e.atom());
  }
  std::vector<Program> found;
  for (const auto& e : obj->entries) {
    if (e.falsity) continue;
    auto m = io_equiv(inst, e.premise, obj->constants);
    if (!m) continue;
    for (const auto& x : e.conclusion.out)
      if (!m->count(x)) (*m)[x] = x + "9";
    found.push_back(Program::atomic(apply_renaming(e.conclusion, *m)));
  }
  if (found.empty()) return std::nullopt;
  return found[static_cast<size_t>(uniform(0, static_cast<int64_t>(found.size()) - 1))];
}

Env Sampler::sample(const std::vector<Atomic>& premise, const std::vector<Atomic>& conclusion) {
  Env env;
  int_pool_.clear();
  interval_pool_.clear();
  array_pool_.clear();
  prog_pool_.clear();
  if (coin(0.75)) {
    int64_t n = uniform(1, 3);
    shape_ = {n, n};
  } else {
    shape_ = coin(0.5) ? std::vector<int64_t>{uniform(1, 3)} : std::vector<int64_t>{uniform(1, 3), uniform(1, 3)};
  }
  const TheoryPack& pack = m_.pack();
  std::set<Name> produced;
  std::map<Name, Value> pending;
  auto visit = [&](const Atomic& a, bool guide) {
    const Signature* sig = pack.signature(a.name);
    for (size_t i = 0; i < a.in.size(); ++i) {
      const Name& n = a.in[i];
      if (pack.constants.contains(n) || env.has(n) || produced.count(n)) continue;
      if (auto it = pending.find(n); it != pending.end()) {
        env.vars.emplace(n, it->second);
        continue;
      }
      SlotType t = sig && i < sig->in.size() ? sig->in[i] : SlotType::I;
      // paired higher-order values come from one object store entry
      if (t == SlotType::P && guide && m_.object_pack()) {
        const TheoryPack& obj = *m_.object_pack();
        if (coin(0.65))
          if (auto v = related_prog(n, premise, env)) {
            env.vars.emplace(n, *v);
            continue;
          }
        if (a.name == "ext" && i == 1 && env.has(a.in[0]) && coin(0.65))
          if (auto v = matching_conclusion(std::get<Program>(env.vars.at(a.in[0])))) {
            env.vars.emplace(n, *v);
            continue;
          }
        if (a.name == "epd" && i == 0 && a.in.size() == 3 && coin(0.65)) {
          const StoreEntry& e = obj.entries[static_cast<size_t>(uniform(0, static_cast<int64_t>(obj.entries.size()) - 1))];
          if (!e.falsity) {
            Program q = entry_premise(e);
            env.vars.emplace(n, q);
            if (!env.has(a.in[1])) pending[a.in[1]] = coin(0.5) ? q : Program::list({q, Program::atomic(random_object_atom())});
            if (!env.has(a.in[2])) pending[a.in[2]] = Program::atomic(e.conclusion);
            continue;
          }
        }
        if ((a.name == "ext" || a.name == "aext") && i == 0 && a.in.size() == 2 && coin(0.6) && !obj.entries.empty()) {
          const StoreEntry& e = obj.entries[static_cast<size_t>(uniform(0, static_cast<int64_t>(obj.entries.size()) - 1))];
          if (!e.falsity) {
            std::string suffix = coin(0.5) ? "" : "s";
            env.vars.emplace(n, rename_prog(entry_premise(e), suffix));
            if (!env.has(a.in[1]) && !pack.constants.contains(a.in[1])) pending[a.in[1]] = rename_prog(Program::atomic(e.conclusion), suffix);
            continue;
          }
        }
        if (a.name == "false" && coin(0.6)) {
          std::vector<const StoreEntry*> fs;
          for (const auto& e : obj.entries)
            if (e.falsity) fs.push_back(&e);
          if (!fs.empty()) {
            Program p = entry_premise(*fs[static_cast<size_t>(uniform(0, static_cast<int64_t>(fs.size()) - 1))]);
            if (coin(0.3)) p = Program::list({p, Program::atomic(random_object_atom())});
            env.vars.emplace(n, p);
            continue;
          }
        }
      }
      env.vars.emplace(n, guide ? guided(t, a, i, env) : fresh(t));
    }
    produced.insert(a.out.begin(), a.out.end());
  };
  for (const auto& a : premise) visit(a, true);
  for (const auto& a : conclusion) visit(a, false);
  return env;
}

EntryProbe probe_entry(const Machine& m, const StoreEntry& e, size_t trials, uint64_t seed) {
  EntryProbe r;
  r.label = e.label;
  r.falsity = e.falsity;
  Sampler s(m, seed);
  std::vector<Atomic> concl;
  if (!e.falsity) concl.push_back(e.conclusion);
  for (size_t t = 0; t < trials; ++t) {
    ++r.trials;
    // a few redraws per trial so that narrow premises still get exercised
    Env env;
    std::string before;
    bool ran = false;
    for (int attempt = 0; attempt < 8 && !ran; ++attempt) {
      env = s.sample(e.premise, concl);
      before.clear();
      for (const auto& [k, v] : env.vars) before += (before.empty() ? "" : " ") + k + "=" + render_value(v);
      try {
        m.exec(e.premise, env);
        ran = true;
      } catch (const ExecError&) {
      }
    }
    if (!ran) continue;
    ++r.premise_computable;
    if (e.falsity) {
      r.violations.push_back({before, "falsity premise executed"});
      continue;
    }
    try {
      m.exec(concl, env);
    } catch (const ExecError& err) {
      r.violations.push_back({before, err.what()});
    }
  }
  return r;
}

size_t ProbeReport::violations() const {
  size_t n = 0;
  for (const auto& e : entries) n += e.violations.size();
  return n;
}

ProbeReport probe_pack(const Machine& m, size_t trials, uint64_t seed) {
  ProbeReport rep;
  for (const auto& e : m.pack().entries) {
    if (e.kind != EntryKind::Axiom) continue;
    // per-entry seeds keep results stable when entries are added or removed elsewhere
    std::seed_seq sq{seed, static_cast<uint64_t>(std::hash<std::string>{}(e.label))};
    uint64_t s;
    sq.generate(reinterpret_cast<uint32_t*>(&s), reinterpret_cast<uint32_t*>(&s) + 2);
    rep.entries.push_back(probe_entry(m, e, trials, s));
  }
  return rep;
}

}  // namespace vpc
