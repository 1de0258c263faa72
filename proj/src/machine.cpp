#include "vpc/machine.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "vpc/equivalence.hpp"
#include "vpc/matcher.hpp"
#include "vpc/structure.hpp"

namespace vpc {

const char* to_string(ExecErrorKind k) {
  switch (k) {
    case ExecErrorKind::TypeViolation: return "TypeViolation";
    case ExecErrorKind::Overflow: return "Overflow";
    case ExecErrorKind::DivisionError: return "DivisionError";
    case ExecErrorKind::RelationFailure: return "RelationFailure";
    case ExecErrorKind::DisjunctionViolation: return "DisjunctionViolation";
  }
  return "?";
}

namespace {

std::string render_array(const IntArray& a) {
  std::string s = "A(";
  for (size_t i = 0; i < a.dims.size(); ++i) s += (i ? "," : "") + std::to_string(a.dims[i]);
  s += ")[";
  for (size_t i = 0; i < a.data.size(); ++i) s += (i ? " " : "") + std::to_string(a.data[i]);
  return s + "]";
}

}  // namespace

std::string render_value(const Value& v) {
  struct {
    std::string operator()(int64_t i) const { return std::to_string(i); }
    std::string operator()(const Interval& p) const {
      return p.empty ? "ei" : "[" + std::to_string(p.lo) + " " + std::to_string(p.hi) + "]";
    }
    std::string operator()(const IntArray& a) const { return render_array(a); }
    std::string operator()(const Box& b) const { return "box(" + render_array(b.lo) + ", " + render_array(b.hi) + ")"; }
    std::string operator()(const Program& p) const { return "{" + p.render() + "}"; }
  } vis;
  return std::visit(vis, v);
}

bool values_equal(const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return x == std::get<T>(b);
      },
      a);
}

std::pair<Name, Value> parse_binding(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("binding must look like name=value: " + text);
  Name name = text.substr(0, eq);
  std::string rhs = text.substr(eq + 1);
  auto bad = [&]() -> std::invalid_argument { return std::invalid_argument("cannot parse value '" + rhs + "'"); };
  auto parse_int = [&](const std::string& s) -> int64_t {
    size_t used = 0;
    int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (...) {
      throw bad();
    }
    if (used != s.size()) throw bad();
    return v;
  };
  if (rhs == "ei") return {name, Interval::none()};
  if (!rhs.empty() && rhs[0] == '[') {
    if (rhs.back() != ']') throw bad();
    std::istringstream is(rhs.substr(1, rhs.size() - 2));
    std::string a, b, extra;
    if (!(is >> a >> b) || (is >> extra)) throw bad();
    Interval p{false, parse_int(a), parse_int(b)};
    if (p.lo > p.hi) throw std::invalid_argument("interval with lo > hi: " + rhs);
    return {name, p};
  }
  if (rhs.rfind("A(", 0) == 0) {
    auto close = rhs.find(')');
    if (close == std::string::npos || close + 1 >= rhs.size() || rhs[close + 1] != '[' || rhs.back() != ']') throw bad();
    IntArray arr;
    std::string dims = rhs.substr(2, close - 2);
    std::replace(dims.begin(), dims.end(), ',', ' ');
    std::istringstream ds(dims);
    std::string d;
    int64_t count = 1;
    while (ds >> d) {
      int64_t k = parse_int(d);
      if (k < 1) throw bad();
      arr.dims.push_back(k);
      count *= k;
    }
    std::istringstream es(rhs.substr(close + 2, rhs.size() - close - 3));
    std::string e;
    while (es >> e) arr.data.push_back(parse_int(e));
    if (arr.dims.empty() || static_cast<int64_t>(arr.data.size()) != count)
      throw std::invalid_argument("array element count does not match dimensions: " + rhs);
    return {name, arr};
  }
  if (!rhs.empty() && rhs[0] == '{' && rhs.back() == '}') return {name, parse_program(rhs.substr(1, rhs.size() - 2))};
  return {name, parse_int(rhs)};
}

Machine::Machine(const TheoryPack& pack, MachineConfig cfg, const TheoryPack* object) : pack_(pack), cfg_(cfg), object_(object) {
  if (cfg_.N < 1) throw std::invalid_argument("N must be at least 1");
}

int64_t Machine::checked(__int128 v, const Atomic& at) const {
  if (v > cfg_.N || v < -static_cast<__int128>(cfg_.N)) throw ExecError(ExecErrorKind::Overflow, at.render(), "result exceeds N");
  return static_cast<int64_t>(v);
}

void Machine::bind(Env& env, const Name& n, Value v, const Atomic& at) const {
  if (env.has(n)) throw ExecError(ExecErrorKind::TypeViolation, at.render(), "'" + n + "' is already bound");
  env.vars.emplace(n, std::move(v));
}

Value Machine::lookup(const Name& n, const Env& env, const Atomic& at) const {
  if (is_int_literal(n)) {
    __int128 v = 0;
    try {
      v = std::stoll(n);
    } catch (...) {
      throw ExecError(ExecErrorKind::Overflow, at.render(), "literal " + n + " out of range");
    }
    return checked(v, at);
  }
  if (auto it = env.vars.find(n); it != env.vars.end()) return it->second;
  if (n == "ei") return Interval::none();
  if (n == "ep") return Program();
  throw ExecError(ExecErrorKind::TypeViolation, at.render(), "'" + n + "' has no value");
}

int64_t Machine::tent(int64_t v) const {
  const int64_t a = cfg_.tent_a;
  if (v >= 0 && v <= a) return 2 * v;
  if (v > a && v <= 2 * a) return 2 * (2 * a - v);
  throw std::out_of_range("tent map argument " + std::to_string(v) + " outside [0, " + std::to_string(2 * a) + "]");
}

namespace {

// Alternatives of a program with disjunctions distributed out.
std::vector<std::vector<Atomic>> alternatives(const Program& p) {
  if (p.is_atomic()) return {{p.atom()}};
  if (p.is_disjunction()) {
    auto l = alternatives(p.left()), r = alternatives(p.right());
    l.insert(l.end(), r.begin(), r.end());
    return l;
  }
  std::vector<std::vector<Atomic>> acc{{}};
  for (const auto& e : p.items()) {
    std::vector<std::vector<Atomic>> next;
    for (const auto& alt : alternatives(e))
      for (const auto& prefix : acc) {
        auto v = prefix;
        v.insert(v.end(), alt.begin(), alt.end());
        next.push_back(std::move(v));
      }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

bool Machine::prog_is_false(const Program& p, const TypeLedger& ledger) const {
  if (ledger.falsy.count(p.render())) return true;
  if (!object_) return false;
  // false when every alternative contains an instance of a falsity premise
  for (const auto& alt : alternatives(p)) {
    std::vector<MatchLine> lines;
    int k = 1;
    for (const auto& a : alt) lines.push_back({k++, a});
    bool hit = false;
    for (const auto& entry : object_->entries)
      if (entry.falsity && !match_premise(entry.premise, lines, object_->constants).empty()) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

bool Machine::prog_is_ext(const Program& p, const Program& c, const TypeLedger& ledger) const {
  if (ledger.ext.count(p.render() + "|" + c.render())) return true;
  if (!object_ || !is_valid(Program::list({p, c}), object_->constants)) return false;
  auto ce = c.elements();
  if (ce.size() != 1 || !ce[0].is_atomic()) return false;
  std::vector<Atomic> inst;
  for (const auto& e : p.elements()) {
    if (!e.is_atomic()) return false;
    inst.push_back(e.atom());
  }
  inst.push_back(ce[0].atom());
  for (const auto& entry : object_->entries) {
    if (entry.falsity) continue;
    auto pat = entry.premise;
    pat.push_back(entry.conclusion);
    if (io_equiv(inst, pat, object_->constants)) return true;
  }
  return false;
}

void Machine::exec(const std::vector<Atomic>& list, Env& env) const {
  for (const auto& a : list) exec(a, env);
}

void Machine::exec(const Program& p, Env& env) const {
  switch (p.kind()) {
    case Program::Kind::Atomic: exec(p.atom(), env); return;
    case Program::Kind::List:
      for (const auto& e : p.items()) exec(e, env);
      return;
    case Program::Kind::Disjunction: {
      for (const Program* op : {&p.left(), &p.right()}) {
        Env trial = env;
        try {
          exec(*op, trial);
          env = std::move(trial);
          return;
        } catch (const ExecError&) {
        }
      }
      throw ExecError(ExecErrorKind::DisjunctionViolation, p.render(), "both operands failed");
    }
  }
}

bool Machine::computable(const Program& p, Env env) const {
  try {
    exec(p, env);
    return true;
  } catch (const ExecError&) {
    return false;
  }
}

bool Machine::computable(const std::vector<Atomic>& list, Env env) const {
  try {
    exec(list, env);
    return true;
  } catch (const ExecError&) {
    return false;
  }
}

void Machine::exec(const Atomic& a, Env& env) const {
  if (const SpecialList* l = pack_.find_list(a.name)) return exec_list(*l, a, env);
  if (const SpecialDisj* d = pack_.find_disj(a.name)) return exec_disj(*d, a, env);
  const Signature* sig = pack_.signature(a.name);
  if (!sig || sig->kind == ProgramKind::Special) throw ExecError(ExecErrorKind::TypeViolation, a.render(), "no semantics for '" + a.name + "'");
  if (sig->in.size() != a.in.size() || sig->out.size() != a.out.size()) throw ExecError(ExecErrorKind::TypeViolation, a.render(), "arity mismatch");
  exec_builtin(*sig, a, env);
}

namespace {

// Runs a definition body in a scope holding the formal names only.
struct Scope {
  Env local;
  static Scope enter(const Machine& m, const Atomic& head, const Atomic& a, const Env& env, const Constants& consts) {
    Scope s;
    s.local.ledger = env.ledger;
    if (head.in.size() != a.in.size() || head.out.size() != a.out.size())
      throw ExecError(ExecErrorKind::TypeViolation, a.render(), "arity differs from definition");
    for (size_t i = 0; i < head.in.size(); ++i) {
      Value v = m.lookup(a.in[i], env, a);
      const Name& f = head.in[i];
      if (consts.contains(f)) {
        if (!values_equal(v, m.lookup(f, s.local, a))) throw ExecError(ExecErrorKind::TypeViolation, a.render(), "argument " + a.in[i] + " must be " + f);
        continue;
      }
      if (auto it = s.local.vars.find(f); it != s.local.vars.end()) {
        if (!values_equal(it->second, v)) throw ExecError(ExecErrorKind::TypeViolation, a.render(), "repeated formal " + f + " bound twice");
        continue;
      }
      s.local.vars.emplace(f, std::move(v));
    }
    return s;
  }
  void leave(const Atomic& head, const Atomic& a, Env& env, const std::function<void(Env&, const Name&, Value)>& bind) {
    for (size_t j = 0; j < head.out.size(); ++j) {
      auto it = local.vars.find(head.out[j]);
      if (it == local.vars.end()) throw ExecError(ExecErrorKind::TypeViolation, a.render(), "definition does not produce " + head.out[j]);
      bind(env, a.out[j], it->second);
    }
    env.ledger = local.ledger;
  }
};

}  // namespace

void Machine::exec_list(const SpecialList& def, const Atomic& a, Env& env) const {
  Scope s = Scope::enter(*this, def.head, a, env, pack_.constants);
  for (const auto& b : def.body) exec(b, s.local);
  s.leave(def.head, a, env, [&](Env& e, const Name& n, Value v) { bind(e, n, std::move(v), a); });
}

void Machine::exec_disj(const SpecialDisj& def, const Atomic& a, Env& env) const {
  for (const Atomic* op : {&def.left, &def.right}) {
    try {
      Scope s = Scope::enter(*this, def.head, a, env, pack_.constants);
      exec(*op, s.local);
      Env out = env;
      s.leave(def.head, a, out, [&](Env& e, const Name& n, Value v) { bind(e, n, std::move(v), a); });
      env = std::move(out);
      return;
    } catch (const ExecError&) {
    }
  }
  throw ExecError(ExecErrorKind::DisjunctionViolation, a.render(), "both operands failed");
}

namespace {

int64_t count_of(const std::vector<int64_t>& dims) {
  int64_t c = 1;
  for (auto d : dims) c *= d;
  return c;
}

IntArray identity(int64_t n) {
  IntArray r;
  r.dims = {n, n};
  r.data.assign(static_cast<size_t>(n * n), 0);
  for (int64_t i = 0; i < n; ++i) r.data[static_cast<size_t>(i * n + i)] = 1;
  return r;
}

bool is_square(const IntArray& a) { return a.dims.size() == 2 && a.dims[0] == a.dims[1]; }

}  // namespace

void Machine::exec_builtin(const Signature& sig, const Atomic& a, Env& env) const {
  const std::string at = a.render();
  auto fail = [&](ExecErrorKind k, const std::string& why) -> ExecError { return ExecError(k, at, why); };
  auto relation = [&](bool ok, const char* why) {
    if (!ok) throw fail(ExecErrorKind::RelationFailure, why);
  };

  // entry type checks
  std::vector<Value> in;
  for (size_t i = 0; i < a.in.size(); ++i) {
    Value v = lookup(a.in[i], env, a);
    bool ok = true;
    switch (sig.in[i]) {
      case SlotType::I:
        ok = std::holds_alternative<int64_t>(v);
        if (ok) checked(std::get<int64_t>(v), a);
        break;
      case SlotType::B: ok = std::holds_alternative<Interval>(v); break;
      case SlotType::A: {
        ok = std::holds_alternative<IntArray>(v);
        if (ok) {
          const auto& arr = std::get<IntArray>(v);
          ok = static_cast<size_t>(count_of(arr.dims)) == arr.data.size() && arr.data.size() <= cfg_.M;
          for (auto e : arr.data) checked(e, a);
        }
        break;
      }
      case SlotType::P: ok = std::holds_alternative<Program>(v); break;
    }
    if (!ok) throw fail(ExecErrorKind::TypeViolation, "input " + a.in[i] + " is not of type " + std::string(1, to_char(sig.in[i])));
    in.push_back(std::move(v));
  }
  auto I = [&](size_t k) { return std::get<int64_t>(in[k]); };
  auto B = [&](size_t k) -> const Interval& { return std::get<Interval>(in[k]); };
  auto A = [&](size_t k) -> const IntArray& { return std::get<IntArray>(in[k]); };
  auto P = [&](size_t k) -> const Program& { return std::get<Program>(in[k]); };
  auto out = [&](size_t k, Value v) { bind(env, a.out[k], std::move(v), a); };
  auto nonempty = [&](const Interval& p) {
    if (p.empty) throw fail(ExecErrorKind::TypeViolation, "empty interval");
  };
  auto same_dims = [&](const IntArray& x, const IntArray& y) {
    if (x.dims != y.dims) throw fail(ExecErrorKind::TypeViolation, "dimension lists differ");
  };
  const Constants& obj_consts = object_ ? object_->constants : pack_.constants;
  auto valid_prog = [&](const Program& p) { return is_valid(p, obj_consts); };

  const std::string& f = sig.impl;
  // integers
  if (f == "typei") return;
  if (f == "lt") return relation(I(0) < I(1), "not less than");
  if (f == "eqi") return relation(I(0) == I(1), "not equal");
  if (f == "id") return out(0, I(0));
  if (f == "add") return out(0, checked(static_cast<__int128>(I(0)) + I(1), a));
  if (f == "mult") return out(0, checked(static_cast<__int128>(I(0)) * I(1), a));
  if (f == "div") {
    if (I(1) == 0) throw fail(ExecErrorKind::DivisionError, "division by zero");
    if (I(0) % I(1) != 0) throw fail(ExecErrorKind::DivisionError, "not an exact multiple");
    return out(0, checked(static_cast<__int128>(I(0)) / I(1), a));
  }
  // intervals
  if (f == "typedi") return;
  if (f == "eqdi") return relation(B(0) == B(1), "intervals differ");
  if (f == "intelt") return relation(!B(1).empty && B(1).lo <= I(0) && I(0) <= B(1).hi, "not an element");
  if (f == "intenc") return relation(!B(0).empty && !B(1).empty && B(1).lo <= B(0).lo && B(0).hi <= B(1).hi, "not enclosed");
  if (f == "int") {
    relation(I(0) <= I(1), "lower bound exceeds upper bound");
    return out(0, Interval{false, I(0), I(1)});
  }
  if (f == "iddi") return out(0, B(0));
  if (f == "adddi") {
    nonempty(B(0));
    nonempty(B(1));
    return out(0, Interval{false, checked(static_cast<__int128>(B(0).lo) + B(1).lo, a), checked(static_cast<__int128>(B(0).hi) + B(1).hi, a)});
  }
  if (f == "multdi") {
    nonempty(B(0));
    nonempty(B(1));
    __int128 c[4] = {static_cast<__int128>(B(0).lo) * B(1).lo, static_cast<__int128>(B(0).lo) * B(1).hi,
                     static_cast<__int128>(B(0).hi) * B(1).lo, static_cast<__int128>(B(0).hi) * B(1).hi};
    return out(0, Interval{false, checked(*std::min_element(c, c + 4), a), checked(*std::max_element(c, c + 4), a)});
  }
  if (f == "smultdi") {
    nonempty(B(1));
    __int128 x = static_cast<__int128>(I(0)) * B(1).lo, y = static_cast<__int128>(I(0)) * B(1).hi;
    if (I(0) < 0) std::swap(x, y);
    return out(0, Interval{false, checked(x, a), checked(y, a)});
  }
  if (f == "cup") {
    if (B(0).empty) return out(0, B(1));
    if (B(1).empty) return out(0, B(0));
    return out(0, Interval{false, std::min(B(0).lo, B(1).lo), std::max(B(0).hi, B(1).hi)});
  }
  if (f == "tent") {
    try {
      return out(0, checked(tent(I(0)), a));
    } catch (const std::out_of_range& e) {
      throw fail(ExecErrorKind::RelationFailure, e.what());
    }
  }
  if (f == "tentiter") {
    relation(I(1) >= 0, "negative iteration count");
    int64_t v = I(0), n = I(1);
    std::unordered_map<int64_t, int64_t> seen;  // value -> step first seen
    std::vector<int64_t> orbit;
    for (int64_t t = 0; t < n; ++t) {
      if (auto it = seen.find(v); it != seen.end()) {
        int64_t start = it->second, period = t - start;
        v = orbit[static_cast<size_t>(start + (n - start) % period)];
        break;
      }
      seen.emplace(v, t);
      orbit.push_back(v);
      try {
        v = checked(tent(v), a);
      } catch (const std::out_of_range& e) {
        throw fail(ExecErrorKind::RelationFailure, e.what());
      }
    }
    return out(0, v);
  }
  if (f == "tentenc") {
    nonempty(B(0));
    const int64_t ta = cfg_.tent_a;
    relation(B(0).lo >= 0 && B(0).hi <= 2 * ta, "interval outside the map domain");
    Interval q = Interval::none();
    auto join = [&](int64_t x, int64_t y) {
      q = q.empty ? Interval{false, std::min(x, y), std::max(x, y)} : Interval{false, std::min({q.lo, x, y}), std::max({q.hi, x, y})};
    };
    if (B(0).lo <= ta) join(2 * B(0).lo, 2 * std::min(B(0).hi, ta));
    if (B(0).hi >= ta) join(2 * (2 * ta - std::max(B(0).lo, ta)), 2 * (2 * ta - B(0).hi));
    checked(q.lo, a);
    checked(q.hi, a);
    return out(0, q);
  }
  // arrays
  if (f == "typea") return;
  if (f == "eqa") return relation(A(0) == A(1), "arrays differ");
  if (f == "dima") return relation(A(0).dims == A(1).dims, "dimension lists differ");
  if (f == "lta") {
    same_dims(A(0), A(1));
    for (size_t i = 0; i < A(0).data.size(); ++i) relation(A(0).data[i] < A(1).data[i], "not elementwise less");
    return;
  }
  if (f == "adda") {
    same_dims(A(0), A(1));
    IntArray r = A(0);
    for (size_t i = 0; i < r.data.size(); ++i) r.data[i] = checked(static_cast<__int128>(r.data[i]) + A(1).data[i], a);
    return out(0, r);
  }
  if (f == "smult" || f == "double") {
    const IntArray& src = f == "smult" ? A(1) : A(0);
    int64_t c = f == "smult" ? I(0) : 2;
    IntArray r = src;
    for (auto& e : r.data) e = checked(static_cast<__int128>(c) * e, a);
    return out(0, r);
  }
  if (f == "zarr") {
    IntArray r = A(0);
    std::fill(r.data.begin(), r.data.end(), 0);
    return out(0, r);
  }
  if (f == "multa") {
    const IntArray &x = A(0), &y = A(1);
    if (x.dims.empty() || y.dims.empty()) throw fail(ExecErrorKind::TypeViolation, "scalar operand");
    int64_t k = x.dims.back();
    if (y.dims.front() != k) throw fail(ExecErrorKind::TypeViolation, "inner dimensions differ");
    IntArray r;
    r.dims.assign(x.dims.begin(), x.dims.end() - 1);
    r.dims.insert(r.dims.end(), y.dims.begin() + 1, y.dims.end());
    int64_t rows = count_of(x.dims) / k, cols = count_of(y.dims) / k;
    if (static_cast<size_t>(rows * cols) > cfg_.M) throw fail(ExecErrorKind::TypeViolation, "array too large");
    r.data.resize(static_cast<size_t>(rows * cols));
    for (int64_t i = 0; i < rows; ++i)
      for (int64_t j = 0; j < cols; ++j) {
        __int128 s = 0;
        for (int64_t t = 0; t < k; ++t) s += static_cast<__int128>(x.data[static_cast<size_t>(i * k + t)]) * y.data[static_cast<size_t>(t * cols + j)];
        r.data[static_cast<size_t>(i * cols + j)] = checked(s, a);
      }
    return out(0, r);
  }
  // matrices
  if (f == "sqrm") return relation(is_square(A(0)), "not a square matrix");
  if ((f == "lid" || f == "rid") && A(0).dims.empty()) throw fail(ExecErrorKind::TypeViolation, "scalar operand");
  if (f == "lid") return out(0, identity(A(0).dims.front()));
  if (f == "rid") return out(0, identity(A(0).dims.back()));
  if (f == "invm") {
    relation(is_square(A(0)) && A(0).dims == A(1).dims, "not square matrices of equal size");
    int64_t n = A(0).dims[0];
    IntArray id = identity(n);
    for (int pass = 0; pass < 2; ++pass) {
      const IntArray &x = pass ? A(1) : A(0), &y = pass ? A(0) : A(1);
      for (int64_t i = 0; i < n; ++i)
        for (int64_t j = 0; j < n; ++j) {
          __int128 s = 0;
          for (int64_t t = 0; t < n; ++t) s += static_cast<__int128>(x.data[static_cast<size_t>(i * n + t)]) * y.data[static_cast<size_t>(t * n + j)];
          relation(s == id.data[static_cast<size_t>(i * n + j)], "product is not the identity");
        }
    }
    return;
  }
  // programs as values
  if (f == "typep") return relation(valid_prog(P(0)), "not a valid program");
  if (f == "eqv") {
    auto oracle = [&](const Program& p) { return prog_is_false(p, env.ledger); };
    return relation(prog_equiv(P(0), P(1), oracle), "programs not equivalent");
  }
  if (f == "eqio") return relation(io_equiv(P(0), P(1), obj_consts).has_value(), "programs not I/O equivalent");
  if (f == "sub") return relation(sublist(P(0), P(1)), "not a sublist");
  if (f == "ext") return relation(prog_is_ext(P(0), P(1), env.ledger), "not an extension");
  if (f == "false") return relation(prog_is_false(P(0), env.ledger), "not known to be false");
  if (f == "aext") {
    env.ledger.ext.insert(P(0).render() + "|" + P(1).render());
    return;
  }
  if (f == "afalse") {
    env.ledger.falsy.insert(P(0).render());
    return;
  }
  if (f == "conc") {
    Program r = Program::list({P(0), P(1)});
    if (!valid_prog(r)) throw fail(ExecErrorKind::TypeViolation, "concatenation is not a valid program");
    return out(0, r);
  }
  if (f == "disj") {
    if (!valid_prog(P(0)) || !valid_prog(P(1))) throw fail(ExecErrorKind::TypeViolation, "operand is not a valid program");
    Program r = Program::disjunction(P(0), P(1));
    if (!valid_prog(r)) throw fail(ExecErrorKind::TypeViolation, "operands have different output lengths");
    return out(0, r);
  }
  throw fail(ExecErrorKind::TypeViolation, "no semantics for implementation '" + f + "'");
}

}  // namespace vpc
