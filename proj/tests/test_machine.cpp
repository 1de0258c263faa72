#include <doctest.h>

#include <algorithm>

#include "vpc/corpus.hpp"
#include "vpc/machine.hpp"
#include "vpc/probe.hpp"

using namespace vpc;

namespace {

const TheoryPack& pack(const std::string& name) {
  static std::map<std::string, TheoryPack> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, load_pack(corpus_root(), name)).first;
  return it->second;
}

Env run(const Machine& m, const std::string& prog, Env env = {}) {
  m.exec(parse_atomic_sequence(prog), env);
  return env;
}

ExecErrorKind error_of(const Machine& m, const std::string& prog, Env env = {}) {
  try {
    m.exec(parse_atomic_sequence(prog), env);
  } catch (const ExecError& e) {
    return e.kind;
  }
  FAIL("no error from " << prog);
  return ExecErrorKind::TypeViolation;
}

Env with(std::initializer_list<std::string> bindings) {
  Env env;
  for (const auto& b : bindings) env.vars.insert(parse_binding(b));
  return env;
}

// interval from the elements themselves
Interval hull(const std::vector<int64_t>& xs) {
  if (xs.empty()) return Interval::none();
  auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return {false, *lo, *hi};
}

std::vector<int64_t> elements(int64_t lo, int64_t hi) {
  std::vector<int64_t> v;
  for (int64_t x = lo; x <= hi; ++x) v.push_back(x);
  return v;
}

}  // namespace

TEST_CASE("integer execution") {
  Machine m(pack("integers"));
  Env e = run(m, "add [2 3] [c] mult [c -1] [d] div [d 5] [q]");
  CHECK(std::get<int64_t>(e.vars.at("c")) == 5);
  CHECK(std::get<int64_t>(e.vars.at("d")) == -5);
  CHECK(std::get<int64_t>(e.vars.at("q")) == -1);
  CHECK(m.computable(parse_atomic_sequence("lt [0 1] [ ]"), {}));
  CHECK_FALSE(m.computable(parse_atomic_sequence("lt [1 1] [ ]"), {}));
  CHECK(error_of(m, "lt [2 1] [ ]") == ExecErrorKind::RelationFailure);
  CHECK(error_of(m, "div [1 0] [q]") == ExecErrorKind::DivisionError);
  CHECK(error_of(m, "div [3 2] [q]") == ExecErrorKind::DivisionError);
  CHECK(error_of(m, "add [a 1] [c]", with({"a=2147483647"})) == ExecErrorKind::Overflow);
  CHECK(run(m, "mult [a a] [b]", with({"a=46340"})).vars.at("b") == Value{int64_t{2147395600}});
}

TEST_CASE("overflow follows N") {
  MachineConfig cfg;
  cfg.N = 7;
  Machine m(pack("integers"), cfg);
  CHECK(std::get<int64_t>(run(m, "add [3 4] [c]").vars.at("c")) == 7);
  CHECK(error_of(m, "add [3 5] [c]") == ExecErrorKind::Overflow);
  CHECK(error_of(m, "mult [-4 2] [c]") == ExecErrorKind::Overflow);
  CHECK(std::get<int64_t>(run(m, "mult [-1 7] [c]").vars.at("c")) == -7);
}

TEST_CASE("bindings") {
  auto [n, v] = parse_binding("p=[1 4]");
  CHECK(n == "p");
  CHECK(std::get<Interval>(v) == Interval{false, 1, 4});
  CHECK(std::get<Interval>(parse_binding("q=ei").second).empty);
  auto arr = std::get<IntArray>(parse_binding("A=A(2,3)[1 2 3 4 5 6]").second);
  CHECK(arr.dims == std::vector<int64_t>{2, 3});
  CHECK(arr.data.size() == 6);
  CHECK(render_value(Value{Interval{false, -2, 3}}) == "[-2 3]");
  CHECK(render_value(Value{int64_t{-9}}) == "-9");
}

TEST_CASE("interval operations against element sets") {
  Machine m(pack("intervals"));
  for (int64_t a = -5; a <= 5; ++a)
    for (int64_t b = a; b <= 5; ++b)
      for (int64_t c = -5; c <= 5; ++c)
        for (int64_t d = c; d <= 5; ++d) {
          Env env = run(m, "int [a b] [p] int [c d] [q] adddi [p q] [s] multdi [p q] [t] cup [p q] [u] smultdi [c p] [w]",
                        with({"a=" + std::to_string(a), "b=" + std::to_string(b), "c=" + std::to_string(c), "d=" + std::to_string(d)}));
          std::vector<int64_t> sums, prods, scaled, both = elements(a, b);
          for (int64_t x : elements(a, b)) {
            scaled.push_back(c * x);
            for (int64_t y : elements(c, d)) {
              sums.push_back(x + y);
              prods.push_back(x * y);
            }
          }
          for (int64_t y : elements(c, d)) both.push_back(y);
          CHECK(std::get<Interval>(env.vars.at("s")) == hull(sums));
          CHECK(std::get<Interval>(env.vars.at("t")) == hull(prods));
          CHECK(std::get<Interval>(env.vars.at("u")) == hull(both));
          CHECK(std::get<Interval>(env.vars.at("w")) == hull(scaled));
        }
}

TEST_CASE("interval edge cases") {
  Machine m(pack("intervals"));
  CHECK(error_of(m, "int [2 1] [p]") == ExecErrorKind::RelationFailure);
  CHECK(error_of(m, "adddi [ei ei] [p]") == ExecErrorKind::TypeViolation);
  Env e = run(m, "int [1 3] [p] cup [p ei] [r] cup [ei ei] [z]");
  CHECK(std::get<Interval>(e.vars.at("r")) == Interval{false, 1, 3});
  CHECK(std::get<Interval>(e.vars.at("z")).empty);
  CHECK(m.computable(parse_atomic_sequence("int [1 5] [p] intelt [3 p] [ ]"), {}));
  CHECK_FALSE(m.computable(parse_atomic_sequence("int [1 5] [p] intelt [6 p] [ ]"), {}));
  CHECK(m.computable(parse_atomic_sequence("int [1 5] [p] int [2 3] [q] intenc [q p] [ ]"), {}));
  CHECK_FALSE(m.computable(parse_atomic_sequence("int [1 5] [p] int [0 3] [q] intenc [q p] [ ]"), {}));
}

TEST_CASE("tent map builtins") {
  Machine m(pack("intervals"));
  CHECK(m.tent(0) == 0);
  CHECK(m.tent(50) == 100);
  CHECK(m.tent(100) == 0);
  CHECK(m.tent(2) == 4);
  CHECK(m.tent(75) == 50);
  Env e = run(m, "f [30] [x] itf [2 10] [y] itf [2 0] [z]");
  CHECK(std::get<int64_t>(e.vars.at("x")) == 60);
  int64_t v = 2;
  for (int i = 0; i < 10; ++i) v = m.tent(v);
  CHECK(std::get<int64_t>(e.vars.at("y")) == v);
  CHECK(std::get<int64_t>(e.vars.at("z")) == 2);
  CHECK(error_of(m, "f [101] [x]") == ExecErrorKind::RelationFailure);
}

TEST_CASE("probing sound axioms finds nothing") {
  MachineConfig cfg;
  cfg.N = 127;
  Machine m(pack("integers"), cfg);
  ProbeReport r = probe_pack(m, 200, 11);
  CHECK(r.violations() == 0);
  for (const auto& e : r.entries) {
    CAPTURE(e.label);
    CHECK(e.trials == 200);
    if (e.falsity) CHECK(e.premise_computable == 0);
  }
}

TEST_CASE("probing catches corrupted axioms") {
  for (int64_t N : {7, 127}) {
    MachineConfig cfg;
    cfg.N = N;
    Machine m(pack("integers"), cfg);
    // commutativity with the wrong orientation of the conclusion
    auto bad = parse_store_entry("axi 99 : [[add [a b] [c] add [a a] [d]] eqi [c d] [ ]]");
    EntryProbe p = probe_entry(m, bad, 500, 5);
    CHECK(p.trials == 500);
    CHECK_FALSE(p.violations.empty());
    // lt [a b] is satisfiable, lt [a a] is not
    auto f = parse_store_entry("ord 99 : false [lt [a b] [ ]]");
    CHECK_FALSE(probe_entry(m, f, 500, 5).violations.empty());
    auto ok = parse_store_entry("ord 98 : false [lt [a a] [ ]]");
    EntryProbe q = probe_entry(m, ok, 500, 5);
    CHECK(q.violations.empty());
    CHECK(q.premise_computable == 0);
  }
}

TEST_CASE("probing is reproducible") {
  Machine m(pack("integers"));
  const StoreEntry* e = pack("integers").find_entry("axi 12");
  REQUIRE(e);
  EntryProbe a = probe_entry(m, *e, 100, 42), b = probe_entry(m, *e, 100, 42);
  CHECK(a.premise_computable == b.premise_computable);
  CHECK(a.premise_computable > 0);
}
