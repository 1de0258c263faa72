#include <doctest.h>

#include <random>
#include <set>

#include "vpc/dynsys.hpp"

using namespace vpc;

namespace {

// image of p under f, element by element
Interval image(const PartitionedLinear& f, const Interval& p, int64_t N) {
  Interval q = Interval::none();
  for (int64_t v = p.lo; v <= p.hi; ++v) {
    int64_t y = f.apply(v, N);
    q = q.empty ? Interval{false, y, y} : Interval{false, std::min(q.lo, y), std::max(q.hi, y)};
  }
  return q;
}

// first repeat by linear search over the stored trajectory
std::pair<int64_t, int64_t> naive_cycle(const PartitionedLinear& f, int64_t v0, int64_t n) {
  std::vector<int64_t> xs{v0};
  for (int64_t t = 1; t <= n; ++t) {
    xs.push_back(f.apply(xs.back(), 2147483647));
    for (int64_t s = 0; s < t; ++s)
      if (xs[static_cast<size_t>(s)] == xs.back()) return {s, t - s};
  }
  return {-1, -1};
}

PartitionedLinear random_map(std::mt19937_64& rng) {
  auto U = [&](int64_t lo, int64_t hi) { return std::uniform_int_distribution<int64_t>(lo, hi)(rng); };
  std::vector<Piece> ps;
  int64_t lo = U(-100, 0);
  int k = static_cast<int>(U(1, 4));
  for (int i = 0; i < k; ++i) {
    int64_t hi = lo + U(0, 50);
    ps.push_back({lo, hi, U(-10, 10), U(-100, 100)});
    lo = hi;
  }
  return PartitionedLinear(ps);
}

}  // namespace

TEST_CASE("tent map") {
  auto f = PartitionedLinear::tent(50);
  CHECK(f.apply(0, 127) == 0);
  CHECK(f.apply(50, 127) == 100);
  CHECK(f.apply(51, 127) == 98);
  CHECK(f.apply(100, 127) == 0);
  CHECK(f.domain() == Interval{false, 0, 100});
  try {
    f.apply(101, 127);
    FAIL("outside the domain");
  } catch (const DynsysError& e) {
    CHECK(e.kind == ExecErrorKind::RelationFailure);
  }
  try {
    f.apply(50, 99);
    FAIL("no overflow");
  } catch (const DynsysError& e) {
    CHECK(e.kind == ExecErrorKind::Overflow);
  }
  try {
    iterate(PartitionedLinear::linear(0, 1000, 3, 0), 1, 10);
    FAIL("left the domain");
  } catch (const DynsysError& e) {
    CHECK(e.step == 8);  // 2187 is produced at step 7, rejected as input at step 8
  }
  CHECK_THROWS_AS(PartitionedLinear({{0, 5, 1, 0}, {6, 9, 1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(PartitionedLinear({}), std::invalid_argument);
  CHECK_THROWS_AS(PartitionedLinear({{5, 4, 1, 0}}), std::invalid_argument);
}

TEST_CASE("interval arithmetic") {
  CHECK(interval_add({false, 1, 2}, {false, -3, 4}, 100) == Interval{false, -2, 6});
  CHECK(interval_mult({false, -2, 3}, {false, -5, 4}, 100) == Interval{false, -15, 12});
  CHECK(interval_smult(-2, {false, 1, 3}, 100) == Interval{false, -6, -2});
  CHECK(interval_cup({false, 1, 2}, {false, 5, 6}) == Interval{false, 1, 6});
  CHECK(interval_cup(Interval::none(), {false, 5, 6}) == Interval{false, 5, 6});
  CHECK(interval_encloses({false, 0, 10}, {false, 2, 10}));
  CHECK_FALSE(interval_encloses({false, 0, 10}, {false, -1, 3}));
  CHECK_THROWS_AS(interval_mult({false, 0, 20}, {false, 0, 20}, 100), DynsysError);
}

TEST_CASE("enclosures contain the exact image") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    auto f = random_map(rng);
    Interval d = f.domain();
    int64_t a = std::uniform_int_distribution<int64_t>(d.lo, d.hi)(rng);
    int64_t b = std::uniform_int_distribution<int64_t>(a, std::min(d.hi, a + 200))(rng);
    Interval p{false, a, b};
    Interval q = enclose(f, p);
    CHECK(interval_encloses(q, image(f, p, 2147483647)));
    if (f.pieces().size() == 1) CHECK(q == image(f, p, 2147483647));
  }
  // [50 100] under the tent map
  CHECK(enclose(PartitionedLinear::tent(50), {false, 50, 100}) == Interval{false, 0, 100});
  CHECK(image(PartitionedLinear::tent(50), {false, 50, 100}, 127) == Interval{false, 0, 100});
  CHECK_THROWS_AS(enclose(PartitionedLinear::tent(50), {false, 90, 110}), DynsysError);
  CHECK_THROWS_AS(enclose(PartitionedLinear::tent(50), Interval::none()), DynsysError);
}

TEST_CASE("certificates") {
  Certificate c = certify(PartitionedLinear::tent(50), {false, 0, 100});
  CHECK(c.issued);
  CHECK(c.q == Interval{false, 0, 100});
  CHECK(c.validated);
  CHECK(c.validated_starts == 101);
  CHECK(c.validated_steps == 101 * 1000);
  CHECK(c.validation_error.empty());

  Certificate d = certify(PartitionedLinear::linear(0, 10, 2, 0), {false, 0, 10});
  CHECK_FALSE(d.issued);
  CHECK_FALSE(d.reason.empty());

  // contraction towards 0
  Certificate e = certify(PartitionedLinear({{-1000, 0, -1, 0}, {0, 1000, 0, 0}}), {false, -500, 500});
  CHECK(e.issued);
  CHECK_FALSE(e.validated);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    auto f = random_map(rng);
    Interval d2 = f.domain();
    Certificate k = certify(f, d2, {}, {200, 50});
    if (!k.issued) continue;
    CHECK(interval_encloses(d2, image(f, d2, 2147483647)));
    if (k.validated) CHECK(k.validation_error.empty());
  }
}

TEST_CASE("boxes") {
  std::vector<PartitionedLinear> fs{PartitionedLinear::tent(50), PartitionedLinear::tent(5)};
  Box p{{{2}, {0, 0}}, {{2}, {100, 10}}};
  Box q = enclose_box(fs, p);
  CHECK(q.lo.data == std::vector<int64_t>{0, 0});
  CHECK(q.hi.data == std::vector<int64_t>{100, 10});
  BoxCertificate bc = certify_box(fs, p);
  CHECK(bc.issued);
  CHECK(bc.components.size() == 2);
  Box bad{{{2}, {0, 0}}, {{2}, {100, 7}}};
  CHECK_FALSE(certify_box(fs, bad).issued);
  CHECK_FALSE(certify_box({fs[0]}, p).issued);
}

TEST_CASE("iteration is a semigroup") {
  auto f = PartitionedLinear::tent(50);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int64_t> v(0, 100), n(0, 300);
  for (int i = 0; i < 200; ++i) {
    int64_t x = v(rng), a = n(rng), b = n(rng);
    CHECK(iterate(f, iterate(f, x, a), b) == iterate(f, x, a + b));
  }
  CHECK(iterate(f, 37, 0) == 37);
}

TEST_CASE("trajectories and cycles") {
  auto f = PartitionedLinear::tent(50);
  Trace t = trace(f, 2, 100);
  CHECK(t.values.size() == 101);
  REQUIRE(t.cycle_start);
  auto [s, len] = naive_cycle(f, 2, 100);
  CHECK(*t.cycle_start == s);
  CHECK(*t.cycle_length == len);
  CHECK(s == 2);
  CHECK(len == 10);
  for (int64_t v0 = 0; v0 <= 100; ++v0) {
    Trace u = trace(f, v0, 200), w = trace(f, v0, 200, {}, 4);
    auto [s2, l2] = naive_cycle(f, v0, 200);
    CHECK(u.cycle_start.value_or(-1) == s2);
    CHECK(u.cycle_length.value_or(-1) == l2);
    CHECK(w.cycle_start == u.cycle_start);
    CHECK(w.cycle_length == u.cycle_length);
  }
  auto g = PartitionedLinear::tent(5000);
  Trace a = trace(g, 2, 100), b = trace(g, 3, 100);
  bool differ = false;
  for (size_t i = 0; i < a.values.size() && i < b.values.size(); ++i) differ = differ || a.values[i] != b.values[i];
  CHECK(differ);
  Trace bad = trace(PartitionedLinear::linear(0, 100, 3, 0), 2, 10);
  CHECK(bad.error);
  CHECK(bad.values.size() == 5);
  std::string csv = trajectory_csv(trace(f, 2, 3));
  CHECK(csv == "t,v\n0,2\n1,4\n2,8\n3,16\n");
}

TEST_CASE("lattice neighborhoods") {
  Lattice n(4, 4, Neighborhood::Neumann, 100);
  CHECK(n.nodes() == 16);
  CHECK(n.neighbors(0).size() == 2);
  CHECK(n.neighbors(1).size() == 3);
  CHECK(n.neighbors(5).size() == 4);
  Lattice m(4, 4, Neighborhood::Moore, 100);
  CHECK(m.neighbors(0).size() == 3);
  CHECK(m.neighbors(5).size() == 8);
  for (size_t x = 0; x < m.nodes(); ++x)
    for (size_t y : m.neighbors(x)) {
      const auto& back = m.neighbors(y);
      CHECK(std::find(back.begin(), back.end(), x) != back.end());
    }
}

TEST_CASE("lattice steps") {
  Lattice lat(4, 4, Neighborhood::Neumann, 1024);
  std::mt19937_64 rng(4);
  std::vector<int64_t> r0(16);
  for (auto& v : r0) v = std::uniform_int_distribution<int64_t>(0, 60)(rng);
  for (const auto& c : bundled_closures()) {
    CAPTURE(c.name);
    LatticeState s = initial_state(lat, r0);
    int64_t total = s.sum_r() + s.sum_u();
    for (int t = 0; t < 100; ++t) {
      s = lattice_step(lat, s, c);
      CHECK(s.sum_r() + s.sum_u() == total);
      for (size_t x = 0; x < lat.nodes(); ++x) {
        CHECK(s.r[x] >= 0);
        CHECK(s.r[x] <= lat.r_max());
        CHECK(s.u[x].size() == lat.neighbors(x).size());
        for (int64_t u : s.u[x]) CHECK(u >= 0);
      }
    }
    CHECK(s.t == 100);
  }
  LatticeState z = initial_state(lat, r0);
  for (int t = 0; t < 10; ++t) z = lattice_step(lat, z, zero_flow());
  CHECK(z.r == r0);

  // 1 unit from the corner to its first neighbor
  LatticeState s = initial_state(lat, std::vector<int64_t>(16, 0));
  s.r[0] = 5;
  Closure one{"one", [](const Lattice& l, const std::vector<int64_t>& r, const std::vector<int64_t>&) {
                std::vector<std::vector<int64_t>> u(l.nodes());
                for (size_t x = 0; x < l.nodes(); ++x) u[x].assign(l.neighbors(x).size(), x == 0 && r[0] > 0 ? 1 : 0);
                u[0].back() = 0;
                return u;
              }};
  LatticeState s1 = lattice_step(lat, s, one);
  CHECK(s1.r[0] == 4);
  LatticeState s2 = lattice_step(lat, s1, one);
  CHECK(s2.r[lat.neighbors(0)[0]] == 1);
  CHECK(s2.r[0] == 3);

  Closure neg{"neg", [](const Lattice& l, const std::vector<int64_t>&, const std::vector<int64_t>&) {
                std::vector<std::vector<int64_t>> u(l.nodes());
                for (size_t x = 0; x < l.nodes(); ++x) u[x].assign(l.neighbors(x).size(), x == 3 ? -1 : 0);
                return u;
              }};
  try {
    lattice_step(lat, s, neg);
    FAIL("negative flow accepted");
  } catch (const ClosureViolation& e) {
    CHECK(e.node == 3);
  }
  Closure wide{"wide", [](const Lattice& l, const std::vector<int64_t>&, const std::vector<int64_t>&) {
                 return std::vector<std::vector<int64_t>>(l.nodes(), std::vector<int64_t>(8, 0));
               }};
  CHECK_THROWS_AS(lattice_step(lat, s, wide), ClosureViolation);
  Closure greedy{"greedy", [](const Lattice& l, const std::vector<int64_t>& r, const std::vector<int64_t>&) {
                   std::vector<std::vector<int64_t>> u(l.nodes());
                   for (size_t x = 0; x < l.nodes(); ++x) u[x].assign(l.neighbors(x).size(), r[x]);
                   return u;
                 }};
  CHECK_THROWS_AS(lattice_step(lat, s, greedy), ClosureViolation);
  CHECK(closure_by_name("zero-flow"));
  CHECK_FALSE(closure_by_name("nope"));
  std::string csv = lattice_csv({initial_state(Lattice(2, 1, Neighborhood::Neumann, 9), {1, 2})});
  CHECK(csv == "t,sum_r,sum_u,r0,r1\n0,3,0,1,2\n");
}

TEST_CASE("map specs") {
  MapSpec s = parse_map_spec("# tent\ntent 50\nv0 2\nn 100\ncertify 0 100\nN 127\n");
  REQUIRE(s.map);
  CHECK(s.map->pieces().size() == 2);
  CHECK(*s.v0 == 2);
  CHECK(*s.n == 100);
  CHECK(*s.N == 127);
  CHECK(*s.certify == Interval{false, 0, 100});
  MapSpec l = parse_map_spec("lattice 4x3\nneighborhood moore\nclosure zero-flow\nr_max 50\nsteps 7\nboundary noflow\nr 1 2 3\n");
  CHECK(*l.lattice == std::pair<int, int>{4, 3});
  CHECK(l.neighborhood == Neighborhood::Moore);
  CHECK(l.closure == "zero-flow");
  CHECK(l.r_max == 50);
  CHECK(l.r0 == std::vector<int64_t>{1, 2, 3});
  MapSpec p = parse_map_spec("piece 0 5 1 0\npiece 5 10 -1 10\n");
  CHECK(p.map->domain() == Interval{false, 0, 10});
  CHECK_THROWS(parse_map_spec("tent x\n"));
  CHECK_THROWS(parse_map_spec("boundary periodic\n"));
  CHECK_THROWS(parse_map_spec("frobnicate 3\n"));
  CHECK_THROWS(parse_map_spec("piece 0 5 1 0\npiece 7 10 -1 10\n"));
}
