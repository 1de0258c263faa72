#include "vpc/dynsys.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace vpc {

namespace {

int64_t checked_n(__int128 v, int64_t N, int64_t step) {
  if (v > N || v < -static_cast<__int128>(N)) throw DynsysError(ExecErrorKind::Overflow, step, "result exceeds N");
  return static_cast<int64_t>(v);
}

}  // namespace

PartitionedLinear::PartitionedLinear(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw std::invalid_argument("map needs at least one piece");
  for (size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].lo > pieces_[i].hi) throw std::invalid_argument("piece " + std::to_string(i + 1) + " has lo > hi");
    if (i > 0 && pieces_[i - 1].hi != pieces_[i].lo)
      throw std::invalid_argument("pieces " + std::to_string(i) + " and " + std::to_string(i + 1) + " are not contiguous");
  }
}

PartitionedLinear PartitionedLinear::tent(int64_t a) {
  if (a < 1) throw std::invalid_argument("tent parameter must be positive");
  // 2(b - v) with b = 2a
  return PartitionedLinear({{0, a, 2, 0}, {a, 2 * a, -2, 4 * a}});
}

int64_t PartitionedLinear::apply(int64_t v, int64_t N) const {
  for (const auto& p : pieces_)
    if (p.lo <= v && v <= p.hi) return checked_n(static_cast<__int128>(p.a) * v + p.b, N, -1);
  throw DynsysError(ExecErrorKind::RelationFailure, -1, std::to_string(v) + " outside the map domain");
}

int64_t iterate(const PartitionedLinear& f, int64_t v, int64_t n, const MachineConfig& cfg) {
  if (n < 0) throw DynsysError(ExecErrorKind::RelationFailure, -1, "negative iteration count");
  for (int64_t t = 1; t <= n; ++t) {
    try {
      v = f.apply(v, cfg.N);
    } catch (const DynsysError& e) {
      throw DynsysError(e.kind, t, e.detail);
    }
  }
  return v;
}

Interval interval_add(const Interval& p, const Interval& q, int64_t N) {
  if (p.empty || q.empty) throw DynsysError(ExecErrorKind::TypeViolation, -1, "empty interval");
  return {false, checked_n(static_cast<__int128>(p.lo) + q.lo, N, -1), checked_n(static_cast<__int128>(p.hi) + q.hi, N, -1)};
}

Interval interval_mult(const Interval& p, const Interval& q, int64_t N) {
  if (p.empty || q.empty) throw DynsysError(ExecErrorKind::TypeViolation, -1, "empty interval");
  __int128 c[4] = {static_cast<__int128>(p.lo) * q.lo, static_cast<__int128>(p.lo) * q.hi, static_cast<__int128>(p.hi) * q.lo,
                   static_cast<__int128>(p.hi) * q.hi};
  return {false, checked_n(*std::min_element(c, c + 4), N, -1), checked_n(*std::max_element(c, c + 4), N, -1)};
}

Interval interval_smult(int64_t c, const Interval& p, int64_t N) {
  if (p.empty) throw DynsysError(ExecErrorKind::TypeViolation, -1, "empty interval");
  __int128 x = static_cast<__int128>(c) * p.lo, y = static_cast<__int128>(c) * p.hi;
  if (c < 0) std::swap(x, y);
  return {false, checked_n(x, N, -1), checked_n(y, N, -1)};
}

Interval interval_cup(const Interval& p, const Interval& q) {
  if (p.empty) return q;
  if (q.empty) return p;
  return {false, std::min(p.lo, q.lo), std::max(p.hi, q.hi)};
}

bool interval_encloses(const Interval& outer, const Interval& inner) {
  return !outer.empty && !inner.empty && outer.lo <= inner.lo && inner.hi <= outer.hi;
}

Interval enclose(const PartitionedLinear& f, const Interval& p, const MachineConfig& cfg) {
  if (p.empty) throw DynsysError(ExecErrorKind::TypeViolation, -1, "empty interval");
  if (!interval_encloses(f.domain(), p)) throw DynsysError(ExecErrorKind::RelationFailure, -1, "interval outside the map domain");
  Interval q = Interval::none();
  for (const auto& pc : f.pieces()) {
    Interval sub{false, std::max(pc.lo, p.lo), std::min(pc.hi, p.hi)};
    if (sub.lo > sub.hi) continue;
    q = interval_cup(q, interval_add(interval_smult(pc.a, sub, cfg.N), Interval{false, pc.b, pc.b}, cfg.N));
  }
  return q;
}

namespace {

std::string render_interval(const Interval& p) { return p.empty ? "ei" : "[" + std::to_string(p.lo) + " " + std::to_string(p.hi) + "]"; }

}  // namespace

Certificate certify(const PartitionedLinear& f, const Interval& p, const MachineConfig& cfg, const CertifyOptions& opt) {
  Certificate c;
  c.p = p;
  try {
    c.q = enclose(f, p, cfg);
  } catch (const DynsysError& e) {
    c.reason = std::string("no enclosure: ") + e.what();
    return c;
  }
  if (!interval_encloses(p, c.q)) {
    c.reason = "enclosure " + render_interval(c.q) + " is not inside " + render_interval(p);
    return c;
  }
  c.issued = true;
  c.reason = "enclosure " + render_interval(c.q) + " inside " + render_interval(p);
  if (static_cast<__int128>(p.hi) - p.lo + 1 <= opt.exhaustive_limit) {
    c.validated = true;
    for (int64_t v = p.lo; v <= p.hi; ++v) {
      int64_t x = v;
      for (int64_t t = 1; t <= opt.check_steps; ++t) {
        try {
          x = f.apply(x, cfg.N);
        } catch (const DynsysError& e) {
          c.validation_error = "start " + std::to_string(v) + " step " + std::to_string(t) + ": " + e.what();
          return c;
        }
        ++c.validated_steps;
      }
      ++c.validated_starts;
    }
  }
  return c;
}

Box enclose_box(const std::vector<PartitionedLinear>& fs, const Box& p, const MachineConfig& cfg) {
  if (p.lo.data.size() != fs.size() || p.hi.data.size() != fs.size()) throw DynsysError(ExecErrorKind::TypeViolation, -1, "box and map dimensions differ");
  Box q{p.lo, p.hi};
  for (size_t i = 0; i < fs.size(); ++i) {
    Interval r = enclose(fs[i], Interval{false, p.lo.data[i], p.hi.data[i]}, cfg);
    q.lo.data[i] = r.lo;
    q.hi.data[i] = r.hi;
  }
  return q;
}

BoxCertificate certify_box(const std::vector<PartitionedLinear>& fs, const Box& p, const MachineConfig& cfg, const CertifyOptions& opt) {
  BoxCertificate bc;
  if (p.lo.data.size() != fs.size() || p.hi.data.size() != fs.size()) {
    bc.reason = "box and map dimensions differ";
    return bc;
  }
  bc.q = p;
  bc.issued = true;
  for (size_t i = 0; i < fs.size(); ++i) {
    Certificate c = certify(fs[i], Interval{false, p.lo.data[i], p.hi.data[i]}, cfg, opt);
    bc.q.lo.data[i] = c.q.lo;
    bc.q.hi.data[i] = c.q.hi;
    if (!c.issued && bc.issued) {
      bc.issued = false;
      bc.reason = "component " + std::to_string(i) + ": " + c.reason;
    }
    bc.components.push_back(std::move(c));
  }
  return bc;
}

Trace trace(const PartitionedLinear& f, int64_t v0, int64_t n, const MachineConfig& cfg, size_t hash_limit) {
  if (n < 0) throw DynsysError(ExecErrorKind::RelationFailure, -1, "negative iteration count");
  Trace tr;
  tr.values.reserve(static_cast<size_t>(std::min<int64_t>(n, 1 << 20)) + 1);
  tr.values.push_back(v0);
  std::unordered_map<int64_t, int64_t> seen{{v0, 0}};
  bool hashing = true;
  int64_t v = v0;
  for (int64_t t = 1; t <= n; ++t) {
    try {
      v = f.apply(v, cfg.N);
    } catch (const DynsysError& e) {
      tr.error = "step " + std::to_string(t) + ": " + e.what();
      return tr;
    }
    tr.values.push_back(v);
    if (!hashing || tr.cycle_start) continue;
    auto [it, fresh] = seen.emplace(v, t);
    if (!fresh) {
      tr.cycle_start = it->second;
      tr.cycle_length = t - it->second;
    } else if (seen.size() > hash_limit) {
      hashing = false;
      seen.clear();
    }
  }
  if (!hashing && !tr.cycle_start) {
    // Brent over the stored trajectory
    const auto& xs = tr.values;
    int64_t last = static_cast<int64_t>(xs.size()) - 1;
    int64_t power = 1, lam = 1, tortoise = 0, hare = 1;
    while (hare <= last && xs[static_cast<size_t>(tortoise)] != xs[static_cast<size_t>(hare)]) {
      if (power == lam) {
        tortoise = hare;
        power *= 2;
        lam = 0;
      }
      ++hare;
      ++lam;
    }
    if (hare <= last) {
      int64_t mu = 0;
      while (mu + lam <= last && xs[static_cast<size_t>(mu)] != xs[static_cast<size_t>(mu + lam)]) ++mu;
      if (mu + lam <= last) {
        tr.cycle_start = mu;
        tr.cycle_length = lam;
      }
    }
  }
  return tr;
}

Lattice::Lattice(int width, int height, Neighborhood nb, int64_t r_max) : w_(width), h_(height), nb_(nb), r_max_(r_max) {
  if (w_ < 1 || h_ < 1) throw std::invalid_argument("lattice dimensions must be positive");
  if (r_max_ < 0) throw std::invalid_argument("r_max must be nonnegative");
  nbrs_.resize(nodes());
  for (int y = 0; y < h_; ++y)
    for (int x = 0; x < w_; ++x)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (nb_ == Neighborhood::Neumann && dx != 0 && dy != 0) continue;
          int nx = x + dx, ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w_ || ny >= h_) continue;
          nbrs_[static_cast<size_t>(y * w_ + x)].push_back(static_cast<size_t>(ny * w_ + nx));
        }
}

int64_t LatticeState::sum_r() const {
  int64_t s = 0;
  for (auto x : r) s += x;
  return s;
}

int64_t LatticeState::sum_u() const {
  int64_t s = 0;
  for (const auto& row : u)
    for (auto x : row) s += x;
  return s;
}

LatticeState initial_state(const Lattice& lat, std::vector<int64_t> r) {
  if (r.size() != lat.nodes()) throw std::invalid_argument("expected " + std::to_string(lat.nodes()) + " initial values, got " + std::to_string(r.size()));
  LatticeState s;
  s.r = std::move(r);
  for (size_t x = 0; x < lat.nodes(); ++x) {
    if (s.r[x] < 0 || s.r[x] > lat.r_max()) throw ClosureViolation(x, "initial r outside [0, r_max]");
    s.u.emplace_back(lat.neighbors(x).size(), 0);
  }
  return s;
}

std::vector<int64_t> inflow(const Lattice& lat, const LatticeState& s) {
  std::vector<int64_t> W(lat.nodes(), 0);
  for (size_t x = 0; x < lat.nodes(); ++x)
    for (size_t k = 0; k < lat.neighbors(x).size(); ++k) W[lat.neighbors(x)[k]] += s.u[x][k];
  return W;
}

Closure zero_flow() {
  return {"zero-flow", [](const Lattice& lat, const std::vector<int64_t>&, const std::vector<int64_t>&) {
            std::vector<std::vector<int64_t>> u;
            for (size_t x = 0; x < lat.nodes(); ++x) u.emplace_back(lat.neighbors(x).size(), 0);
            return u;
          }};
}

Closure uniform_split() {
  // node and neighbors get equal shares of r + W; the remainder stays
  return {"uniform-split", [](const Lattice& lat, const std::vector<int64_t>& r, const std::vector<int64_t>& W) {
            std::vector<std::vector<int64_t>> u;
            for (size_t x = 0; x < lat.nodes(); ++x) {
              int64_t k = static_cast<int64_t>(lat.neighbors(x).size());
              u.emplace_back(static_cast<size_t>(k), (r[x] + W[x]) / (k + 1));
            }
            return u;
          }};
}

Closure saturating_push() {
  // push half the surplus towards lower neighbors, capped by the room the
  // receiver has left below r_max
  return {"saturating-push", [](const Lattice& lat, const std::vector<int64_t>& r, const std::vector<int64_t>& W) {
            std::vector<int64_t> avail(lat.nodes());
            for (size_t x = 0; x < lat.nodes(); ++x) avail[x] = r[x] + W[x];
            const int64_t K = static_cast<int64_t>(lat.max_degree());
            std::vector<std::vector<int64_t>> u;
            for (size_t x = 0; x < lat.nodes(); ++x) {
              const auto& nb = lat.neighbors(x);
              int64_t k = static_cast<int64_t>(nb.size());
              std::vector<int64_t> row;
              for (size_t y : nb) {
                int64_t want = std::max<int64_t>(0, avail[x] - avail[y]) / (2 * k);
                int64_t room = std::max<int64_t>(0, lat.r_max() - avail[y]) / K;
                row.push_back(std::min(want, room));
              }
              u.push_back(std::move(row));
            }
            return u;
          }};
}

std::vector<Closure> bundled_closures() { return {zero_flow(), uniform_split(), saturating_push()}; }

std::optional<Closure> closure_by_name(const std::string& name) {
  for (auto& c : bundled_closures())
    if (c.name == name) return c;
  return std::nullopt;
}

LatticeState lattice_step(const Lattice& lat, const LatticeState& s, const Closure& c) {
  std::vector<int64_t> W = inflow(lat, s);
  auto u = c.rule(lat, s.r, W);
  if (u.size() != lat.nodes()) throw ClosureViolation(0, "closure returned flows for " + std::to_string(u.size()) + " nodes");
  LatticeState n;
  n.t = s.t + 1;
  n.r.resize(lat.nodes());
  for (size_t x = 0; x < lat.nodes(); ++x) {
    // one entry per neighbor; anything else would be off-neighborhood flow
    if (u[x].size() != lat.neighbors(x).size()) throw ClosureViolation(x, "flow outside the neighborhood");
    __int128 V = 0;
    for (auto e : u[x]) {
      if (e < 0) throw ClosureViolation(x, "negative flow");
      V += e;
    }
    __int128 r = static_cast<__int128>(s.r[x]) + W[x] - V;
    if (r < 0 || r > lat.r_max()) throw ClosureViolation(x, "r' = " + std::to_string(static_cast<long long>(r)) + " outside [0, r_max]");
    n.r[x] = static_cast<int64_t>(r);
    for (auto e : u[x])
      if (e > n.r[x]) throw ClosureViolation(x, "flow " + std::to_string(e) + " exceeds r' = " + std::to_string(n.r[x]));
  }
  n.u = std::move(u);
  return n;
}

MapSpec parse_map_spec(const std::string& text) {
  MapSpec spec;
  std::vector<Piece> pieces;
  std::optional<int64_t> tent_a;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto ints = [&](size_t want) {
      std::vector<int64_t> v;
      std::string tok;
      while (ls >> tok) {
        try {
          size_t used = 0;
          v.push_back(std::stoll(tok, &used));
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          fail("'" + tok + "' is not an integer");
        }
      }
      if (want && v.size() != want) fail(key + " takes " + std::to_string(want) + " integer(s)");
      return v;
    };
    if (key == "tent") {
      tent_a = ints(1)[0];
    } else if (key == "piece") {
      auto v = ints(4);
      pieces.push_back({v[0], v[1], v[2], v[3]});
    } else if (key == "lattice") {
      std::string dims;
      ls >> dims;
      int w = 0, h = 0;
      char x = 0;
      std::istringstream ds(dims);
      if (!(ds >> w >> x >> h) || (x != 'x' && x != 'X')) fail("lattice expects WxH");
      spec.lattice = {w, h};
    } else if (key == "neighborhood") {
      std::string v;
      ls >> v;
      if (v == "neumann") spec.neighborhood = Neighborhood::Neumann;
      else if (v == "moore") spec.neighborhood = Neighborhood::Moore;
      else fail("unknown neighborhood '" + v + "'");
    } else if (key == "boundary") {
      std::string v;
      ls >> v;
      if (v != "noflow") fail("only the noflow boundary is supported");
    } else if (key == "r_max") {
      spec.r_max = ints(1)[0];
    } else if (key == "closure") {
      ls >> spec.closure;
      if (!closure_by_name(spec.closure)) fail("unknown closure '" + spec.closure + "'");
    } else if (key == "r") {
      auto v = ints(0);
      spec.r0.insert(spec.r0.end(), v.begin(), v.end());
    } else if (key == "v0") {
      spec.v0 = ints(1)[0];
    } else if (key == "n") {
      spec.n = ints(1)[0];
    } else if (key == "steps") {
      spec.steps = ints(1)[0];
    } else if (key == "N") {
      spec.N = ints(1)[0];
    } else if (key == "certify") {
      auto v = ints(2);
      spec.certify = Interval{false, v[0], v[1]};
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  if (tent_a && !pieces.empty()) throw std::invalid_argument("give either tent or piece lines, not both");
  try {
    if (tent_a) spec.map = PartitionedLinear::tent(*tent_a);
    else if (!pieces.empty()) spec.map = PartitionedLinear(pieces);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("map: ") + e.what());
  }
  if (!spec.map && !spec.lattice) throw std::invalid_argument("spec defines neither a map nor a lattice");
  return spec;
}

std::string trajectory_csv(const Trace& tr) {
  std::string out = "t,v\n";
  for (size_t t = 0; t < tr.values.size(); ++t) out += std::to_string(t) + "," + std::to_string(tr.values[t]) + "\n";
  return out;
}

std::string lattice_csv(const std::vector<LatticeState>& states) {
  std::string out = "t,sum_r,sum_u";
  if (!states.empty())
    for (size_t x = 0; x < states[0].r.size(); ++x) out += ",r" + std::to_string(x);
  out += "\n";
  for (const auto& s : states) {
    out += std::to_string(s.t) + "," + std::to_string(s.sum_r()) + "," + std::to_string(s.sum_u());
    for (auto v : s.r) out += "," + std::to_string(v);
    out += "\n";
  }
  return out;
}

}  // namespace vpc
