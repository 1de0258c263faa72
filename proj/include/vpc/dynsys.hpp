#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vpc/machine.hpp"

namespace vpc {

struct DynsysError : std::runtime_error {
  ExecErrorKind kind;
  int64_t step;  // -1 when not inside an iteration
  std::string detail;
  DynsysError(ExecErrorKind k, int64_t s, const std::string& msg)
      : std::runtime_error(std::string(to_string(k)) + (s >= 0 ? " at step " + std::to_string(s) : "") + ": " + msg), kind(k), step(s), detail(msg) {}
};

// f(v) = a*v + b on [lo hi]
struct Piece {
  int64_t lo, hi, a, b;
};

class PartitionedLinear {
 public:
  explicit PartitionedLinear(std::vector<Piece> pieces);
  // 2v on [0 a], 2(2a - v) on [a 2a]
  static PartitionedLinear tent(int64_t a);
  static PartitionedLinear linear(int64_t lo, int64_t hi, int64_t a, int64_t b) { return PartitionedLinear({{lo, hi, a, b}}); }

  const std::vector<Piece>& pieces() const { return pieces_; }
  Interval domain() const { return {false, pieces_.front().lo, pieces_.back().hi}; }
  // Shared endpoints go to the lower-index piece. Throws DynsysError.
  int64_t apply(int64_t v, int64_t N) const;

 private:
  std::vector<Piece> pieces_;
};

// n-fold application; n = 0 returns v.
int64_t iterate(const PartitionedLinear& f, int64_t v, int64_t n, const MachineConfig& cfg = {});

// Interval arithmetic with the machine's overflow rule (|x| <= N).
Interval interval_add(const Interval& p, const Interval& q, int64_t N);
Interval interval_mult(const Interval& p, const Interval& q, int64_t N);
Interval interval_smult(int64_t c, const Interval& p, int64_t N);
Interval interval_cup(const Interval& p, const Interval& q);
bool interval_encloses(const Interval& outer, const Interval& inner);

// Per piece: smultdi [a p_i] + int [b b], joined with cup. Endpoints shared by
// two pieces are evaluated in both.
Interval enclose(const PartitionedLinear& f, const Interval& p, const MachineConfig& cfg = {});

struct Certificate {
  bool issued = false;
  Interval p, q;
  std::string reason;
  bool validated = false;  // exhaustive check ran
  int64_t validated_starts = 0;
  int64_t validated_steps = 0;
  std::string validation_error;
};

struct CertifyOptions {
  int64_t exhaustive_limit = 200;  // run the exhaustive check when |p| <= limit
  int64_t check_steps = 1000;
};

Certificate certify(const PartitionedLinear& f, const Interval& p, const MachineConfig& cfg = {}, const CertifyOptions& opt = {});

// Boxes: one map per component, applied componentwise.
Box enclose_box(const std::vector<PartitionedLinear>& fs, const Box& p, const MachineConfig& cfg = {});
struct BoxCertificate {
  bool issued = false;
  Box q;
  std::vector<Certificate> components;
  std::string reason;
};
BoxCertificate certify_box(const std::vector<PartitionedLinear>& fs, const Box& p, const MachineConfig& cfg = {}, const CertifyOptions& opt = {});

struct Trace {
  std::vector<int64_t> values;  // n+1 states, or fewer when an error stopped the run
  std::optional<int64_t> cycle_start, cycle_length;
  std::optional<std::string> error;
};

// Full trajectory and the first repeated state. Above hash_limit states the
// repeat is found with Brent's method instead of a table.
Trace trace(const PartitionedLinear& f, int64_t v0, int64_t n, const MachineConfig& cfg = {}, size_t hash_limit = 1u << 20);

// Lattice networks.
enum class Neighborhood { Neumann, Moore };

class Lattice {
 public:
  Lattice(int width, int height, Neighborhood nb, int64_t r_max);
  int width() const { return w_; }
  int height() const { return h_; }
  size_t nodes() const { return static_cast<size_t>(w_) * static_cast<size_t>(h_); }
  int64_t r_max() const { return r_max_; }
  Neighborhood neighborhood() const { return nb_; }
  // no-flow boundary: only in-grid neighbors
  const std::vector<size_t>& neighbors(size_t x) const { return nbrs_[x]; }
  size_t max_degree() const { return nb_ == Neighborhood::Neumann ? 4 : 8; }

 private:
  int w_, h_;
  Neighborhood nb_;
  int64_t r_max_;
  std::vector<std::vector<size_t>> nbrs_;
};

struct LatticeState {
  std::vector<int64_t> r;               // per node
  std::vector<std::vector<int64_t>> u;  // per node, per neighbor (same order as Lattice::neighbors)
  int64_t t = 0;
  int64_t sum_r() const;
  int64_t sum_u() const;
};

LatticeState initial_state(const Lattice& lat, std::vector<int64_t> r);

struct ClosureViolation : std::runtime_error {
  size_t node;
  explicit ClosureViolation(size_t x, const std::string& msg) : std::runtime_error("ClosureViolation at node " + std::to_string(x) + ": " + msg), node(x) {}
};

// A closure receives r and the inflow W of the previous step and proposes u'.
using ClosureRule = std::function<std::vector<std::vector<int64_t>>(const Lattice&, const std::vector<int64_t>& r, const std::vector<int64_t>& W)>;

struct Closure {
  std::string name;
  ClosureRule rule;
};

Closure zero_flow();
Closure uniform_split();
Closure saturating_push();
std::vector<Closure> bundled_closures();
std::optional<Closure> closure_by_name(const std::string& name);

std::vector<int64_t> inflow(const Lattice& lat, const LatticeState& s);

// r'(x) = r(x) + W(x) - V'(x), W from the stored u, V' from the proposed u'.
LatticeState lattice_step(const Lattice& lat, const LatticeState& s, const Closure& c);

// Map spec files: one directive per line, '#' starts a comment.
//   tent <a>
//   piece <lo> <hi> <a> <b>
//   lattice <W>x<H>
//   neighborhood neumann|moore
//   r_max <n>
//   closure zero-flow|uniform-split|saturating-push
//   r <v1> <v2> ...          initial r, row-major
//   v0 <n> | n <n> | steps <n> | certify <lo> <hi> | N <n>
struct MapSpec {
  std::optional<PartitionedLinear> map;
  std::optional<std::pair<int, int>> lattice;
  Neighborhood neighborhood = Neighborhood::Neumann;
  int64_t r_max = 1024;
  std::string closure = "uniform-split";
  std::vector<int64_t> r0;
  std::optional<int64_t> v0, n, steps, N;
  std::optional<Interval> certify;
};

MapSpec parse_map_spec(const std::string& text);

std::string trajectory_csv(const Trace& tr);
std::string lattice_csv(const std::vector<LatticeState>& states);

}  // namespace vpc
