#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "vpc/pack.hpp"
#include "vpc/term.hpp"

namespace vpc {

struct MachineConfig {
  int64_t N = 2147483647;  // largest positive integer; the range is [-N, N]
  size_t L = 4096;         // longest string
  size_t M = 1u << 20;     // longest list, also the array element bound
  int64_t tent_a = 50;     // tent map f on [0, 2a]
};

enum class ExecErrorKind { TypeViolation, Overflow, DivisionError, RelationFailure, DisjunctionViolation };

const char* to_string(ExecErrorKind k);

struct ExecError : std::runtime_error {
  ExecErrorKind kind;
  std::string at;  // rendered statement that failed
  ExecError(ExecErrorKind k, std::string where, const std::string& detail)
      : std::runtime_error(std::string(to_string(k)) + " at " + where + ": " + detail), kind(k), at(std::move(where)) {}
};

struct Interval {
  bool empty = false;
  int64_t lo = 0, hi = 0;
  static Interval none() { return {true, 0, 0}; }
  bool operator==(const Interval& o) const { return empty == o.empty && (empty || (lo == o.lo && hi == o.hi)); }
};

struct IntArray {
  std::vector<int64_t> dims;
  std::vector<int64_t> data;  // row-major
  bool operator==(const IntArray& o) const { return dims == o.dims && data == o.data; }
};

struct Box {
  IntArray lo, hi;
  bool operator==(const Box& o) const { return lo == o.lo && hi == o.hi; }
};

using Value = std::variant<int64_t, Interval, IntArray, Box, Program>;

std::string render_value(const Value& v);
bool values_equal(const Value& a, const Value& b);

// name=int, name=[lo hi], name=ei, name=A(2,3)[1 2 3 4 5 6]
std::pair<Name, Value> parse_binding(const std::string& text);

// Abstract types recorded by aext/afalse during one execution.
struct TypeLedger {
  std::set<std::string> ext;    // "p|c" renderings
  std::set<std::string> falsy;  // p renderings
};

struct Env {
  std::map<Name, Value> vars;
  TypeLedger ledger;
  bool has(const Name& n) const { return vars.count(n) > 0; }
};

class Machine {
 public:
  // object is the theory that Prog values speak about (higher-order packs only).
  Machine(const TheoryPack& pack, MachineConfig cfg = {}, const TheoryPack* object = nullptr);

  const MachineConfig& config() const { return cfg_; }
  const TheoryPack& pack() const { return pack_; }
  const TheoryPack* object_pack() const { return object_; }

  // Executes left to right, binding outputs into env. Throws ExecError.
  void exec(const Program& p, Env& env) const;
  void exec(const Atomic& a, Env& env) const;
  void exec(const std::vector<Atomic>& list, Env& env) const;
  // 1 when exec halts without an execution error.
  bool computable(const Program& p, Env env) const;
  bool computable(const std::vector<Atomic>& list, Env env) const;

  // Value of an input name: literal, named constant or binding.
  Value lookup(const Name& n, const Env& env, const Atomic& at) const;

  // Tent map helpers shared with dynsys.
  int64_t tent(int64_t v) const;

  bool prog_is_false(const Program& p, const TypeLedger& ledger) const;
  bool prog_is_ext(const Program& p, const Program& c, const TypeLedger& ledger) const;

 private:
  void exec_builtin(const Signature& sig, const Atomic& a, Env& env) const;
  void exec_list(const SpecialList& def, const Atomic& a, Env& env) const;
  void exec_disj(const SpecialDisj& def, const Atomic& a, Env& env) const;
  int64_t checked(__int128 v, const Atomic& at) const;
  void bind(Env& env, const Name& n, Value v, const Atomic& at) const;

  const TheoryPack& pack_;
  MachineConfig cfg_;
  const TheoryPack* object_;
};

}  // namespace vpc
