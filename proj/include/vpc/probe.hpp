#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vpc/machine.hpp"

namespace vpc {

// Random value assignments for the inputs of a premise. Values are drawn
// with some bias towards satisfying the relation the premise imposes, so
// that a fair share of trials actually reaches the conclusion.
class Sampler {
 public:
  Sampler(const Machine& m, uint64_t seed);
  Env sample(const std::vector<Atomic>& premise, const std::vector<Atomic>& conclusion);

  int64_t sample_int();
  Interval sample_interval();
  IntArray sample_array();
  Program sample_prog();

 private:
  Value guided(SlotType t, const Atomic& a, size_t slot, const Env& env);
  Value fresh(SlotType t);
  int64_t clip(__int128 v) const;
  bool coin(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
  int64_t uniform(int64_t lo, int64_t hi) { return std::uniform_int_distribution<int64_t>(lo, hi)(rng_); }
  Atomic random_object_atom();
  std::optional<Program> related_prog(const Name& n, const std::vector<Atomic>& premise, const Env& env);
  std::optional<Program> matching_conclusion(const Program& p);

  const Machine& m_;
  std::mt19937_64 rng_;
  std::vector<int64_t> int_pool_;
  std::vector<Interval> interval_pool_;
  std::vector<IntArray> array_pool_;
  std::vector<Program> prog_pool_;
  std::vector<int64_t> shape_;  // one square-ish shape per trial
};

struct Counterexample {
  std::string env;
  std::string detail;
};

struct EntryProbe {
  std::string label;
  bool falsity = false;
  size_t trials = 0;
  size_t premise_computable = 0;
  std::vector<Counterexample> violations;
};

// Soundness conditions: a computable premise must extend to a computable
// [premise conclusion]; a falsity premise must never be computable.
EntryProbe probe_entry(const Machine& m, const StoreEntry& e, size_t trials, uint64_t seed);

struct ProbeReport {
  std::vector<EntryProbe> entries;
  size_t violations() const;
};

// Probes every axiom of the machine's pack.
ProbeReport probe_pack(const Machine& m, size_t trials, uint64_t seed);

}  // namespace vpc
