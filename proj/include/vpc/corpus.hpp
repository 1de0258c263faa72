#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "vpc/extraction.hpp"
#include "vpc/pack.hpp"
#include "vpc/proof.hpp"
#include "vpc/prover.hpp"

namespace vpc {

namespace fs = std::filesystem;

// VPC_CORPUS if set, otherwise the corpus directory of the source tree.
fs::path corpus_root();

std::string read_file(const fs::path& p);
void write_file(const fs::path& p, const std::string& text);

// Theory names present under root (directories with a setup.dat).
std::vector<std::string> list_theories(const fs::path& root);

// Parses <root>/<name>/*.dat, resolving extends and seed directives.
TheoryPack load_pack(const fs::path& root, const std::string& name);

std::vector<fs::path> proof_files(const fs::path& root, const std::string& name);

EntryKind kind_of_label(const std::string& label);

// Checks a proof, extracts its theorem and compares it with the printed statement.
struct ProofOutcome {
  std::string label;
  fs::path file;
  bool ok = false;
  std::string message;  // first failure, empty when ok
  CheckReport check;
  Extraction extraction;
  std::string rendered;  // theorem block of the replayed listing
};

ProofOutcome verify_proof(const TheoryPack& pack, const ProofFile& pf, const CheckOptions& opts = {});

struct ReplayOptions {
  bool completeness = false;
  std::string stop_after;  // stop after this proof label, when non-empty
};

struct ReplayReport {
  std::vector<ProofOutcome> outcomes;
  double seconds = 0;
  bool ok() const;
  size_t passed() const;
};

// Replays proofs in file order, appending each printed theorem to the store.
ReplayReport replay(TheoryPack& pack, const std::vector<fs::path>& files, const ReplayOptions& opts = {});

// Pack plus the corpus theorems proved before `until` (all of them when
// empty or not a corpus label). Throws if the corpus itself fails to replay.
TheoryPack load_store(const fs::path& root, const std::string& name, const std::string& until = "");

}  // namespace vpc
