#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vpc/matcher.hpp"
#include "vpc/pack.hpp"
#include "vpc/proof.hpp"

namespace vpc {

struct ProverError : std::runtime_error {
  std::string code;  // StaleOption, NotADisjunction, ConclusionMismatch, NoFalsityMatch, ...
  ProverError(std::string c, const std::string& msg) : std::runtime_error(msg), code(std::move(c)) {}
};

enum class ProofStatus { Open, Split, ClosedFalse };

const char* to_string(ProofStatus s);

// Instantiates the operands of a special disjunction statement.
std::pair<Atomic, Atomic> disjunction_operands(const TheoryPack& pack, const Atomic& stmt, const std::set<Name>& used);

std::vector<MatchLine> match_lines(const std::vector<ProofLine>& lines);

class ProofState {
 public:
  ProofState(std::shared_ptr<const TheoryPack> pack, std::vector<Atomic> premises);
  // Copies lines only; the copy starts open with no children.
  ProofState(const ProofState& other);
  ProofState& operator=(const ProofState&) = delete;

  const std::vector<ProofLine>& lines() const { return lines_; }
  size_t premise_count() const { return premise_count_; }
  ProofStatus status() const { return status_; }
  const TheoryPack& pack() const { return *pack_; }
  std::shared_ptr<const TheoryPack> pack_ptr() const { return pack_; }

  std::vector<OptionEntry> options() const;
  std::vector<OptionEntry> falsity_options() const;

  // Appends the option; it must be in the current enumeration.
  const ProofLine& apply_option(const OptionEntry& opt);
  const ProofLine& apply_index(size_t one_based);
  // Appends a statement justified by a single connection list.
  const ProofLine& apply_statement(const Atomic& stmt, const Connection& conn);

  void split(int line_label);
  ProofState& child(int which);
  const ProofState& child(int which) const;
  bool has_children() const { return children_[0] != nullptr; }
  const ProofLine& contract();
  const ProofLine& declare_false(const Connection& conn);
  void undo();

  // Completed when the last line is derived (or :false) and there is no pending split.
  bool complete() const;

 private:
  void require_open() const;
  std::shared_ptr<const TheoryPack> pack_;
  std::vector<ProofLine> lines_;
  size_t premise_count_ = 0;
  ProofStatus status_ = ProofStatus::Open;
  int split_line_ = 0;
  std::unique_ptr<ProofState> children_[2];
};

struct LineDiagnostic {
  int line;
  std::string message;
};

struct CheckOptions {
  bool completeness = false;  // also require each step to appear in the options enumeration
};

struct CheckReport {
  bool ok = true;
  std::vector<LineDiagnostic> diagnostics;
  int lines_checked = 0;
  int completeness_checked = 0;
  std::string summary() const;
};

// Verifies every line of a listing against the pack.
CheckReport check_proof(const TheoryPack& pack, const ProofFile& proof, const CheckOptions& opts = {});

}  // namespace vpc
