#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vpc/term.hpp"

namespace vpc {

struct Connection {
  std::string label;
  std::vector<int> lines;
  bool bracketed = true;  // "ord 6" cites an empty premise without brackets
  std::string render() const;
};

struct ProofLine {
  int label = 0;
  bool is_false = false;
  Atomic statement;
  bool split = false;
  std::vector<Connection> connections;  // empty for premise lines
  bool is_premise() const { return connections.empty(); }
};

std::string render_proof_line(const ProofLine& l);
ProofLine parse_proof_line(const std::string& text, int line_no = 1);
// "axi 12 [2] ord 6"
std::vector<Connection> parse_connections(std::string_view text);

struct TheoremStatement {
  std::vector<Atomic> premise;
  std::optional<Atomic> conclusion;  // empty for a falsity statement
  bool falsity() const { return !conclusion.has_value(); }
  std::string render() const;
};

TheoremStatement parse_theorem_statement(const std::string& text);
// One line if it fits in width, otherwise greedy fill with one-space continuation indent.
std::vector<std::string> wrap_statement(const std::string& s, size_t width = 69);

struct ProofFile {
  std::string kind_word;  // "Theorem" or "Lemma"
  std::string label;      // "thm 1", "lem 3"
  TheoremStatement statement;
  std::vector<std::string> header_lines;  // original statement layout
  std::vector<ProofLine> lines;
};

ProofFile parse_proof_file(const std::string& text);
std::string render_proof_file(const ProofFile& f);

}  // namespace vpc
