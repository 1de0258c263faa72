#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vpc/term.hpp"

namespace vpc {

enum class SlotType { I, B, A, P };
enum class ProgramKind { Type, Assign, TypeAssign, Special };

char to_char(SlotType t);
SlotType slot_type_from(const std::string& s);
const char* to_string(ProgramKind k);

struct Signature {
  Name name;
  ProgramKind kind = ProgramKind::Type;
  std::vector<SlotType> in, out;
  std::string impl;  // machine semantics key, defaults to the name
};

struct SpecialList {
  Atomic head;
  std::vector<Atomic> body;
  std::string render() const;
};

struct SpecialDisj {
  Atomic head;
  Atomic left, right;
  std::string render() const;
};

enum class EntryKind { Axiom, Theorem, Lemma };

struct StoreEntry {
  std::string label;
  EntryKind kind = EntryKind::Axiom;
  bool falsity = false;
  std::vector<Atomic> premise;
  Atomic conclusion;              // meaningless for falsity entries
  std::vector<std::string> used;  // rule labels cited by a theorem's proof

  std::string render() const;     // "label : ..." line
  std::string render_body() const;
};

// A matchable rule: a store entry or a generated family template.
struct Rule {
  std::string label;
  std::vector<Atomic> premise;
  std::optional<Atomic> conclusion;  // empty for falsity
  bool family = false;
};

struct TheoryPack {
  std::string name;
  Constants constants;
  std::map<Name, SlotType> constant_types;
  std::map<Name, Signature> signatures;
  std::vector<Name> signature_order;
  std::set<Name> sr_programs;
  std::map<SlotType, Name> typecheck, equality;
  std::vector<SpecialList> lists;
  std::vector<SpecialDisj> disjs;
  std::vector<StoreEntry> entries;
  std::vector<Rule> families;
  std::string object_theory;
  std::vector<std::pair<std::string, std::string>> seeds;  // (pack, last proof label)

  const StoreEntry* find_entry(const std::string& label) const;
  const Signature* signature(const Name& n) const;
  const SpecialList* find_list(const Name& n) const;
  const SpecialDisj* find_disj(const Name& n) const;
  // Type of a slot of a named program, if declared.
  std::optional<SlotType> slot_type(const Name& program, bool output, size_t index) const;
  void add_entry(StoreEntry e);
  // Regenerates the construction-rule families; call after edits to setup.
  void build_families();
  std::vector<Rule> rules() const;
  std::vector<Rule> rules_labelled(const std::string& label) const;
  bool is_family_label(const std::string& label) const;
};

// One line of a data file: either a verbatim comment/blank line or content.
struct SetupDirective {
  std::string keyword;
  std::vector<std::string> args;
  std::string render() const;
};

struct DataLine {
  std::string raw;  // comment or blank line, kept verbatim
  bool is_content = false;
  std::string content;  // canonical rendering of the parsed content
};

std::vector<SetupDirective> parse_setup(const std::string& text);
std::vector<StoreEntry> parse_store(const std::string& text);
std::vector<SpecialList> parse_list_defs(const std::string& text);
std::vector<SpecialDisj> parse_disj_defs(const std::string& text);
StoreEntry parse_store_entry(const std::string& line);

// Parses a data file of the given kind ("setup", "axiom", "list", "disj") and
// renders it back in canonical form, keeping comments and blank lines.
std::string canonical_render(const std::string& kind, const std::string& text);

void apply_setup(TheoryPack& pack, const std::vector<SetupDirective>& dirs);

}  // namespace vpc
