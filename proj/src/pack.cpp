#include "vpc/pack.hpp"

#include <algorithm>
#include <sstream>

#include "vpc/structure.hpp"

namespace vpc {

char to_char(SlotType t) {
  switch (t) {
    case SlotType::I: return 'I';
    case SlotType::B: return 'B';
    case SlotType::A: return 'A';
    case SlotType::P: return 'P';
  }
  return '?';
}

SlotType slot_type_from(const std::string& s) {
  if (s == "I") return SlotType::I;
  if (s == "B") return SlotType::B;
  if (s == "A") return SlotType::A;
  if (s == "P") return SlotType::P;
  throw std::invalid_argument("unknown slot type '" + s + "'");
}

const char* to_string(ProgramKind k) {
  switch (k) {
    case ProgramKind::Type: return "type";
    case ProgramKind::Assign: return "assign";
    case ProgramKind::TypeAssign: return "tassign";
    case ProgramKind::Special: return "special";
  }
  return "?";
}

std::string SpecialList::render() const { return head.render() + " = [" + render_atoms(body) + "]"; }

std::string SpecialDisj::render() const { return head.render() + " = " + left.render() + " | " + right.render(); }

std::string StoreEntry::render_body() const {
  if (falsity) return "false [" + render_atoms(premise) + "]";
  if (premise.empty()) return "[" + conclusion.render() + "]";
  return "[[" + render_atoms(premise) + "] " + conclusion.render() + "]";
}

std::string StoreEntry::render() const { return label + " : " + render_body(); }

const StoreEntry* TheoryPack::find_entry(const std::string& label) const {
  for (const auto& e : entries)
    if (e.label == label) return &e;
  return nullptr;
}

const Signature* TheoryPack::signature(const Name& n) const {
  auto it = signatures.find(n);
  return it == signatures.end() ? nullptr : &it->second;
}

const SpecialList* TheoryPack::find_list(const Name& n) const {
  for (const auto& l : lists)
    if (l.head.name == n) return &l;
  return nullptr;
}

const SpecialDisj* TheoryPack::find_disj(const Name& n) const {
  for (const auto& d : disjs)
    if (d.head.name == n) return &d;
  return nullptr;
}

std::optional<SlotType> TheoryPack::slot_type(const Name& program, bool output, size_t index) const {
  const Signature* s = signature(program);
  if (!s) return std::nullopt;
  const auto& v = output ? s->out : s->in;
  if (index >= v.size()) return std::nullopt;
  return v[index];
}

void TheoryPack::add_entry(StoreEntry e) {
  if (find_entry(e.label)) throw std::invalid_argument("duplicate label '" + e.label + "'");
  entries.push_back(std::move(e));
}

bool TheoryPack::is_family_label(const std::string& label) const {
  static const std::set<std::string> fam{"aio", "sr 1", "sr 2", "spl 1", "spl 2", "spl 3", "spl 4", "spd 1", "spd 2"};
  return fam.count(label) > 0;
}

namespace {

IoList numbered(const std::string& stem, size_t n) {
  IoList out;
  for (size_t i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

// Names guaranteed absent from a definition, used for fresh pattern outputs.
IoList fresh_pattern_names(const std::set<Name>& used, size_t n) {
  IoList out;
  for (size_t i = 1; out.size() < n; ++i) {
    Name c = "fr" + std::to_string(i);
    if (!used.count(c)) out.push_back(c);
  }
  return out;
}

void add_aio(const TheoryPack& p, const Signature& s, std::vector<Rule>& out) {
  Atomic stmt{s.name, numbered("v", s.in.size()), numbered("w", s.out.size())};
  auto emit = [&](const Name& var, SlotType t) {
    auto tc = p.typecheck.find(t);
    if (tc == p.typecheck.end()) return;
    out.push_back(Rule{"aio", {stmt}, Atomic{tc->second, {var}, {}}, true});
  };
  for (size_t i = 0; i < s.in.size(); ++i) emit(stmt.in[i], s.in[i]);
  for (size_t j = 0; j < s.out.size(); ++j) emit(stmt.out[j], s.out[j]);
}

void add_sr(const TheoryPack& p, const Signature& s, std::vector<Rule>& sr1, std::vector<Rule>& sr2) {
  Atomic stmt{s.name, numbered("x", s.in.size()), numbered("y", s.out.size())};
  for (size_t i = 0; i < s.in.size(); ++i) {
    auto eq = p.equality.find(s.in[i]);
    if (eq == p.equality.end()) continue;
    Atomic e{eq->second, {stmt.in[i], "t0"}, {}};
    Atomic subst{s.name, substitute_at(stmt.in, i, "t0"), numbered("z", s.out.size())};
    sr1.push_back(Rule{"sr 1", {stmt, e}, subst, true});
    for (size_t j = 0; j < s.out.size(); ++j) {
      auto eqo = p.equality.find(s.out[j]);
      if (eqo == p.equality.end()) continue;
      sr2.push_back(Rule{"sr 2", {stmt, e, subst}, Atomic{eqo->second, {subst.out[j], stmt.out[j]}, {}}, true});
    }
  }
}

std::optional<Name> equality_for(const TheoryPack& p, const Name& prog, size_t out_index) {
  auto t = p.slot_type(prog, true, out_index);
  if (!t) return std::nullopt;
  auto it = p.equality.find(*t);
  if (it == p.equality.end()) return std::nullopt;
  return it->second;
}

void add_spl(const TheoryPack& p, const SpecialList& l, std::vector<Rule> (&spl)[4]) {
  std::set<Name> used = names_in(l.body);
  auto hn = names_in({l.head});
  used.insert(hn.begin(), hn.end());
  const std::set<Name> head_out(l.head.out.begin(), l.head.out.end());
  for (const auto& bi : l.body) {
    // spl 1: outputs of the retrieved statement are fresh
    IoList fresh = fresh_pattern_names(used, bi.out.size());
    Atomic retrieved{bi.name, bi.in, fresh};
    spl[0].push_back(Rule{"spl 1", {l.head}, retrieved, true});
    for (size_t j = 0; j < bi.out.size(); ++j) {
      auto eq = equality_for(p, bi.name, j);
      if (!eq) continue;
      spl[1].push_back(Rule{"spl 2", {l.head, retrieved}, Atomic{*eq, {fresh[j], bi.out[j]}, {}}, true});
    }
  }
  IoList fresh = fresh_pattern_names(used, l.head.out.size());
  Atomic rebuilt{l.head.name, l.head.in, fresh};
  spl[2].push_back(Rule{"spl 3", l.body, rebuilt, true});
  for (size_t j = 0; j < l.head.out.size(); ++j) {
    auto eq = equality_for(p, l.head.name, j);
    if (!eq) continue;
    auto prem = l.body;
    prem.push_back(rebuilt);
    spl[3].push_back(Rule{"spl 4", prem, Atomic{*eq, {fresh[j], l.head.out[j]}, {}}, true});
  }
}

void add_spd(const TheoryPack& p, const SpecialDisj& d, std::vector<Rule>& spd1, std::vector<Rule>& spd2) {
  std::set<Name> used = names_in({d.head, d.left, d.right});
  IoList hx;
  for (const auto& n : d.head.in)
    if (!p.constants.contains(n)) hx.push_back(n);
  IoList fresh = fresh_pattern_names(used, d.head.out.size());
  Atomic rebuilt{d.head.name, d.head.in, fresh};
  for (const Atomic* op : {&d.left, &d.right}) {
    if (!sublist(hx, op->in)) continue;
    spd1.push_back(Rule{"spd 1", {*op}, rebuilt, true});
    for (size_t j = 0; j < d.head.out.size(); ++j) {
      auto eq = equality_for(p, d.head.name, j);
      if (!eq) continue;
      spd2.push_back(Rule{"spd 2", {*op, rebuilt}, Atomic{*eq, {fresh[j], d.head.out[j]}, {}}, true});
    }
  }
}

}  // namespace

void TheoryPack::build_families() {
  std::vector<Rule> aio, sr1, sr2, spl[4], spd1, spd2;
  for (const auto& n : signature_order) {
    const Signature& s = signatures.at(n);
    add_aio(*this, s, aio);
    if (sr_programs.count(n)) add_sr(*this, s, sr1, sr2);
  }
  for (const auto& l : lists) add_spl(*this, l, spl);
  for (const auto& d : disjs) add_spd(*this, d, spd1, spd2);
  families.clear();
  for (auto* v : {&aio, &sr1, &sr2, &spl[0], &spl[1], &spl[2], &spl[3], &spd1, &spd2}) families.insert(families.end(), v->begin(), v->end());
}

std::vector<Rule> TheoryPack::rules() const {
  std::vector<Rule> out;
  out.reserve(entries.size() + families.size());
  for (const auto& e : entries) {
    Rule r{e.label, e.premise, std::nullopt, false};
    if (!e.falsity) r.conclusion = e.conclusion;
    out.push_back(std::move(r));
  }
  out.insert(out.end(), families.begin(), families.end());
  return out;
}

std::vector<Rule> TheoryPack::rules_labelled(const std::string& label) const {
  std::vector<Rule> out;
  if (is_family_label(label)) {
    for (const auto& r : families)
      if (r.label == label) out.push_back(r);
    return out;
  }
  if (const StoreEntry* e = find_entry(label)) {
    Rule r{e->label, e->premise, std::nullopt, false};
    if (!e->falsity) r.conclusion = e->conclusion;
    out.push_back(std::move(r));
  }
  return out;
}

// data files

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::string line;
  std::istringstream is(text);
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

bool is_blank_or_comment(const std::string& line) {
  auto p = line.find_first_not_of(" \t\r");
  return p == std::string::npos || line[p] == '#';
}

ParseError at_line(const ParseError& e, int line) { return ParseError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at ")), line, e.column); }

std::string render_types(const std::vector<SlotType>& v) {
  if (v.empty()) return "[ ]";
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += to_char(v[i]);
  }
  return s + "]";
}

std::vector<SlotType> parse_types(TokenStream& ts) {
  std::vector<SlotType> out;
  for (const auto& n : parse_io_list(ts)) out.push_back(slot_type_from(n));
  return out;
}

// Collects the atoms of a bracketed entry body, flattening nested lists.
void collect_atoms(TokenStream& ts, std::vector<Atomic>& out) {
  ts.expect(Token::Kind::LBracket, "'['");
  while (ts.peek().kind != Token::Kind::RBracket) {
    if (ts.at_end()) ts.fail("unterminated entry");
    if (ts.peek().kind == Token::Kind::LBracket)
      collect_atoms(ts, out);
    else
      out.push_back(parse_atomic(ts));
  }
  ts.next();
}

}  // namespace

std::string SetupDirective::render() const {
  std::string s = keyword;
  for (const auto& a : args) s += " " + a;
  return s;
}

std::vector<SetupDirective> parse_setup(const std::string& text) {
  std::vector<SetupDirective> out;
  auto lines = split_lines(text);
  for (size_t li = 0; li < lines.size(); ++li) {
    if (is_blank_or_comment(lines[li])) continue;
    int lno = static_cast<int>(li + 1);
    try {
      TokenStream ts(lines[li]);
      SetupDirective d;
      if (ts.peek().kind != Token::Kind::Word) ts.fail("expected directive");
      d.keyword = ts.next().text;
      if (d.keyword == "atomic") {
        std::string name = ts.next().text;
        std::string kind = ts.next().text;
        if (kind != "type" && kind != "assign" && kind != "tassign") ts.fail("expected program kind");
        auto in = parse_types(ts);
        auto outs = parse_types(ts);
        d.args = {name, kind, render_types(in), render_types(outs)};
        if (ts.peek().kind == Token::Kind::Word && ts.peek().text == "=") {
          ts.next();
          d.args.push_back("=");
          d.args.push_back(ts.next().text);
        }
      } else if (d.keyword == "special") {
        d.args.push_back(ts.next().text);
        d.args.push_back(render_types(parse_types(ts)));
        d.args.push_back(render_types(parse_types(ts)));
      } else if (d.keyword == "constant" || d.keyword == "typecheck" || d.keyword == "equality" || d.keyword == "sr" ||
                 d.keyword == "extends" || d.keyword == "seed" || d.keyword == "object") {
        while (!ts.at_end()) {
          if (ts.peek().kind != Token::Kind::Word) ts.fail("expected word");
          d.args.push_back(ts.next().text);
        }
      } else {
        ts.fail("unknown directive '" + d.keyword + "'");
      }
      if (!ts.at_end()) ts.fail("trailing input");
      out.push_back(std::move(d));
    } catch (const ParseError& e) {
      throw at_line(e, lno);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), lno, 1);
    }
  }
  return out;
}

void apply_setup(TheoryPack& pack, const std::vector<SetupDirective>& dirs) {
  for (const auto& d : dirs) {
    const auto& a = d.args;
    if (d.keyword == "atomic") {
      Signature s;
      s.name = a[0];
      s.kind = a[1] == "type" ? ProgramKind::Type : a[1] == "assign" ? ProgramKind::Assign : ProgramKind::TypeAssign;
      TokenStream t1(a[2]), t2(a[3]);
      s.in = parse_types(t1);
      s.out = parse_types(t2);
      s.impl = a.size() > 5 ? a[5] : s.name;
      if (!pack.signatures.count(s.name)) pack.signature_order.push_back(s.name);
      pack.signatures[s.name] = s;
    } else if (d.keyword == "special") {
      Signature s;
      s.name = a[0];
      s.kind = ProgramKind::Special;
      TokenStream t1(a[1]), t2(a[2]);
      s.in = parse_types(t1);
      s.out = parse_types(t2);
      s.impl = s.name;
      if (!pack.signatures.count(s.name)) pack.signature_order.push_back(s.name);
      pack.signatures[s.name] = s;
    } else if (d.keyword == "constant") {
      if (a.size() != 2) throw ParseError("constant expects a name and a type", 0, 0);
      if (!is_int_literal(a[0])) pack.constants.named.insert(a[0]);
      pack.constant_types[a[0]] = slot_type_from(a[1]);
    } else if (d.keyword == "typecheck") {
      pack.typecheck[slot_type_from(a.at(0))] = a.at(1);
    } else if (d.keyword == "equality") {
      pack.equality[slot_type_from(a.at(0))] = a.at(1);
    } else if (d.keyword == "sr") {
      pack.sr_programs.insert(a.begin(), a.end());
    } else if (d.keyword == "object") {
      pack.object_theory = a.at(0);
    } else if (d.keyword == "seed") {
      std::string label;
      for (size_t i = 1; i < a.size(); ++i) label += (i > 1 ? " " : "") + a[i];
      pack.seeds.emplace_back(a.at(0), label);
    }
  }
}

StoreEntry parse_store_entry(const std::string& line) {
  auto colon = line.find(" : ");
  if (colon == std::string::npos) throw ParseError("expected 'label : entry'", 1, 1);
  StoreEntry e;
  e.label = line.substr(0, colon);
  auto b = e.label.find_first_not_of(' ');
  e.label = b == std::string::npos ? "" : e.label.substr(b);
  if (e.label.empty()) throw ParseError("empty label", 1, 1);
  std::string body = line.substr(colon + 3);
  TokenStream ts(body);
  if (ts.peek().kind == Token::Kind::Word && ts.peek().text == "false") {
    ts.next();
    e.falsity = true;
    collect_atoms(ts, e.premise);
    if (e.premise.empty()) ts.fail("empty falsity program");
  } else {
    std::vector<Atomic> atoms;
    collect_atoms(ts, atoms);
    if (atoms.empty()) ts.fail("empty entry");
    e.conclusion = atoms.back();
    atoms.pop_back();
    e.premise = std::move(atoms);
  }
  if (!ts.at_end()) ts.fail("trailing input after entry");
  if (e.label.rfind("thm ", 0) == 0) e.kind = EntryKind::Theorem;
  if (e.label.rfind("lem ", 0) == 0) e.kind = EntryKind::Lemma;
  return e;
}

std::vector<StoreEntry> parse_store(const std::string& text) {
  std::vector<StoreEntry> out;
  auto lines = split_lines(text);
  std::set<std::string> labels;
  for (size_t li = 0; li < lines.size(); ++li) {
    if (is_blank_or_comment(lines[li])) continue;
    try {
      StoreEntry e = parse_store_entry(lines[li]);
      if (!labels.insert(e.label).second) throw ParseError("duplicate label '" + e.label + "'", 1, 1);
      std::vector<Atomic> all = e.premise;
      if (!e.falsity) all.push_back(e.conclusion);
      validate(all);
      out.push_back(std::move(e));
    } catch (const ParseError& e) {
      throw at_line(e, static_cast<int>(li + 1));
    } catch (const std::runtime_error& e) {
      throw ParseError(std::string("invalid entry: ") + e.what(), static_cast<int>(li + 1), 1);
    }
  }
  return out;
}

std::vector<SpecialList> parse_list_defs(const std::string& text) {
  std::vector<SpecialList> out;
  auto lines = split_lines(text);
  for (size_t li = 0; li < lines.size(); ++li) {
    if (is_blank_or_comment(lines[li])) continue;
    try {
      TokenStream ts(lines[li]);
      SpecialList l;
      l.head = parse_atomic(ts);
      if (ts.peek().text != "=") ts.fail("expected '='");
      ts.next();
      collect_atoms(ts, l.body);
      if (!ts.at_end()) ts.fail("trailing input");
      validate(Program::list([&] {
                 std::vector<Program> v;
                 for (const auto& a : l.body) v.push_back(Program::atomic(a));
                 return v;
               }()),
               {}, l.head.name);
      out.push_back(std::move(l));
    } catch (const ParseError& e) {
      throw at_line(e, static_cast<int>(li + 1));
    }
  }
  return out;
}

std::vector<SpecialDisj> parse_disj_defs(const std::string& text) {
  std::vector<SpecialDisj> out;
  auto lines = split_lines(text);
  for (size_t li = 0; li < lines.size(); ++li) {
    if (is_blank_or_comment(lines[li])) continue;
    try {
      TokenStream ts(lines[li]);
      SpecialDisj d;
      d.head = parse_atomic(ts);
      if (ts.peek().text != "=") ts.fail("expected '='");
      ts.next();
      d.left = parse_atomic(ts);
      ts.expect(Token::Kind::Bar, "'|'");
      d.right = parse_atomic(ts);
      if (!ts.at_end()) ts.fail("trailing input");
      if (d.left.out.size() != d.right.out.size())
        throw StructureError(StructureErrorKind::OperandOutputMismatch, "operands of " + d.head.name + " differ in output length");
      out.push_back(std::move(d));
    } catch (const ParseError& e) {
      throw at_line(e, static_cast<int>(li + 1));
    }
  }
  return out;
}

std::string canonical_render(const std::string& kind, const std::string& text) {
  std::string out;
  for (const auto& line : split_lines(text)) {
    if (is_blank_or_comment(line)) {
      out += line + "\n";
      continue;
    }
    if (kind == "setup")
      out += parse_setup(line).at(0).render();
    else if (kind == "axiom")
      out += parse_store(line).at(0).render();
    else if (kind == "list")
      out += parse_list_defs(line).at(0).render();
    else if (kind == "disj")
      out += parse_disj_defs(line).at(0).render();
    else
      throw std::invalid_argument("unknown data file kind '" + kind + "'");
    out += "\n";
  }
  return out;
}

}  // namespace vpc
