#include "vpc/prover.hpp"

#include <algorithm>

#include "vpc/structure.hpp"

namespace vpc {

const char* to_string(ProofStatus s) {
  switch (s) {
    case ProofStatus::Open: return "open";
    case ProofStatus::Split: return "split";
    case ProofStatus::ClosedFalse: return "closed_false";
  }
  return "?";
}

std::vector<MatchLine> match_lines(const std::vector<ProofLine>& lines) {
  std::vector<MatchLine> out;
  for (const auto& l : lines)
    if (!l.is_false) out.push_back(MatchLine{l.label, l.statement});
  return out;
}

namespace {

std::set<Name> used_names(const std::vector<ProofLine>& lines) {
  std::set<Name> s;
  for (const auto& l : lines)
    if (!l.is_false) {
      s.insert(l.statement.in.begin(), l.statement.in.end());
      s.insert(l.statement.out.begin(), l.statement.out.end());
    }
  return s;
}

std::vector<Atomic> statements(const std::vector<ProofLine>& lines) {
  std::vector<Atomic> out;
  for (const auto& l : lines)
    if (!l.is_false) out.push_back(l.statement);
  return out;
}

bool extends_validly(const std::vector<ProofLine>& lines, const Atomic& stmt, const Constants& consts) {
  auto all = statements(lines);
  all.push_back(stmt);
  try {
    validate(all, consts);
    return true;
  } catch (const StructureError&) {
    return false;
  }
}

Connection connection_of(const OptionEntry& o) { return Connection{o.axiom_label, o.lines, !o.lines.empty()}; }

}  // namespace

std::pair<Atomic, Atomic> disjunction_operands(const TheoryPack& pack, const Atomic& stmt, const std::set<Name>& used) {
  const SpecialDisj* d = pack.find_disj(stmt.name);
  if (!d) throw ProverError("NotADisjunction", "'" + stmt.name + "' is not a special disjunction");
  if (d->head.in.size() != stmt.in.size() || d->head.out.size() != stmt.out.size())
    throw ProverError("NotADisjunction", "arity of '" + stmt.render() + "' differs from its definition");
  Renaming m;
  if (!match_atomic(d->head, stmt, m, pack.constants)) throw ProverError("NotADisjunction", "'" + stmt.render() + "' does not match its definition");
  std::set<Name> taken = used;
  for (const Atomic* op : {&d->left, &d->right})
    for (const auto* l : {&op->in, &op->out})
      for (const auto& v : *l)
        if (!pack.constants.contains(v) && !m.count(v)) {
          Name f = fresh_names(taken, 1, pack.constants)[0];
          taken.insert(f);
          m[v] = f;
        }
  return {apply_renaming(d->left, m), apply_renaming(d->right, m)};
}

ProofState::ProofState(std::shared_ptr<const TheoryPack> pack, std::vector<Atomic> premises) : pack_(std::move(pack)) {
  validate(premises, pack_->constants);
  int k = 1;
  for (auto& a : premises) {
    ProofLine l;
    l.label = k++;
    l.statement = std::move(a);
    lines_.push_back(std::move(l));
  }
  premise_count_ = lines_.size();
}

void ProofState::require_open() const {
  if (status_ == ProofStatus::ClosedFalse) throw ProverError("ClosedFalse", "proof is closed by falsity");
  if (status_ == ProofStatus::Split) throw ProverError("SplitPending", "proof is split; work in the children or contract");
}

std::vector<OptionEntry> ProofState::options() const {
  if (status_ != ProofStatus::Open) return {};
  return Matcher(*pack_).enumerate(match_lines(lines_));
}

std::vector<OptionEntry> ProofState::falsity_options() const {
  if (status_ != ProofStatus::Open) return {};
  return Matcher(*pack_).enumerate_falsities(match_lines(lines_));
}

const ProofLine& ProofState::apply_option(const OptionEntry& opt) {
  require_open();
  for (const auto& o : options()) {
    if (o.axiom_label == opt.axiom_label && o.lines == opt.lines && o.conclusion == opt.conclusion) {
      ProofLine l;
      l.label = static_cast<int>(lines_.size() + 1);
      l.statement = o.conclusion;
      l.connections.push_back(connection_of(o));
      lines_.push_back(std::move(l));
      return lines_.back();
    }
  }
  throw ProverError("StaleOption", "option '" + opt.axiom_label + "' is not available in the current proof state");
}

const ProofLine& ProofState::apply_index(size_t one_based) {
  require_open();
  auto opts = options();
  if (one_based == 0 || one_based > opts.size()) throw ProverError("StaleOption", "option index " + std::to_string(one_based) + " out of range");
  return apply_option(opts[one_based - 1]);
}

const ProofLine& ProofState::apply_statement(const Atomic& stmt, const Connection& conn) {
  require_open();
  // a typed statement is only accepted when it is one of the enumerated options
  auto used = used_names(lines_);
  for (const auto& o : options()) {
    if (o.axiom_label != conn.label || o.lines != conn.lines || !conclusion_accepts(o, stmt, used, pack_->constants)) continue;
    if (!extends_validly(lines_, stmt, pack_->constants)) break;
    ProofLine l;
    l.label = static_cast<int>(lines_.size() + 1);
    l.statement = stmt;
    l.connections.push_back(Connection{conn.label, conn.lines, !conn.lines.empty()});
    lines_.push_back(std::move(l));
    return lines_.back();
  }
  throw ProverError("StaleOption", "'" + stmt.render() + "' via " + conn.render() + " is not among the current options");
}

void ProofState::split(int line_label) {
  require_open();
  if (line_label < 1 || static_cast<size_t>(line_label) > lines_.size()) throw ProverError("NoSuchLine", "no line " + std::to_string(line_label));
  ProofLine& target = lines_[static_cast<size_t>(line_label - 1)];
  if (target.is_false) throw ProverError("NotADisjunction", ":false line cannot be split");
  auto ops = disjunction_operands(*pack_, target.statement, used_names(lines_));
  for (int i = 0; i < 2; ++i) {
    auto child = std::make_unique<ProofState>(*this);
    child->lines_[static_cast<size_t>(line_label - 1)].statement = i == 0 ? ops.first : ops.second;
    children_[i] = std::move(child);
  }
  target.split = true;
  status_ = ProofStatus::Split;
  split_line_ = line_label;
}

ProofState& ProofState::child(int which) {
  if (status_ != ProofStatus::Split || which < 0 || which > 1) throw ProverError("NoSuchChild", "no child " + std::to_string(which));
  return *children_[which];
}

const ProofState& ProofState::child(int which) const {
  if (status_ != ProofStatus::Split || which < 0 || which > 1) throw ProverError("NoSuchChild", "no child " + std::to_string(which));
  return *children_[which];
}

// copy used when creating children; children never own grandchildren
ProofState::ProofState(const ProofState& o) : pack_(o.pack_), lines_(o.lines_), premise_count_(o.premise_count_), status_(ProofStatus::Open) {}

const ProofLine& ProofState::contract() {
  if (status_ != ProofStatus::Split) throw ProverError("NotSplit", "nothing to contract");
  const ProofLine* ends[2];
  for (int i = 0; i < 2; ++i) {
    const auto& cl = children_[i]->lines_;
    if (children_[i]->status_ == ProofStatus::Split || cl.size() != lines_.size() + 1 || cl.back().connections.size() != 1)
      throw ProverError("ChildIncomplete", "child " + std::to_string(i) + " must end in exactly one derived line");
    ends[i] = &cl.back();
  }
  ProofLine l;
  l.label = static_cast<int>(lines_.size() + 1);
  l.connections = {ends[0]->connections[0], ends[1]->connections[0]};
  if (ends[0]->is_false && ends[1]->is_false) {
    l.is_false = true;
  } else if (ends[0]->is_false || ends[1]->is_false) {
    l.statement = ends[0]->is_false ? ends[1]->statement : ends[0]->statement;
  } else {
    const Atomic& a = ends[0]->statement;
    const Atomic& b = ends[1]->statement;
    bool same = a.name == b.name && a.in == b.in && a.out.size() == b.out.size();
    auto used = used_names(lines_);
    for (size_t j = 0; same && j < a.out.size(); ++j)
      same = a.out[j] == b.out[j] || (!used.count(a.out[j]) && !used.count(b.out[j]));
    if (!same) throw ProverError("ConclusionMismatch", "children conclude '" + a.render() + "' and '" + b.render() + "'");
    l.statement = a;
  }
  lines_.push_back(std::move(l));
  children_[0].reset();
  children_[1].reset();
  status_ = lines_.back().is_false ? ProofStatus::ClosedFalse : ProofStatus::Open;
  return lines_.back();
}

const ProofLine& ProofState::declare_false(const Connection& conn) {
  require_open();
  for (const auto& o : Matcher(*pack_).at(conn.label, conn.lines, match_lines(lines_))) {
    if (!o.falsity) continue;
    ProofLine l;
    l.label = static_cast<int>(lines_.size() + 1);
    l.is_false = true;
    l.connections.push_back(Connection{conn.label, conn.lines, true});
    lines_.push_back(std::move(l));
    status_ = ProofStatus::ClosedFalse;
    return lines_.back();
  }
  throw ProverError("NoFalsityMatch", "no falsity entry matches " + conn.render());
}

void ProofState::undo() {
  if (status_ == ProofStatus::Split) {
    children_[0].reset();
    children_[1].reset();
    lines_[static_cast<size_t>(split_line_ - 1)].split = false;
    status_ = ProofStatus::Open;
    return;
  }
  if (lines_.size() <= premise_count_) throw ProverError("NothingToUndo", "no derived line to remove");
  bool was_contraction = lines_.back().connections.size() == 2;
  lines_.pop_back();
  if (was_contraction)
    for (auto& l : lines_) l.split = false;
  status_ = ProofStatus::Open;
}

bool ProofState::complete() const {
  if (status_ == ProofStatus::Split) return false;
  return status_ == ProofStatus::ClosedFalse || lines_.size() > premise_count_;
}

// batch checking

std::string CheckReport::summary() const {
  if (ok) return "OK (" + std::to_string(lines_checked) + " lines)";
  std::string s;
  for (const auto& d : diagnostics) s += "line " + std::to_string(d.line) + ": " + d.message + "\n";
  return s;
}

namespace {

enum class Verdict { None, Derives, Falsity };

struct Checker {
  const TheoryPack& pack;
  Matcher matcher;
  bool completeness;
  int completeness_checked = 0;

  // Does conn justify the line in this prefix, and how?
  Verdict single(const std::vector<ProofLine>& prefix, const ProofLine& line, const Connection& conn, std::string& why) {
    auto ml = match_lines(prefix);
    auto opts = matcher.at(conn.label, conn.lines, ml);
    if (opts.empty()) {
      why = pack.rules_labelled(conn.label).empty() ? "unknown rule '" + conn.label + "'" : "premise of " + conn.render() + " does not match";
      return Verdict::None;
    }
    for (const auto& o : opts)
      if (o.falsity) {
        if (completeness && !in_enumeration(ml, o, line, true)) {
          why = conn.render() + " missing from falsity enumeration";
          return Verdict::None;
        }
        return Verdict::Falsity;
      }
    if (line.is_false) {
      why = conn.render() + " is not a falsity entry";
      return Verdict::None;
    }
    auto used = used_names(prefix);
    for (const auto& o : opts) {
      if (!conclusion_accepts(o, line.statement, used, pack.constants)) continue;
      if (!extends_validly(prefix, line.statement, pack.constants)) {
        why = "statement breaks program structure";
        return Verdict::None;
      }
      if (completeness && !in_enumeration(ml, o, line, false)) {
        why = conn.render() + " -> " + line.statement.render() + " missing from options enumeration";
        return Verdict::None;
      }
      return Verdict::Derives;
    }
    why = conn.render() + " yields " + opts.front().conclusion.render() + ", not " + line.statement.render();
    return Verdict::None;
  }

  bool in_enumeration(const std::vector<MatchLine>& ml, const OptionEntry& want, const ProofLine& line, bool falsity) {
    ++completeness_checked;
    auto all = falsity ? matcher.enumerate_falsities(ml) : matcher.enumerate(ml);
    std::set<Name> used;
    for (const auto& l : ml) {
      used.insert(l.statement.in.begin(), l.statement.in.end());
      used.insert(l.statement.out.begin(), l.statement.out.end());
    }
    for (const auto& o : all) {
      if (o.axiom_label != want.axiom_label || o.lines != want.lines) continue;
      if (falsity || conclusion_accepts(o, line.statement, used, pack.constants)) return true;
    }
    return false;
  }
};

}  // namespace

CheckReport check_proof(const TheoryPack& pack, const ProofFile& proof, const CheckOptions& opts) {
  CheckReport rep;
  Checker ck{pack, Matcher(pack), opts.completeness};
  auto fail = [&](int line, const std::string& msg) {
    rep.ok = false;
    rep.diagnostics.push_back({line, msg});
  };
  const auto& lines = proof.lines;
  for (size_t k = 0; k < lines.size(); ++k)
    if (lines[k].label != static_cast<int>(k + 1)) {
      fail(lines[k].label, "line labels must run 1.." + std::to_string(lines.size()));
      return rep;
    }
  size_t np = 0;
  while (np < lines.size() && lines[np].is_premise()) ++np;
  try {
    validate(statements({lines.begin(), lines.begin() + static_cast<long>(np)}), pack.constants);
  } catch (const StructureError& e) {
    fail(1, std::string("premises: ") + e.what());
    return rep;
  }
  for (size_t k = np; k < lines.size(); ++k) {
    const ProofLine& line = lines[k];
    std::vector<ProofLine> prefix(lines.begin(), lines.begin() + static_cast<long>(k));
    ++rep.lines_checked;
    if (line.is_premise()) {
      fail(line.label, "premise line after derived lines");
      break;
    }
    if (k > 0 && lines[k - 1].is_false) {
      fail(line.label, "line after :false");
      break;
    }
    std::string why;
    if (line.connections.size() == 1) {
      Verdict v = ck.single(prefix, line, line.connections[0], why);
      if (v == Verdict::None || (v == Verdict::Falsity) != line.is_false) {
        fail(line.label, why.empty() ? "falsity connection on a statement line" : why);
        break;
      }
      continue;
    }
    if (line.connections.size() != 2) {
      fail(line.label, "expected one or two connection lists");
      break;
    }
    int s = -1;
    for (size_t j = 0; j < k; ++j)
      if (prefix[j].split) s = static_cast<int>(j);
    if (s < 0) {
      fail(line.label, "contraction without a split line");
      break;
    }
    std::pair<Atomic, Atomic> ops;
    try {
      ops = disjunction_operands(pack, prefix[static_cast<size_t>(s)].statement, used_names(prefix));
    } catch (const ProverError& e) {
      fail(line.label, e.what());
      break;
    }
    std::vector<ProofLine> child[2] = {prefix, prefix};
    child[0][static_cast<size_t>(s)].statement = ops.first;
    child[1][static_cast<size_t>(s)].statement = ops.second;
    for (auto& c : child) c[static_cast<size_t>(s)].split = false;
    bool ok = false;
    std::string first_why;
    for (int order = 0; order < 2 && !ok; ++order) {
      const Connection& ca = line.connections[static_cast<size_t>(order)];
      const Connection& cb = line.connections[static_cast<size_t>(1 - order)];
      std::string wa, wb;
      Verdict va = ck.single(child[0], line, ca, wa);
      Verdict vb = va == Verdict::None ? Verdict::None : ck.single(child[1], line, cb, wb);
      if (va == Verdict::None || vb == Verdict::None) {
        if (first_why.empty()) first_why = !wa.empty() ? "left operand: " + wa : "right operand: " + wb;
        continue;
      }
      bool both_false = va == Verdict::Falsity && vb == Verdict::Falsity;
      ok = line.is_false ? both_false : !both_false;
    }
    if (!ok) {
      fail(line.label, first_why.empty() ? "contraction does not close both operands" : first_why);
      break;
    }
  }
  rep.completeness_checked = ck.completeness_checked;
  return rep;
}

}  // namespace vpc
