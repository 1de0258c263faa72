#include "vpc/repl.hpp"

#include <sstream>

#include "vpc/corpus.hpp"
#include "vpc/extraction.hpp"

namespace vpc {

namespace {

struct Repl {
  ProofState root;
  std::vector<int> path;  // child indices from the root to the focus
  std::ostream& out;

  ProofState& focus() {
    ProofState* s = &root;
    for (int i : path) s = &s->child(i);
    return *s;
  }

  ProofState* parent() {
    if (path.empty()) return nullptr;
    ProofState* s = &root;
    for (size_t k = 0; k + 1 < path.size(); ++k) s = &s->child(path[k]);
    return s;
  }

  std::string where() const {
    std::string w = "proof";
    for (int i : path) w += "/child " + std::to_string(i);
    return w;
  }

  void show() {
    ProofState& s = focus();
    out << "-- " << where() << " (" << to_string(s.status()) << ")\n";
    for (const auto& l : s.lines()) out << render_proof_line(l) << "\n";
    if (s.status() == ProofStatus::Split) {
      out << "split pending: child 0 / child 1, then contract\n";
      return;
    }
    auto opts = s.options();
    for (size_t i = 0; i < opts.size(); ++i) out << "  " << opts[i].render(static_cast<int>(i + 1)) << "\n";
    auto fs = s.falsity_options();
    for (const auto& f : fs) out << "  false " << Connection{f.axiom_label, f.lines, true}.render() << "\n";
    if (opts.empty() && fs.empty()) out << "  (no options)\n";
  }

  // a finished branch hands focus to its sibling, then to the parent
  void advance() {
    ProofState* p = parent();
    if (!p) return;
    auto done = [&](const ProofState& c) { return c.lines().size() == p->lines().size() + 1 || c.status() == ProofStatus::ClosedFalse; };
    if (!done(focus())) return;
    int other = 1 - path.back();
    if (!done(p->child(other))) {
      path.back() = other;
      out << "branch done, moving to child " << other << "\n";
    } else {
      path.pop_back();
      out << "both branches done, contract to close the split\n";
    }
  }
};

}  // namespace

int run_repl(std::shared_ptr<const TheoryPack> pack, std::vector<Atomic> premises, std::istream& in, std::ostream& out) {
  Repl r{ProofState(pack, std::move(premises)), {}, out};
  r.show();
  std::string line;
  while (out << "> " << std::flush, std::getline(in, line)) {
    std::istringstream ls(line);
    std::string cmd;
    if (!(ls >> cmd)) continue;
    std::string rest;
    std::getline(ls, rest);
    try {
      if (cmd == "quit" || cmd == "q") break;
      if (cmd == "help") {
        out << "index | split L | child 0|1 | up | contract | false <label [lines]> | undo | extract [label] | show | quit\n";
        continue;
      }
      if (cmd == "show") {
        r.show();
        continue;
      }
      if (cmd.find_first_not_of("0123456789") == std::string::npos) {
        size_t k = std::stoul(cmd);
        auto opts = r.focus().options();
        if (k == 0 || k > opts.size()) {
          out << "invalid option " << cmd << ", choose 1.." << opts.size() << "\n";
          continue;
        }
        r.focus().apply_option(opts[k - 1]);
        r.advance();
      } else if (cmd == "split") {
        r.focus().split(std::stoi(rest));
        r.path.push_back(0);
      } else if (cmd == "child") {
        int i = std::stoi(rest);
        r.focus().child(i);
        r.path.push_back(i);
      } else if (cmd == "up") {
        if (!r.path.empty()) r.path.pop_back();
      } else if (cmd == "contract") {
        if (r.focus().status() != ProofStatus::Split && !r.path.empty()) r.path.pop_back();
        r.focus().contract();
        r.advance();
      } else if (cmd == "false") {
        auto conns = parse_connections(rest);
        if (conns.size() != 1) {
          out << "false takes one connection, e.g. false ord 7 [3]\n";
          continue;
        }
        r.focus().declare_false(conns[0]);
        r.advance();
      } else if (cmd == "undo") {
        r.focus().undo();
      } else if (cmd == "extract") {
        if (!r.root.complete()) {
          out << "proof is not complete\n";
          continue;
        }
        std::string label = rest.empty() ? "thm new" : rest.substr(rest.find_first_not_of(' '));
        Extraction ex = extract(r.root.lines());
        out << render_theorem_block(kind_of_label(label) == EntryKind::Lemma ? "Lemma" : "Theorem", label, ex, r.root.lines());
        for (const auto& w : ex.warnings) out << "warning: " << w << "\n";
        continue;
      } else {
        out << "unknown command '" << cmd << "' (help lists commands)\n";
        continue;
      }
    } catch (const ProverError& e) {
      out << e.code << ": " << e.what() << "\n";
      continue;
    } catch (const std::exception& e) {
      out << "error: " << e.what() << "\n";
      continue;
    }
    r.show();
  }
  return r.root.complete() ? 0 : 1;
}

}  // namespace vpc
