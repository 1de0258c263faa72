#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vpc/corpus.hpp"
#include "vpc/dynsys.hpp"
#include "vpc/extraction.hpp"
#include "vpc/prover.hpp"

namespace py = pybind11;
using namespace vpc;

namespace {

std::string root_or(const std::string& r) { return r.empty() ? corpus_root().string() : r; }

py::dict replay_theory(const std::string& theory, bool completeness, const std::string& root) {
  TheoryPack pack = load_pack(root_or(root), theory);
  ReplayOptions opt;
  opt.completeness = completeness;
  ReplayReport r = replay(pack, proof_files(root_or(root), theory), opt);
  py::list failed;
  for (const auto& o : r.outcomes)
    if (!o.ok) failed.append(py::make_tuple(o.label, o.message));
  py::dict d;
  d["passed"] = r.passed();
  d["total"] = r.outcomes.size();
  d["seconds"] = r.seconds;
  d["failed"] = failed;
  return d;
}

py::dict check_text(const std::string& theory, const std::string& text, const std::string& root) {
  ProofFile pf = parse_proof_file(text);
  TheoryPack pack = load_store(root_or(root), theory, pf.label);
  ProofOutcome o = verify_proof(pack, pf);
  py::list diags;
  for (const auto& d : o.check.diagnostics) diags.append(py::make_tuple(d.line, d.message));
  py::dict d;
  d["ok"] = o.ok;
  d["message"] = o.message;
  d["diagnostics"] = diags;
  return d;
}

// Interactive proof at the root level; splits are driven through child().
class Session {
 public:
  Session(const std::string& theory, const std::vector<std::string>& premises, const std::string& until, const std::string& root)
      : pack_(std::make_shared<const TheoryPack>(load_store(root_or(root), theory, until))) {
    std::vector<Atomic> ps;
    for (const auto& p : premises)
      for (auto& a : parse_atomic_sequence(p)) ps.push_back(std::move(a));
    state_ = std::make_unique<ProofState>(pack_, ps);
    cur_ = state_.get();
  }

  std::vector<std::string> lines() const {
    std::vector<std::string> out;
    for (const auto& l : cur_->lines()) out.push_back(render_proof_line(l));
    return out;
  }
  std::vector<std::string> options() const {
    std::vector<std::string> out;
    auto o = cur_->options();
    for (size_t i = 0; i < o.size(); ++i) out.push_back(o[i].render(static_cast<int>(i + 1)));
    return out;
  }
  std::string apply(size_t index) { return render_proof_line(cur_->apply_index(index)); }
  std::string step(const std::string& stmt, const std::string& conn) {
    auto cs = parse_connections(conn);
    if (cs.size() != 1) throw std::invalid_argument("one connection list expected");
    return render_proof_line(cur_->apply_statement(parse_atomic(stmt), cs[0]));
  }
  void split(int line) { cur_->split(line); }
  void focus(const std::vector<int>& path) {
    ProofState* s = state_.get();
    for (int i : path) s = &s->child(i);
    cur_ = s;
  }
  std::string contract() { return render_proof_line(cur_->contract()); }
  std::string declare_false(const std::string& conn) { return render_proof_line(cur_->declare_false(parse_connections(conn).at(0))); }
  void undo() { cur_->undo(); }
  bool complete() const { return cur_->complete(); }
  std::string status() const { return to_string(cur_->status()); }
  std::string extract_block(const std::string& kind, const std::string& label) const {
    if (!cur_->complete()) throw std::runtime_error("proof is not complete");
    return render_theorem_block(kind, label, extract(cur_->lines()), cur_->lines());
  }

 private:
  std::shared_ptr<const TheoryPack> pack_;
  std::unique_ptr<ProofState> state_;
  ProofState* cur_;
};

}  // namespace

PYBIND11_MODULE(pyvpc, m) {
  m.doc() = "proof checking, interactive proofs and the bundled dynamical systems";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ProverError>(m, "ProverError", PyExc_RuntimeError);
  py::register_exception<DynsysError>(m, "DynsysError", PyExc_ArithmeticError);

  m.def("corpus_root", [] { return corpus_root().string(); });
  m.def("theories", [](const std::string& root) { return list_theories(root_or(root)); }, py::arg("root") = "");
  m.def("replay", &replay_theory, py::arg("theory"), py::arg("completeness") = false, py::arg("root") = "");
  m.def("check", &check_text, py::arg("theory"), py::arg("text"), py::arg("root") = "");

  py::class_<Session>(m, "Session")
      .def(py::init<const std::string&, const std::vector<std::string>&, const std::string&, const std::string&>(), py::arg("theory"),
           py::arg("premises") = std::vector<std::string>{}, py::arg("until") = "", py::arg("root") = "")
      .def("lines", &Session::lines)
      .def("options", &Session::options)
      .def("apply", &Session::apply, py::arg("index"))
      .def("step", &Session::step, py::arg("statement"), py::arg("connection"))
      .def("split", &Session::split, py::arg("line"))
      .def("focus", &Session::focus, py::arg("path"), "path of child indices from the root, [] for the root")
      .def("contract", &Session::contract)
      .def("declare_false", &Session::declare_false, py::arg("connection"))
      .def("undo", &Session::undo)
      .def_property_readonly("complete", &Session::complete)
      .def_property_readonly("status", &Session::status)
      .def("extract", &Session::extract_block, py::arg("kind") = "Theorem", py::arg("label") = "thm new");

  m.def(
      "tent_trajectory",
      [](int64_t a, int64_t v0, int64_t n) {
        Trace t = trace(PartitionedLinear::tent(a), v0, n);
        py::dict d;
        d["values"] = t.values;
        d["cycle_start"] = t.cycle_start;
        d["cycle_length"] = t.cycle_length;
        d["error"] = t.error;
        return d;
      },
      py::arg("a"), py::arg("v0"), py::arg("n"));
  m.def(
      "certify_tent",
      [](int64_t a, int64_t lo, int64_t hi) {
        Certificate c = certify(PartitionedLinear::tent(a), {false, lo, hi});
        py::dict d;
        d["issued"] = c.issued;
        d["q"] = py::make_tuple(c.q.lo, c.q.hi);
        d["reason"] = c.reason;
        d["validated_starts"] = c.validated_starts;
        return d;
      },
      py::arg("a"), py::arg("lo"), py::arg("hi"));
}
