#include "vpc/structure.hpp"

#include <unordered_set>

namespace vpc {

const char* to_string(StructureErrorKind k) {
  switch (k) {
    case StructureErrorKind::DuplicateOutput: return "DuplicateOutput";
    case StructureErrorKind::IoDependencyViolation: return "IoDependencyViolation";
    case StructureErrorKind::NameClash: return "NameClash";
    case StructureErrorKind::OperandOutputMismatch: return "OperandOutputMismatch";
  }
  return "?";
}

namespace {

IoList strip_constants(const IoList& l, const Constants& consts) {
  IoList out;
  for (const auto& n : l)
    if (!consts.contains(n)) out.push_back(n);
  return out;
}

MainIo element_io(const Program& p, const Constants& consts);

MainIo atomic_io(const Atomic& a, const Constants& consts) {
  std::unordered_set<Name> outs;
  for (const auto& y : a.out) {
    if (consts.contains(y)) throw StructureError(StructureErrorKind::DuplicateOutput, "constant '" + y + "' used as output of " + a.name);
    if (!outs.insert(y).second) throw StructureError(StructureErrorKind::DuplicateOutput, "output '" + y + "' repeated in " + a.name);
  }
  for (const auto& x : a.in)
    if (outs.count(x)) throw StructureError(StructureErrorKind::IoDependencyViolation, "'" + x + "' is both input and output of " + a.name);
  return {dedup(strip_constants(a.in, consts)), a.out};
}

MainIo list_io(const std::vector<Program>& items, const Constants& consts) {
  std::vector<MainIo> ios;
  ios.reserve(items.size());
  for (const auto& it : items) ios.push_back(element_io(it, consts));

  std::unordered_set<Name> all_out;
  for (size_t i = 0; i < items.size(); ++i)
    for (const auto& y : ios[i].output)
      if (!all_out.insert(y).second) throw StructureError(StructureErrorKind::DuplicateOutput, "output '" + y + "' assigned twice");

  // an input of element i may not be produced by element i or any later element
  std::unordered_set<Name> later;
  for (size_t i = items.size(); i-- > 0;) {
    for (const auto& y : ios[i].output) later.insert(y);
    for (const auto& x : ios[i].input)
      if (later.count(x))
        throw StructureError(StructureErrorKind::IoDependencyViolation, "'" + x + "' is read by element " + std::to_string(i + 1) + " before it is assigned");
  }

  IoList xbar, y;
  for (const auto& io : ios) {
    xbar = concat(xbar, io.input);
    y = concat(y, io.output);
  }
  xbar = dedup(xbar);
  return {list_subtract(xbar, y), y};
}

MainIo element_io(const Program& p, const Constants& consts) {
  switch (p.kind()) {
    case Program::Kind::Atomic: return atomic_io(p.atom(), consts);
    case Program::Kind::List: return list_io(p.items(), consts);
    case Program::Kind::Disjunction: {
      MainIo l = element_io(p.left(), consts);
      MainIo r = element_io(p.right(), consts);
      if (l.output.size() != r.output.size())
        throw StructureError(StructureErrorKind::OperandOutputMismatch,
                             "disjunction operands have " + std::to_string(l.output.size()) + " and " + std::to_string(r.output.size()) + " outputs");
      IoList xbar = dedup(concat(l.input, r.input));
      return {list_subtract(xbar, l.output), l.output};
    }
  }
  return {};
}

}  // namespace

MainIo validate(const Program& p, const Constants& consts, const std::optional<Name>& main_name) {
  if (main_name && p.is_list() && p.items().size() > 1) {
    for (const auto& a : p.atoms())
      if (a.name == *main_name) throw StructureError(StructureErrorKind::NameClash, "main program name '" + *main_name + "' reused inside its body");
  }
  return element_io(p, consts);
}

MainIo validate(const std::vector<Atomic>& lines, const Constants& consts) {
  std::vector<Program> items;
  items.reserve(lines.size());
  for (const auto& a : lines) items.push_back(Program::atomic(a));
  return list_io(items, consts);
}

bool is_valid(const Program& p, const Constants& consts) {
  try {
    validate(p, consts);
    return true;
  } catch (const StructureError&) {
    return false;
  }
}

MainIo reorder_check(const Program& p, const std::vector<size_t>& perm, const Constants& consts) {
  auto els = p.elements();
  if (perm.size() != els.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<Program> out;
  for (size_t i : perm) out.push_back(els.at(i));
  return validate(Program::list(std::move(out)), consts);
}

}  // namespace vpc
