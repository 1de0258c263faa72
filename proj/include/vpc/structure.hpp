#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "vpc/term.hpp"

namespace vpc {

enum class StructureErrorKind { DuplicateOutput, IoDependencyViolation, NameClash, OperandOutputMismatch };

const char* to_string(StructureErrorKind k);

struct StructureError : std::runtime_error {
  StructureErrorKind kind;
  StructureError(StructureErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct MainIo {
  IoList input;
  IoList output;
};

// Checks the structural conditions and derives the main I/O lists.
// main_name, when given, must differ from every subprogram name of a list.
MainIo validate(const Program& p, const Constants& consts = {}, const std::optional<Name>& main_name = std::nullopt);
MainIo validate(const std::vector<Atomic>& lines, const Constants& consts = {});

bool is_valid(const Program& p, const Constants& consts = {});

// Validates the list with its elements permuted by perm.
MainIo reorder_check(const Program& p, const std::vector<size_t>& perm, const Constants& consts = {});

}  // namespace vpc
