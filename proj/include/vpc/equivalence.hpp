#pragma once

#include <functional>
#include <map>
#include <optional>

#include "vpc/term.hpp"

namespace vpc {

using Renaming = std::map<Name, Name>;

// Extends m so that pattern maps onto instance. Pattern constants must map to
// themselves; distinct pattern variables may share an instance name.
bool match_atomic(const Atomic& pattern, const Atomic& instance, Renaming& m, const Constants& consts);

// Renaming witnessing that instance is I/O equivalent to pattern (pattern -> instance).
std::optional<Renaming> io_equiv(const std::vector<Atomic>& instance, const std::vector<Atomic>& pattern, const Constants& consts = {});
std::optional<Renaming> io_equiv(const Program& instance, const Program& pattern, const Constants& consts = {});

Atomic apply_renaming(const Atomic& a, const Renaming& m);
Program apply_renaming(const Program& p, const Renaming& m);

using FalsityOracle = std::function<bool(const Program&)>;

// Program equivalence: equal element sets modulo disjunction commutation and
// distribution of list elements over disjunctions. Alternatives reported false
// by the oracle are dropped, so any two false programs are equivalent.
bool prog_equiv(const Program& p, const Program& q, const FalsityOracle& is_false = nullptr);

}  // namespace vpc
