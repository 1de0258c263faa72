#pragma once

#include <iostream>
#include <memory>
#include <vector>

#include "vpc/pack.hpp"
#include "vpc/prover.hpp"

namespace vpc {

// Line-oriented proof session. Commands: an option index, split L, child 0|1,
// up, contract, false <connection>, undo, extract [label], show, help, quit.
// Returns 0 when the session ends with a complete proof, 1 otherwise.
int run_repl(std::shared_ptr<const TheoryPack> pack, std::vector<Atomic> premises, std::istream& in, std::ostream& out);

}  // namespace vpc
