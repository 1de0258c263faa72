#include <doctest.h>

#include <chrono>

#include "support.hpp"
#include "vpc/extraction.hpp"

using namespace vpc;
using namespace vpc::testing;

TEST_CASE("every corpus proof replays") {
  auto t0 = std::chrono::steady_clock::now();
  size_t total = 0;
  for (const auto& theory : list_theories(corpus_root())) {
    auto files = proof_files(corpus_root(), theory);
    if (files.empty()) continue;
    TheoryPack pack = load_pack(corpus_root(), theory);
    ReplayReport r = replay(pack, files);
    CAPTURE(theory);
    CHECK(r.passed() == files.size());
    total += files.size();
  }
  CHECK(total == 112);
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(60));
}

TEST_CASE("proof files round-trip") {
  for (const auto& theory : list_theories(corpus_root()))
    for (const auto& f : proof_files(corpus_root(), theory)) {
      CAPTURE(f.string());
      std::string text = read_file(f);
      ProofFile pf = parse_proof_file(text);
      CHECK(render_proof_file(pf) == text);
      CHECK(parse_proof_file(render_proof_file(pf)).lines.size() == pf.lines.size());
    }
}

TEST_CASE("listings rebuilt step by step extract to the corpus text") {
  struct Spot {
    const char* theory;
    const char* label;
    size_t lines;
  };
  for (Spot s : {Spot{"integers", "thm 1", 17}, Spot{"integers", "thm 16", 9}, Spot{"integers", "thm 17", 3}, Spot{"integers", "thm 27", 3},
                 Spot{"integers", "lem 19", 9}, Spot{"pecr-higher-order", "thm 7", 18}, Spot{"matrices", "thm 29", 57}}) {
    CAPTURE(s.label);
    ProofFile pf = corpus_proof(s.theory, s.label);
    CHECK(pf.lines.size() == s.lines);
    auto pack = std::make_shared<const TheoryPack>(load_store(corpus_root(), s.theory, s.label));
    auto st = rebuild(pack, pf);
    REQUIRE(st->complete());
    Extraction ex = extract(st->lines());
    CHECK(ex.redundancy_free());
    std::string block = render_theorem_block(pf.kind_word, pf.label, ex, st->lines());
    CHECK(tokens(block) == tokens(render_proof_file(pf)));
    CHECK(block == render_proof_file(pf));
  }
}

TEST_CASE("store entries of replayed theorems") {
  TheoryPack pack = load_store(corpus_root(), "integers");
  const StoreEntry* t1 = pack.find_entry("thm 1");
  REQUIRE(t1);
  CHECK(t1->kind == EntryKind::Theorem);
  CHECK(t1->render() == "thm 1 : " + corpus_proof("integers", "thm 1").statement.render());
  const StoreEntry* l19 = pack.find_entry("lem 19");
  REQUIRE(l19);
  CHECK(l19->falsity);
  CHECK(kind_of_label("lem 4") == EntryKind::Lemma);
  CHECK(kind_of_label("thm 4") == EntryKind::Theorem);
  CHECK(kind_of_label("axi 4") == EntryKind::Axiom);
  CHECK_THROWS(load_pack(corpus_root(), "no-such-theory"));
}
