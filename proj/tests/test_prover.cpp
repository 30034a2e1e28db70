#include <doctest.h>

#include "latlog/duality.hpp"
#include "latlog/prover.hpp"
#include "latlog/shapes.hpp"
#include "test_helpers.hpp"

using namespace latlog;
using namespace latlog::testing;

TEST_CASE("whitman_decide on the staple pairs") {
  CHECK(whitman_decide(parse_pair("p <= p | q")));
  CHECK(whitman_decide(parse_pair("p & q <= p")));
  CHECK(whitman_decide(parse_pair("bot <= p")));
  CHECK(whitman_decide(parse_pair("p <= top")));
  CHECK(whitman_decide(parse_pair("p & (p | q) <= p")));
  CHECK(whitman_decide(parse_pair("p <= p & (p | q)")));
  CHECK_FALSE(whitman_decide(parse_pair("p & (q | r) <= (p & q) | (p & r)")));
  CHECK(whitman_decide(parse_pair("(p & q) | (p & r) <= p & (q | r)")));
  CHECK_FALSE(whitman_decide(parse_pair("top <= p")));
  CHECK_FALSE(whitman_decide(parse_pair("p | q <= p & q")));
  CHECK_FALSE(whitman_decide(parse_pair("((p1 & p3) | p2) & p3 <= (p1 & p3) | (p2 & p3)")));
  CHECK_THROWS_AS(whitman_decide(parse_pair("box p <= p")), ModalNotSupported);
}

TEST_CASE("the rejected distributivity direction fails in the filter lattice of M3") {
  // Independent confirmation of non-derivability: a concrete lattice
  // countermodel evaluated algebraically.
  BoundedLattice m3 = m3_lattice();
  ComplexAlgebra ca = complex_algebra(m3.sl);
  const Poset& p = m3.sl.poset;
  Assignment sigma{{"p", ca.elem_of(m3.sl.up(p.index_of("a")))},
                   {"q", ca.elem_of(m3.sl.up(p.index_of("b")))},
                   {"r", ca.elem_of(m3.sl.up(p.index_of("c")))}};
  ConsequencePair pair = parse_pair("p & (q | r) <= (p & q) | (p & r)");
  int lhs = eval_in_lattice(ca.lat, sigma, pair.lhs);
  int rhs = eval_in_lattice(ca.lat, sigma, pair.rhs);
  CHECK_FALSE(ca.lat.leq(lhs, rhs));
}

TEST_CASE("whitman agrees with validity over all lattices up to 5 elements") {
  std::vector<BoundedLattice> lats;
  for (int n = 1; n <= 5; ++n)
    enumerate_frames(n, FrameKind::Lattice, true, [&](const EnumeratedFrame& ef) {
      lats.push_back(lattice_structure(ef.sl.poset));
    });
  const char* pairs[] = {
      "p <= p | q", "p & q <= p", "p & (q | r) <= (p & q) | (p & r)",
      "(p & q) | (p & r) <= p & (q | r)", "p & (p | q) <= p",
      "((p1 & p3) | p2) & p3 <= (p1 & p3) | (p2 & p3)", "p | q <= p & q",
  };
  for (const char* text : pairs) {
    ConsequencePair pair = parse_pair(text);
    std::vector<std::string> ls = letters(pair);
    bool all_valid = true;
    for (const BoundedLattice& lat : lats) {
      std::vector<int> idx(ls.size(), 0);
      bool more = true;
      while (more && all_valid) {
        Assignment sigma;
        for (std::size_t k = 0; k < ls.size(); ++k) sigma[ls[k]] = idx[k];
        if (!lat.leq(eval_in_lattice(lat, sigma, pair.lhs),
                     eval_in_lattice(lat, sigma, pair.rhs)))
          all_valid = false;
        std::size_t k = ls.size();
        while (k > 0) {
          if (++idx[k - 1] < lat.n()) break;
          idx[k - 1] = 0;
          --k;
        }
        more = k > 0;
      }
    }
    CHECK_MESSAGE(whitman_decide(pair) == all_valid, text);
  }
}

TEST_CASE("derivation checking") {
  auto leaf = [](const char* pair, const char* rule) {
    return Derivation{parse_pair(pair), rule, {}};
  };
  CHECK(check_derivation(leaf("p & q <= p", "conj-elim-left")));
  CHECK(check_derivation(leaf("p & q <= q", "conj-elim-right")));
  CHECK(check_derivation(leaf("dia bot <= bot", "dia-bot")));
  CHECK(check_derivation(leaf("dia p & box q <= dia (p & q)", "duality")));
  CHECK(check_derivation(leaf("box p & box q <= box (p & q)", "linearity")));

  Derivation trans{parse_pair("p <= p | q"),
                   "trans",
                   {leaf("p <= p | q", "disj-intro-left"), leaf("p | q <= p | q", "refl")}};
  CHECK(check_derivation(trans));

  Derivation becker{parse_pair("box (p & q) <= box p"),
                    "becker-box",
                    {leaf("p & q <= p", "conj-elim-left")}};
  CHECK(check_derivation(becker));

  // Diamond does not distribute over joins in this system: not an axiom.
  CHECK_THROWS_AS(check_derivation(leaf("dia (p | q) <= dia p | dia q", "dia-join")),
                  UnknownRule);
  CHECK_THROWS_AS(check_derivation(leaf("p & q <= q", "conj-elim-left")), ShapeMismatch);
  CHECK_THROWS_AS(check_derivation(Derivation{parse_pair("p <= p"), "trans", {}}),
                  ShapeMismatch);

  // Mutated rule names are rejected.
  CHECK_THROWS_AS(check_derivation(leaf("p & q <= p", "conj-elim")), UnknownRule);
}

TEST_CASE("machine derivations of the derivable axioms pass") {
  auto leaf = [](const char* pair, const char* rule) {
    return Derivation{parse_pair(pair), rule, {}};
  };
  // Every zero-premise scheme used by the soundness suite.
  CHECK(check_derivation(leaf("p <= top", "top")));
  CHECK(check_derivation(leaf("bot <= p", "bot")));
  CHECK(check_derivation(leaf("p <= p", "refl")));
  CHECK(check_derivation(leaf("p <= p | q", "disj-intro-left")));
  CHECK(check_derivation(leaf("q <= p | q", "disj-intro-right")));
  CHECK(check_derivation(leaf("top <= box top", "box-top")));
  CHECK(check_derivation(leaf("top <= dia top", "dia-top")));
  // box(p & q) <= box p is Becker over projection; its conjunction with the
  // right projection derives box(p & q) <= box p & box q.
  Derivation conj{parse_pair("box (p & q) <= box p & box q"),
                  "conj-intro",
                  {Derivation{parse_pair("box (p & q) <= box p"),
                              "becker-box",
                              {leaf("p & q <= p", "conj-elim-left")}},
                   Derivation{parse_pair("box (p & q) <= box q"),
                              "becker-box",
                              {leaf("p & q <= q", "conj-elim-right")}}}};
  CHECK(check_derivation(conj));
  // dia p <= dia (p | q) via Becker over disjunction introduction.
  Derivation mono{parse_pair("dia p <= dia (p | q)"),
                  "becker-dia",
                  {leaf("p <= p | q", "disj-intro-left")}};
  CHECK(check_derivation(mono));
}

TEST_CASE("a full machine-built derivation of the valid distributivity direction") {
  auto leaf = [](const char* pair, const char* rule) {
    return Derivation{parse_pair(pair), rule, {}};
  };
  auto half = [&](const char* conj, const char* intro_rule, const char* elim_rule,
                  const char* goal) {
    // p&x <= p and p&x <= q|r assemble into p&x <= p&(q|r).
    Derivation keep = leaf((std::string(conj) + " <= p").c_str(), "conj-elim-left");
    Derivation proj{parse_pair((std::string(conj) + " <= q | r").c_str()),
                    "trans",
                    {leaf((std::string(conj) + " <= " + (elim_rule[0] == 'q' ? "q" : "r")).c_str(),
                          "conj-elim-right"),
                     leaf((std::string(elim_rule[0] == 'q' ? "q" : "r") + " <= q | r").c_str(),
                          intro_rule)}};
    return Derivation{parse_pair(goal), "conj-intro", {keep, proj}};
  };
  Derivation left = half("p & q", "disj-intro-left", "q", "p & q <= p & (q | r)");
  Derivation right = half("p & r", "disj-intro-right", "r", "p & r <= p & (q | r)");
  Derivation full{parse_pair("(p & q) | (p & r) <= p & (q | r)"),
                  "disj-elim",
                  {left, right}};
  CHECK(check_derivation(full));
  CHECK(whitman_decide(full.conclusion));
}

TEST_CASE("countermodel search: distributivity needs five points on lattice frames") {
  ConsequencePair dist = parse_pair("p & (q | q2) <= (p & q) | (p & q2)");
  auto cm = countermodel_search(dist, 5, FrameKind::Lattice);
  REQUIRE(cm.has_value());
  CHECK(cm->n == 5);
  CHECK(cm->sl.n() == 5);
  // The found frame is M3 up to isomorphism: its complex algebra is the
  // six-element non-distributive filter lattice.
  ComplexAlgebra ca = complex_algebra(cm->sl);
  CHECK(ca.lat.n() == 6);
  CHECK_FALSE(lattice_props(ca.lat).distributive);
  CHECK(lattice_props(ca.lat).modular);
  CHECK_FALSE(countermodel_search(dist, 4, FrameKind::Lattice).has_value());

  // Over arbitrary semilattice frames the 4-element claw suffices.
  auto cm_sl = countermodel_search(dist, 4, FrameKind::Semilattice);
  REQUIRE(cm_sl.has_value());
  CHECK(cm_sl->n == 4);
}

TEST_CASE("countermodel search: sound axioms have none") {
  CHECK_FALSE(countermodel_search(parse_pair("p <= p | q"), 4, FrameKind::Lattice));
  CHECK_FALSE(countermodel_search(parse_pair("p <= p | q"), 4, FrameKind::Semilattice));
}

TEST_CASE("countermodel search: the box-reflexivity pair on modal frames") {
  auto cm = countermodel_search(parse_pair("box p <= p"), 2, FrameKind::Modal);
  REQUIRE(cm.has_value());
  CHECK(cm->n == 2);
  // 2-chain 0 < 1 with R = {(0,1),(1,1)}, V(p) = {1}, state 0.
  CHECK(cm->sl.leq(0, 1));
  CHECK(cm->rel == std::vector<Mask>{mask_bit(1), mask_bit(1)});
  CHECK(cm->valuation.at("p") == mask_bit(1));
  CHECK(cm->state == 0);
}

TEST_CASE("countermodel search: modularity finds N5") {
  ConsequencePair mod = parse_pair("((p1 & p3) | p2) & p3 <= (p1 & p3) | (p2 & p3)");
  auto cm = countermodel_search(mod, 6, FrameKind::Lattice);
  REQUIRE(cm.has_value());
  CHECK(cm->n == 5);
  ComplexAlgebra ca = complex_algebra(cm->sl);
  CHECK_FALSE(lattice_props(ca.lat).modular);
}
