#include <doctest.h>

#include <set>

#include "latlog/correspond.hpp"
#include "latlog/sampler.hpp"
#include "latlog/shapes.hpp"
#include "test_helpers.hpp"

using namespace latlog;
using namespace latlog::testing;

namespace {

std::vector<MeetSemilattice> small_semilattices(int max_n) {
  std::vector<MeetSemilattice> out;
  for (int n = 1; n <= max_n; ++n)
    enumerate_frames(n, FrameKind::Semilattice, false,
                     [&](const EnumeratedFrame& ef) { out.push_back(ef.sl); });
  return out;
}

std::vector<ModalLFrame> small_modal_frames(int max_n) {
  std::vector<ModalLFrame> out;
  for (int n = 1; n <= max_n; ++n)
    enumerate_frames(n, FrameKind::Modal, false, [&](const EnumeratedFrame& ef) {
      out.push_back(ModalLFrame{ef.sl, ef.rel, true});
    });
  return out;
}

}  // namespace

TEST_CASE("abovemeet: display form and order meaning") {
  FreshGen gen;
  std::vector<std::string> ys{"y", "z"};
  FO am = abovemeet("x", ys, gen);
  CHECK(fo_text(am) == "forall w0. (leq(w0,y) & leq(w0,z) -> leq(w0,x))");
  std::vector<std::string> none;
  CHECK_THROWS_AS(abovemeet("x", none, gen), EmptyBound);

  // abovemeet(x; x) holds everywhere by reflexivity.
  for (const MeetSemilattice& sl : small_semilattices(4)) {
    FreshGen g2;
    std::vector<std::string> self{"x"};
    FO refl = fo_forall("x", abovemeet("x", self, g2));
    CHECK(fo_eval(sl, refl));
    // abovemeet(x; y) means y <= x.
    FreshGen g3;
    std::vector<std::string> single{"y"};
    FO one = abovemeet("x", single, g3);
    for (int x = 0; x < sl.n(); ++x)
      for (int y = 0; y < sl.n(); ++y) {
        VarEnv env{{"x", x}, {"y", y}};
        CHECK(fo_eval(sl, one, env) == sl.leq(y, x));
      }
  }
}

TEST_CASE("standard translation clauses") {
  FreshGen gen;
  FO p = standard_translation(fprop("p"), "x", gen);
  CHECK(fo_text(p) == "P_p(x)");

  FreshGen gen2;
  FO dia = standard_translation(fdia(fprop("p")), "x", gen2);
  CHECK(fo_text(dia) == "exists y0. (r(x,y0) & P_p(y0))");

  FreshGen gen3;
  FO disj = standard_translation(parse_formula("p | q"), "x", gen3);
  REQUIRE(disj->kind == FOKind::Or);
  REQUIRE(disj->left->kind == FOKind::Or);
  CHECK(fo_text(disj->left->left) == "P_p(x)");
  CHECK(fo_text(disj->left->right) == "P_q(x)");
  CHECK(disj->right->kind == FOKind::Exists);

  FreshGen gen4;
  FO box = standard_translation(fbox(fprop("p")), "x", gen4);
  CHECK(fo_text(box) == "forall y0. (r(x,y0) -> P_p(y0))");

  CHECK(fo_no_shadowing(standard_translation(
      parse_formula("(p | q) & (p | q) | dia (p | box q)"), "x", gen)));
}

TEST_CASE("standard translation tracks the model semantics (st lemma)") {
  FormulaSampler sampler(29, {"p", "q"}, /*modal=*/true);
  auto sweep = [&](const ModalLFrame& frame) {
    std::vector<Filter> fs = all_filters(frame.sl);
    for (const Filter& fp : fs) {
      ModalLModel m{frame, {{"p", fp.members}, {"q", fs[fs.size() / 2].members}}};
      for (int i = 0; i < 12; ++i) {
        Formula phi = sampler.sample(3);
        FreshGen gen;
        FO st = standard_translation(phi, "x", gen);
        Mask truth = eval_model(m, phi);
        for (int w = 0; w < frame.n(); ++w) {
          VarEnv env{{"x", w}};
          CHECK(fo_eval(m, st, env) == mask_has(truth, w));
        }
      }
    }
  };
  for (const ModalLFrame& frame : small_modal_frames(3)) sweep(frame);
  // A deterministic slice of the four-state frames.
  long long seen = 0;
  enumerate_frames(4, FrameKind::Modal, false, [&](const EnumeratedFrame& ef) {
    if (seen++ % 199 == 0) sweep(ModalLFrame{ef.sl, ef.rel, true});
  });
}

TEST_CASE("second-order translation shape and frame equivalence (sot lemma)") {
  FO so = second_order_translation(parse_pair("p <= dia p"));
  REQUIRE(so->kind == FOKind::ForallPred);
  CHECK(so->a == "p");
  REQUIRE(so->left->kind == FOKind::Forall);
  CHECK(so->left->a == "x");
  REQUIRE(so->left->left->kind == FOKind::Implies);
  CHECK(so->left->left->right->kind == FOKind::Exists);

  // Distributivity: the antecedent carries the three-disjunct clause.
  FO sod = second_order_translation(parse_pair("p & (q | q2) <= (p & q) | (p & q2)"));
  CHECK(fo_no_shadowing(sod));
  int preds = 0;
  for (FO cur = sod; cur->kind == FOKind::ForallPred; cur = cur->left) ++preds;
  CHECK(preds == 3);

  const char* pairs[] = {"p <= p", "p <= p | q", "p & (q | q2) <= (p & q) | (p & q2)",
                         "p <= dia p", "box p <= p"};
  for (const char* text : pairs) {
    ConsequencePair pair = parse_pair(text);
    FO sot = second_order_translation(pair);
    bool modal = !modality_free(pair.lhs) || !modality_free(pair.rhs);
    if (modal) {
      for (const ModalLFrame& frame : small_modal_frames(3))
        CHECK(so_eval(frame, sot) ==
              frame_validity(frame, pair, VClass::AllFilters).valid);
    } else {
      for (const MeetSemilattice& sl : small_semilattices(3))
        CHECK(so_eval(sl, sot) == frame_validity(sl, pair, VClass::AllFilters).valid);
    }
  }

  // Expansion stays feasible at four elements; the distributivity pair is the
  // discriminating one (valid exactly on frames with a distributive filter
  // lattice).
  ConsequencePair dist = parse_pair("p & (q | q2) <= (p & q) | (p & q2)");
  FO sot4 = second_order_translation(dist);
  enumerate_frames(4, FrameKind::Semilattice, false, [&](const EnumeratedFrame& ef) {
    CHECK(so_eval(ef.sl, sot4) == frame_validity(ef.sl, dist, VClass::AllFilters).valid);
  });
}

TEST_CASE("fo_eval basics") {
  MeetSemilattice two = chain_sl(2);
  CHECK(fo_eval(two, fo_forall("x", fo_exists("y", fo_leq("x", "y")))));

  ModalLFrame serial = make_modal_frame(chain_sl(2), {mask_bit(1), mask_bit(1)});
  FO down = fo_forall("x", fo_exists("y", fo_and(fo_rel("x", "y"), fo_leq("y", "x"))));
  CHECK_FALSE(fo_eval(serial, down));
  FO up = fo_forall("x", fo_exists("y", fo_and(fo_rel("x", "y"), fo_leq("x", "y"))));
  CHECK(fo_eval(serial, up));

  MeetSemilattice v = v_sl();
  LModel m{v, {{"p", mask_of(v, {"a"})}}};
  FreshGen gen;
  FO st = standard_translation(fprop("p"), "x", gen);
  CHECK(fo_eval(m, st, {{"x", v.poset.index_of("a")}}));
  CHECK_FALSE(fo_eval(m, st, {{"x", v.poset.index_of("0")}}));

  CHECK_THROWS_AS(fo_eval(two, fo_leq("x", "y")), UnboundVariable);
  CHECK_THROWS_AS(fo_eval(two, fo_forall("x", fo_pred("p", "x"))), PredWithoutValuation);
  CHECK_THROWS_AS(fo_eval(two, fo_forall("x", fo_rel("x", "x"))), Error);
}

TEST_CASE("sahlqvist correspondents for the reflexivity pairs") {
  FO up = sahlqvist_correspondent(parse_pair("p <= dia p"));
  CHECK(fo_text(up) == "exists y0. (r(x,y0) & leq(x,y0))");

  FO down = sahlqvist_correspondent(parse_pair("box p <= p"));
  CHECK(fo_text(down) == "exists w0. (r(x,w0) & leq(w0,x))");

  CHECK_THROWS_AS(sahlqvist_correspondent(parse_pair("box dia p <= p")), NotSahlqvist);
}

TEST_CASE("constant antecedents short-circuit") {
  CHECK(fo_text(sahlqvist_correspondent(parse_pair("bot <= p"))) == "true");
  CHECK(fo_text(sahlqvist_correspondent(parse_pair("p & bot <= q"))) == "true");
  // top <= p holds nowhere that p can be empty, i.e. on no frame.
  FO c = fo_forall("x", sahlqvist_correspondent(parse_pair("top <= p")));
  for (const MeetSemilattice& sl : small_semilattices(3))
    CHECK(fo_eval(sl, c) == frame_validity(sl, parse_pair("top <= p"), VClass::AllFilters).valid);
  // Trivial consequents collapse to true.
  CHECK(fo_text(sahlqvist_correspondent(parse_pair("p <= top"))) == "true");
}

TEST_CASE("consequent-only letters are read as bot") {
  // p <= p & q cannot be weakened: q only occurs on the right.
  ConsequencePair pair = parse_pair("p <= p & q");
  FO corr = fo_forall("x", sahlqvist_correspondent(pair));
  for (const MeetSemilattice& sl : small_semilattices(3))
    CHECK(fo_eval(sl, corr) == frame_validity(sl, pair, VClass::AllFilters).valid);
}

TEST_CASE("correspondence_check: distributivity and modularity on small frames") {
  std::vector<MeetSemilattice> frames = small_semilattices(3);
  ConsequencePair dist = parse_pair("p & (q | q2) <= (p & q) | (p & q2)");
  CorrespondenceReport rep =
      correspondence_check(dist, std::span<const MeetSemilattice>(frames));
  CHECK(rep.equivalent);
  CHECK(rep.frames_checked == int(frames.size()));

  ConsequencePair mod = parse_pair("((p1 & p3) | p2) & p3 <= (p1 & p3) | (p2 & p3)");
  CHECK(correspondence_check(mod, std::span<const MeetSemilattice>(frames)).equivalent);
}

TEST_CASE("correspondence_check: modal pairs on small frames") {
  std::vector<ModalLFrame> frames = small_modal_frames(3);
  for (const char* text : {
           "p <= dia p", "box p <= p", "dia (p | q) <= dia p | dia q",
           "dia box p <= p", "dia p <= dia dia p",
           // depth-2 boxed atoms exercise the successor chains in sigma
           "box box p <= p", "box box p <= box p", "dia (box box p) <= dia p",
           // several occurrences of one letter exercise the subset join
           "dia p & box p <= p", "dia (box p & q) <= dia q",
           "dia (p | box q) <= dia p | dia q",
       }) {
    ConsequencePair pair = parse_pair(text);
    CorrespondenceReport rep =
        correspondence_check(pair, std::span<const ModalLFrame>(frames));
    CHECK_MESSAGE(rep.equivalent, text);
  }
}

TEST_CASE("simplifier preserves evaluation") {
  // Engine outputs before/after simplification agree on every small frame.
  const char* pairs[] = {"p & (q | q2) <= (p & q) | (p & q2)", "p <= dia p",
                         "box p <= p", "dia (p | q) <= dia p | dia q",
                         "dia (box p & q) <= dia p"};
  std::vector<ModalLFrame> frames = small_modal_frames(3);
  for (const char* text : pairs) {
    ConsequencePair pair = parse_pair(text);
    FO raw = fo_forall("x", sahlqvist_correspondent_raw(pair));
    FO simp = fo_forall("x", sahlqvist_correspondent(pair));
    for (const ModalLFrame& frame : frames)
      CHECK(fo_eval(frame, raw) == fo_eval(frame, simp));
  }

  // Also on randomly generated closed first-order formulas.
  FormulaSampler noise(41, {}, false);
  auto rnd_fo = [&](auto&& self, int depth, std::vector<std::string> scope) -> FO {
    std::uint32_t k = noise.next() % (depth == 0 ? 4 : 9);
    auto var = [&]() -> std::string {
      if (scope.empty()) return "x";
      return scope[noise.next() % scope.size()];
    };
    switch (k) {
      case 0: return fo_true();
      case 1: return fo_false();
      case 2: return fo_leq(var(), var());
      case 3: return fo_eq(var(), var());
      case 4: return fo_not(self(self, depth - 1, scope));
      case 5: return fo_and(self(self, depth - 1, scope), self(self, depth - 1, scope));
      case 6: return fo_or(self(self, depth - 1, scope), self(self, depth - 1, scope));
      case 7: return fo_implies(self(self, depth - 1, scope), self(self, depth - 1, scope));
      default: {
        std::string v = "v" + std::to_string(scope.size());
        scope.push_back(v);
        FO body = self(self, depth - 1, scope);
        return noise.next() % 2 ? fo_forall(v, body) : fo_exists(v, body);
      }
    }
  };
  std::vector<MeetSemilattice> sls = small_semilattices(4);
  for (int i = 0; i < 200; ++i) {
    FO f = rnd_fo(rnd_fo, 4, {});
    FO closed = fo_forall("x", f);
    FO simp = simplify_fo(closed);
    for (const MeetSemilattice& sl : sls) CHECK(fo_eval(sl, closed) == fo_eval(sl, simp));
  }

  // The one-point rule must not substitute a variable that a sibling
  // conjunct rebinds ("u is a top element" would otherwise collapse to true).
  FO tricky = fo_forall(
      "u", fo_exists("v", fo_and(fo_eq("v", "u"),
                                 fo_forall("u", fo_leq("u", "v")))));
  FO tricky_simp = simplify_fo(tricky);
  for (const MeetSemilattice& sl : sls)
    CHECK(fo_eval(sl, tricky) == fo_eval(sl, tricky_simp));
}

TEST_CASE("correspondents carry no predicates and globally fresh binders") {
  for (const char* text : {"p & (q | q2) <= (p & q) | (p & q2)", "p <= dia p",
                           "dia (p | q) <= dia p | dia q",
                           "((p1 & p3) | p2) & p3 <= (p1 & p3) | (p2 & p3)"}) {
    for (FO corr : {sahlqvist_correspondent_raw(parse_pair(text)),
                    sahlqvist_correspondent(parse_pair(text))}) {
      CHECK(fo_first_order(corr));
      CHECK(fo_no_shadowing(corr));
      std::vector<std::string> bs = fo_binders(corr);
      std::set<std::string> uniq(bs.begin(), bs.end());
      CHECK(bs.size() == uniq.size());
      auto fv = fo_free_vars(corr);
      if (!fv.empty()) CHECK(fv == std::vector<std::string>{"x"});
    }
  }
  // Translations are globally fresh by construction.
  FO so = second_order_translation(parse_pair("p & (q | q2) <= (p & q) | (p & q2)"));
  std::vector<std::string> bs = fo_binders(so);
  std::set<std::string> uniq(bs.begin(), bs.end());
  CHECK(bs.size() == uniq.size());
}

TEST_CASE("smt export") {
  FO corr = fo_forall("x", sahlqvist_correspondent(parse_pair("p <= dia p")));
  std::string doc = fo_smt_document(corr);
  CHECK(doc.find("(declare-sort W 0)") != std::string::npos);
  CHECK(doc.find("(declare-fun r (W W) Bool)") != std::string::npos);
  CHECK(doc.find("(assert (forall ((x W))") != std::string::npos);
  CHECK_THROWS_AS(fo_smt_document(second_order_translation(parse_pair("p <= p"))), Error);
}
