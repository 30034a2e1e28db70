#include <doctest.h>

#include "latlog/framedoc.hpp"
#include "latlog/shapes.hpp"
#include "test_helpers.hpp"

using namespace latlog;
using namespace latlog::testing;

namespace {

const char* kM3Doc = R"({
  "version": "1",
  "elements": ["0", "a", "b", "c", "1"],
  "leq_pairs": [["0","a"],["0","b"],["0","c"],["a","1"],["b","1"],["c","1"]]
})";

}  // namespace

TEST_CASE("frame documents load and round trip") {
  FrameDocument doc = framedoc_parse(kM3Doc);
  MeetSemilattice sl = to_semilattice(doc);
  CHECK(sl.n() == 5);
  CHECK(sl.meet(sl.poset.index_of("a"), sl.poset.index_of("b")) == sl.poset.index_of("0"));

  FrameDocument out = framedoc_of(sl);
  MeetSemilattice back = to_semilattice(framedoc_parse(framedoc_dump(out)));
  CHECK(back.poset.up == sl.poset.up);
  CHECK(back.meet_table == sl.meet_table);
}

TEST_CASE("meet-table documents are validated") {
  // The 3-chain through its meet table.
  FrameDocument doc;
  doc.elements = {"0", "1", "2"};
  doc.meet = std::vector<std::vector<std::string>>{
      {"0", "0", "0"}, {"0", "1", "1"}, {"0", "1", "2"}};
  MeetSemilattice sl = to_semilattice(doc);
  CHECK(sl.leq(0, 2));
  CHECK(sl.meet(1, 2) == 1);

  // A table that is not a greatest-lower-bound table is rejected.
  FrameDocument bad = doc;
  (*bad.meet)[1][2] = "0";
  CHECK_THROWS_AS(to_semilattice(bad), Error);
}

TEST_CASE("malformed documents raise located errors") {
  CHECK_THROWS_AS(framedoc_parse("not json"), Error);
  CHECK_THROWS_AS(framedoc_parse("{}"), Error);
  CHECK_THROWS_AS(framedoc_parse(R"({"elements": []})"), Error);
  CHECK_THROWS_AS(framedoc_parse(R"({"elements": ["a"],
      "leq_pairs": [], "meet": []})"),
                  Error);
  FrameDocument doc = framedoc_parse(kM3Doc);
  doc.valuation = std::map<std::string, std::vector<std::string>>{{"p", {"a", "b"}}};
  CHECK_THROWS_AS(to_valuation(doc, to_semilattice(doc)), Error);  // not a filter
}

TEST_CASE("modal frame documents") {
  FrameDocument doc;
  doc.elements = {"0", "1"};
  doc.leq_pairs = std::vector<std::pair<std::string, std::string>>{{"0", "1"}};
  doc.r = std::vector<std::pair<std::string, std::string>>{{"0", "1"}, {"1", "1"}};
  ModalLFrame frame = to_modal_frame(doc);
  CHECK(frame.rel == std::vector<Mask>{mask_bit(1), mask_bit(1)});
  CHECK(modal_frame_check(frame.sl, frame.rel).basic_ok());

  FrameDocument back = framedoc_of(ModalLFrame{frame.sl, frame.rel, true});
  ModalLFrame again = to_modal_frame(framedoc_parse(framedoc_dump(back)));
  CHECK(again.rel == frame.rel);
}

TEST_CASE("validity witnesses re-validate when fed back") {
  FrameDocument doc = framedoc_parse(kM3Doc);
  MeetSemilattice sl = to_semilattice(doc);
  ConsequencePair pair = parse_pair("p & (q | q2) <= (p & q) | (p & q2)");
  Verdict v = frame_validity(sl, pair, VClass::AllFilters);
  REQUIRE_FALSE(v.valid);

  // Rebuild the witness as a document valuation and re-check by evaluation.
  std::map<std::string, std::vector<std::string>> val;
  for (const auto& [letter, mask] : v.witness->valuation) {
    std::vector<std::string> labels;
    for (int i : mask_elements(mask)) labels.push_back(sl.poset.labels[i]);
    val[letter] = labels;
  }
  FrameDocument doc2 = doc;
  doc2.valuation = val;
  MeetSemilattice sl2 = to_semilattice(doc2);
  LModel m{sl2, to_valuation(doc2, sl2)};
  CHECK(mask_has(eval_model(m, pair.lhs), v.witness->state));
  CHECK_FALSE(mask_has(eval_model(m, pair.rhs), v.witness->state));
}

TEST_CASE("derivation documents") {
  Derivation d = derivation_parse(R"({
    "conclusion": "p <= p | q",
    "rule": "trans",
    "premises": [
      {"conclusion": "p <= p | q", "rule": "disj-intro-left"},
      {"conclusion": "p | q <= p | q", "rule": "refl"}
    ]
  })");
  CHECK(check_derivation(d));
  CHECK_THROWS_AS(derivation_parse(R"({"rule": "refl"})"), Error);
}
