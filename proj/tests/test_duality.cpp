#include <doctest.h>

#include "latlog/duality.hpp"
#include "latlog/shapes.hpp"
#include "test_helpers.hpp"

using namespace latlog;
using namespace latlog::testing;

TEST_CASE("dual_frame of small lattices") {
  BoundedLattice two = chain_lat(2);
  DualityResult d2 = dual_frame(two);
  REQUIRE(d2.dual.n() == 1);
  CHECK(d2.point_filter[0] == mask_bit(two.top));
  CHECK(d2.theta[two.top] == mask_bit(0));
  CHECK(d2.theta[two.bottom] == 0);

  BoundedLattice three = chain_lat(3);
  DualityResult d3 = dual_frame(three);
  REQUIRE(d3.dual.n() == 2);
  CHECK(d3.point_filter[0] == mask_bit(2));                 // {2}
  CHECK(d3.point_filter[1] == (mask_bit(1) | mask_bit(2))); // {1,2}
  CHECK(d3.dual.leq(0, 1));

  BoundedLattice m3 = m3_lattice();
  DualityResult dm = dual_frame(m3);
  REQUIRE(dm.dual.n() == 4);
  // The point {1} (the filter generated by the top) is the minimum under
  // inclusion; the three atoms' up-sets sit above it, pairwise incomparable.
  const Poset& p = m3.sl.poset;
  int pt_top = -1;
  for (std::size_t i = 0; i < dm.point_filter.size(); ++i)
    if (dm.point_filter[i] == mask_bit(p.index_of("1"))) pt_top = int(i);
  REQUIRE(pt_top >= 0);
  for (int i = 0; i < 4; ++i) CHECK(dm.dual.leq(pt_top, i));
}

TEST_CASE("double dual is the identity up to theta") {
  CHECK(double_dual_check(chain_lat(2)).is_iso);
  CHECK(double_dual_check(m3_lattice()).is_iso);
  CHECK(double_dual_check(n5_lattice()).is_iso);
  for (int n = 1; n <= 4; ++n)
    enumerate_frames(n, FrameKind::Lattice, true, [&](const EnumeratedFrame& ef) {
      CHECK(double_dual_check(lattice_structure(ef.sl.poset)).is_iso);
    });
}

TEST_CASE("theta is a homomorphism for meet and join") {
  BoundedLattice m3 = m3_lattice();
  DualityResult d = dual_frame(m3);
  for (int x = 0; x < m3.n(); ++x)
    for (int y = 0; y < m3.n(); ++y) {
      CHECK(d.theta[m3.meet(x, y)] == (d.theta[x] & d.theta[y]));
      CHECK(d.theta[m3.join(x, y)] ==
            filter_join_masks(d.dual, d.theta[x], d.theta[y]));
    }
}

TEST_CASE("frame double dual is the identity up to eta") {
  CHECK(frame_double_dual_check(chain_sl(1)).is_iso);
  CHECK(frame_double_dual_check(v_sl()).is_iso);
  CHECK(frame_double_dual_check(claw_sl()).is_iso);
  for (int n = 1; n <= 4; ++n)
    enumerate_frames(n, FrameKind::Semilattice, true, [&](const EnumeratedFrame& ef) {
      CHECK(frame_double_dual_check(ef.sl).is_iso);
    });
}

TEST_CASE("filter completion is isomorphic to the original") {
  for (const BoundedLattice& lat : {chain_lat(3), m3_lattice(), chain_lat(2)}) {
    Completion c = filter_completion(lat);
    CHECK(c.kind == CompletionKind::FilterCompletion);
    CHECK(lattice_invariants_hold(c.lattice));
    CHECK(completion_iso(lat, c).is_iso);
  }
}

TEST_CASE("F2 completion preserves the lattice and its flags") {
  for (const BoundedLattice& lat : {chain_lat(2), n5_lattice(), m3_lattice()}) {
    Completion c = f2_completion(lat);
    CHECK(c.kind == CompletionKind::F2Completion);
    CHECK(completion_iso(lat, c).is_iso);
    LatticeProps a = lattice_props(lat);
    LatticeProps b = lattice_props(c.lattice);
    CHECK(a.distributive == b.distributive);
    CHECK(a.modular == b.modular);
  }
}

TEST_CASE("modal complex algebra tables") {
  MeetSemilattice three = chain_sl(3);
  std::vector<Mask> id_rel{mask_bit(0), mask_bit(1), mask_bit(2)};
  ModalLattice id_mca = modal_complex_algebra(make_modal_frame(three, id_rel),
                                              VClass::AllFilters);
  CHECK(id_mca.lat.n() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(id_mca.box[i] == i);
    CHECK(id_mca.dia[i] == i);
  }

  ModalLFrame serial = make_modal_frame(chain_sl(2), {mask_bit(1), mask_bit(1)});
  ModalLattice mca = modal_complex_algebra(serial, VClass::AllFilters);
  CHECK_FALSE(modal_lattice_violation(mca).has_value());

  ModalLFrame point = make_modal_frame(chain_sl(1), {mask_bit(0)});
  ModalLattice pm = modal_complex_algebra(point, VClass::AllFilters);
  CHECK(pm.lat.n() == 2);
  CHECK(pm.box == std::vector<int>{0, 1});
  CHECK(pm.dia == std::vector<int>{0, 1});
}

TEST_CASE("modal dual of a modal lattice") {
  BoundedLattice two = chain_lat(2);
  ModalLattice m{two, {0, 1}, {0, 1}};
  auto [frame, d] = modal_dual(m);
  REQUIRE(frame.n() == 1);
  CHECK(frame.rel[0] == mask_bit(0));  // one reflexive point

  // A table violating dia bot = bot is rejected up front.
  ModalLattice bad{two, {0, 1}, {1, 1}};
  CHECK_THROWS_AS(modal_dual(bad), InvariantViolation);
}

TEST_CASE("dualizing recovers the tight closure of the relation") {
  // Conditions (1)-(5) do not force tightness: on the 3-chain, the constant
  // relation with successor set {0,2} is a modal L-frame, but every filter
  // separating it also admits the middle point, so the dual relation gains
  // the pair through 1.
  MeetSemilattice three = chain_sl(3);
  std::vector<Mask> rel(3, mask_bit(0) | mask_bit(2));
  ModalLFrame frame = make_modal_frame(three, rel);
  CHECK_FALSE(is_tight(three, rel));
  std::vector<Mask> tc = tight_closure(three, rel);
  CHECK(tc == std::vector<Mask>(3, full_mask(3)));

  ModalLattice mca = modal_complex_algebra(frame, VClass::AllFilters);
  auto [dual, d] = modal_dual(mca);
  REQUIRE(dual.n() == 3);
  // The round trip yields the tightening, not the original relation.
  for (int x = 0; x < 3; ++x) CHECK(mask_size(dual.rel[x]) == 3);

  // Tight closure agrees with its order characterization: meet of the
  // successors below, some successor above.
  for (int n = 1; n <= 3; ++n)
    enumerate_frames(n, FrameKind::Modal, false, [&](const EnumeratedFrame& ef) {
      std::vector<Mask> closure = tight_closure(ef.sl, ef.rel);
      for (int x = 0; x < ef.sl.n(); ++x) {
        Mask expect = 0;
        int floor = ef.sl.meet_all(ef.rel[x]);
        for (int y = 0; y < ef.sl.n(); ++y)
          if (ef.sl.leq(floor, y) && (ef.rel[x] & ef.sl.up(y)) != 0)
            expect |= mask_bit(y);
        CHECK(closure[x] == expect);
        CHECK(subset_of(ef.rel[x], closure[x]));
      }
      // Dual relations are always tight (duals are finite modal L-spaces).
      ModalLattice mca2 =
          modal_complex_algebra(ModalLFrame{ef.sl, ef.rel, true}, VClass::AllFilters);
      auto [dual2, d2] = modal_dual(mca2);
      CHECK(is_tight(dual2.sl, dual2.rel));
    });
}

TEST_CASE("modal duality invariant over all modal frames up to 4 states") {
  long long frames = 0, tight_frames = 0;
  for (int n = 1; n <= 4; ++n)
    enumerate_frames(n, FrameKind::Modal, false, [&](const EnumeratedFrame& ef) {
      ++frames;
      ModalLFrame frame{ef.sl, ef.rel, true};
      bool tight = is_tight(ef.sl, ef.rel);
      tight_frames += tight ? 1 : 0;
      ModalLattice mca = modal_complex_algebra(frame, VClass::AllFilters);
      auto [dual, d] = modal_dual(mca);  // theta equations verified inside
      REQUIRE(dual.n() == frame.n());
      ComplexAlgebra ca = complex_algebra(ef.sl);
      std::vector<int> eta(frame.n(), -1);
      for (int x = 0; x < frame.n(); ++x) {
        Mask ex = 0;
        for (int e = 0; e < ca.lat.n(); ++e)
          if (mask_has(ca.filter_of_elem[e], x)) ex |= mask_bit(e);
        for (std::size_t k = 0; k < d.point_filter.size(); ++k)
          if (d.point_filter[k] == ex) eta[x] = int(k);
        REQUIRE(eta[x] >= 0);
      }
      std::vector<Mask> tc = tight_closure(ef.sl, ef.rel);
      bool ok = true;
      for (int x = 0; x < frame.n() && ok; ++x)
        for (int y = 0; y < frame.n() && ok; ++y) {
          if (frame.sl.leq(x, y) != dual.sl.leq(eta[x], eta[y])) ok = false;
          bool rt = mask_has(dual.rel[eta[x]], eta[y]);
          if (rt != mask_has(tc[x], y)) ok = false;
          if (tight && rt != mask_has(frame.rel[x], y)) ok = false;
        }
      CHECK(ok);
    });
  CHECK(frames > 0);
  CHECK(tight_frames > 0);
  CHECK(tight_frames < frames);  // tightness is a proper restriction
}

TEST_CASE("modal duality round trip on the serial 2-chain") {
  ModalLFrame f = make_modal_frame(chain_sl(2), {mask_bit(1), mask_bit(1)});
  ModalLattice mca = modal_complex_algebra(f, VClass::AllFilters);
  auto [dual, d] = modal_dual(mca);
  REQUIRE(dual.n() == f.n());
  ComplexAlgebra ca = complex_algebra(f.sl);
  std::vector<int> eta(f.n(), -1);
  for (int x = 0; x < f.n(); ++x) {
    Mask ex = 0;
    for (int e = 0; e < ca.lat.n(); ++e)
      if (mask_has(ca.filter_of_elem[e], x)) ex |= mask_bit(e);
    for (std::size_t k = 0; k < d.point_filter.size(); ++k)
      if (d.point_filter[k] == ex) eta[x] = int(k);
    REQUIRE(eta[x] >= 0);
  }
  for (int x = 0; x < f.n(); ++x)
    for (int y = 0; y < f.n(); ++y) {
      CHECK(f.sl.leq(x, y) == dual.sl.leq(eta[x], eta[y]));
      CHECK(mask_has(f.rel[x], y) == mask_has(dual.rel[eta[x]], eta[y]));
    }
}
