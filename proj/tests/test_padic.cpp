#include <doctest.h>

#include "kstab/padic.hpp"

using namespace kstab;

TEST_CASE("c-factors") {
  PadicContext pc(RootSystem::from_label("A1"));
  const RootSystem& d = pc.dual_system();
  // numeric: e^{alpha} = 3, q = 4 gives -1/8
  CharacterAssignment tau({Rat(3)}, Rat(4));
  CHECK(pc.c_factor_at(d.simple_root(0), tau) == Rat(-1, 8));
  // symbolic: c_a c_{-a} = (1-q^{-1}e^{a})(1-q^{-1}e^{-a})/((1-e^{a})(1-e^{-a}))
  RationalFn prod = pc.c_factor_sym(0) * pc.c_factor_sym(d.negative_of(0));
  LaurentPoly n1 = LaurentPoly::one();
  ExpKey k1 = d.root_exp(0);
  k1.qh = -2;
  n1.add_term(k1, -1);
  LaurentPoly n2 = LaurentPoly::one();
  ExpKey k2 = d.root_exp(0, -1);
  k2.qh = -2;
  n2.add_term(k2, -1);
  RationalFn want = RationalFn::from_poly(n1) * RationalFn::from_poly(n2) /
                    (x_of_root(d, d.negative_of(0)) * x_of_root(d, 0));
  CHECK(prod.equals(want));
  // c_a + c_{-a} = 1 + q^{-1}
  RationalFn sum = pc.c_factor_sym(0) + pc.c_factor_sym(d.negative_of(0));
  CHECK(sum.equals(RationalFn(1) + RationalFn::q_power(-2)));
}

TEST_CASE("bases and eigenproperties") {
  PadicContext pc(RootSystem::from_label("A2"));
  const RootSystem& d = pc.dual_system();
  const WeylGroup& W = d.weyl();
  // theta eigenproperty on the Casselman avatars
  ExpKey lam = d.root_exp(1);
  for (int w = 0; w < W.size(); ++w) {
    DualElt lhs = pc.act_theta(lam, pc.basis_g(w));
    CHECK(lhs.equals(pc.basis_g(w).times_scalar(
        RationalFn::monomial(1, W.act_on_exp(w, lam)))));
  }
  // the avatars meet at the longest element
  CHECK(pc.basis_phi(W.longest()).equals(pc.basis_g(W.longest())));
}

TEST_CASE("hecke action matrices on both bases, rank one") {
  PadicContext pc(RootSystem::from_label("A1"));
  const RootSystem& d = pc.dual_system();
  const WeylGroup& W = d.weyl();
  RationalFn q = RationalFn::q_power(2), one(1);
  for (int w = 0; w < 2; ++w) {
    int ws = W.mult_simple_right(w, 0);
    int wa = W.act_on_root(w, d.simple_root(0));
    DualElt lhs = pc.act_T(0, pc.basis_g(w));
    DualElt rhs = pc.basis_g(w).times_scalar(q * (one - pc.c_factor_sym(wa))) +
                  pc.basis_g(ws).times_scalar(q * pc.j_factor_sym(0, w));
    CHECK(lhs.equals(rhs));
    DualElt lhs2 = pc.act_T(0, pc.basis_phi(w));
    DualElt rhs2 = W.length(ws) < W.length(w)
                       ? pc.basis_phi(ws).times_scalar(q) +
                             pc.basis_phi(w).times_scalar(q - one)
                       : pc.basis_phi(ws);
    CHECK(lhs2.equals(rhs2));
  }
}

TEST_CASE("transition matrices") {
  PadicContext pc(RootSystem::from_label("A1"));
  const RootSystem& d = pc.dual_system();
  const auto& t = pc.transition_matrices();
  // a_{e,s} = (1 - q^{-1})/(1 - e^{-alpha})
  RationalFn want_a = (RationalFn(1) - RationalFn::q_power(-2)) / x_of_root(d, 0);
  CHECK(t.a[0][1].equals(want_a));
  // b_{e,s} = (1-q)/(q (1 - e^{-alpha}))
  LaurentPoly n;
  n.add_term(ExpKey{}, 1);
  n.add_term(qhalf_exp(2), -1);
  RationalFn want_b =
      RationalFn::from_poly(n) / (RationalFn::q_power(2) * x_of_root(d, 0));
  CHECK(t.b[0][1].equals(want_b));
  CHECK(t.a[0][0].equals(RationalFn(1)));
  CHECK(t.a[1][1].equals(RationalFn(1)));
  // oracle: g_w = sum_y a_{w,y} phi_y
  for (int w = 0; w < 2; ++w) {
    DualElt acc(&d);
    for (int y = 0; y < 2; ++y)
      if (!t.a[w][y].is_zero()) acc = acc + pc.basis_phi(y).times_scalar(t.a[w][y]);
    CHECK(acc.equals(pc.basis_g(w)));
  }
}

TEST_CASE("intertwiners") {
  PadicContext pc(RootSystem::from_label("A2"));
  const RootSystem& d = pc.dual_system();
  const WeylGroup& W = d.weyl();
  CharacterAssignment tau({Rat(2, 3), Rat(5, 7)}, Rat(9));
  pc.require_regular(tau);
  for (int i = 0; i < 2; ++i) {
    // f-basis: s w > w gives c_{-a} on the off-diagonal
    auto m = pc.intertwiner_matrix(i, tau, true);
    Rat cma = pc.c_factor_at(d.negative_of(d.simple_root(i)), tau);
    int w = 0, sw = W.mult_simple_left(i, 0);
    CHECK(m[sw][w] == cma);
    // round trip on both bases
    CharacterAssignment stau = pc.weyl_on_character(W.simple(i), tau);
    for (bool cass : {true, false}) {
      auto m1 = pc.intertwiner_matrix(i, tau, cass);
      auto m2 = pc.intertwiner_matrix(i, stau, cass);
      const int N = W.size();
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
          Rat s(0);
          for (int k = 0; k < N; ++k) s += m2[a][k] * m1[k][b];
          CHECK(s == (a == b ? Rat(1) : Rat(0)));
        }
    }
  }
  // singular characters are rejected
  CharacterAssignment sing({Rat(1), Rat(5)}, Rat(4));
  CHECK_THROWS(pc.require_regular(sing));
}

TEST_CASE("spherical class") {
  PadicContext pc(RootSystem::from_label("A2"));
  const RootSystem& d = pc.dual_system();
  const WeylGroup& W = d.weyl();
  DualElt phit = pc.spherical_class();
  // localization form
  DualElt loc(&d);
  for (int w = 0; w < W.size(); ++w) {
    RationalFn denom(1);
    for (int r = 0; r < d.num_positive(); ++r)
      denom *= x_of_root(d, W.act_on_root(w, r));
    loc = loc + pc.fixed_point_class(w).times_scalar(denom.inverse());
  }
  CHECK(phit.equals(loc));
  // Weyl invariance
  for (int w = 0; w < W.size(); ++w) CHECK(weyl_act_dual(d, w, phit).equals(phit));
}

TEST_CASE("macdonald values") {
  PadicContext pc(RootSystem::from_label("A1"));
  // mu = 0: q + 1
  RationalFn v = pc.macdonald_pairing({0});
  LaurentPoly want;
  want.add_term(ExpKey{}, 1);
  want.add_term(qhalf_exp(2), 1);
  CHECK(v.equals(RationalFn::from_poly(want)));
  CHECK(pc.macdonald_closed({0}).equals(v));
  // nonzero dominant coweight, symbolic agreement
  CHECK(pc.macdonald_pairing({2}).equals(pc.macdonald_closed({2})));
  CHECK_THROWS(pc.macdonald_pairing({-1}));
}

TEST_CASE("whittaker values and the character oracle") {
  PadicContext pc(RootSystem::from_label("A1"));
  const RootSystem& d = pc.dual_system();
  // mu = 0: the bare product, E_0 = 1
  RationalFn w0 = pc.whittaker_k_side({0});
  LaurentPoly n = LaurentPoly::one();
  ExpKey k = d.root_exp(0);
  k.qh = -2;
  n.add_term(k, -1);
  CHECK(w0.equals(RationalFn::from_poly(n)));
  CHECK(pc.weyl_character({0}) == LaurentPoly::one());
  // adjoint character in rank one: e^{a} + 1 + e^{-a}
  LaurentPoly chi = pc.weyl_character({2});
  LaurentPoly want;
  want.add_term(d.root_exp(0), 1);
  want.add_term(ExpKey{}, 1);
  want.add_term(d.root_exp(0, -1), 1);
  CHECK(chi == want);
  CHECK(pc.weyl_dimension({2}) == Rat(3));
  // localization form of the character
  CHECK(pc.character_localization_sum({2}).equals(RationalFn::from_poly(chi)));
  // three-way agreement at a nonzero coweight
  CHECK(pc.whittaker_k_side({2}).equals(pc.whittaker_closed({2})));
  // non-dominant vanishes
  CHECK(pc.whittaker_k_side({-2}).is_zero());

  PadicContext pa2(RootSystem::from_label("A2"));
  CHECK(pa2.weyl_dimension({1, 1}) == Rat(8));
  Rat dimsum(0);
  for (const auto& [e, c] : pa2.weyl_character({1, 1}).terms()) dimsum += Rat(c);
  CHECK(dimsum == Rat(8));
}
