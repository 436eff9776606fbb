#include <doctest.h>

#include "kstab/stable.hpp"

using namespace kstab;

TEST_CASE("root polynomial base cases") {
  auto a2 = RootSystem::from_label("A2");
  const WeylGroup& W = a2->weyl();
  RootPolynomial Re = root_polynomial(*a2, 0);
  CHECK(Re.K.size() == 1);
  CHECK(Re.K.at(0).equals(RationalFn(1)));

  for (int i = 0; i < 2; ++i) {
    RootPolynomial Ri = root_polynomial(*a2, W.simple(i));
    RationalFn q = RationalFn::q_power(2);
    RationalFn want = -(q - RationalFn(1)) / x_of_root(*a2, a2->negative_of(i));
    CHECK(Ri.K.at(0).equals(want));
    CHECK(Ri.K.at(W.simple(i)).equals(RationalFn(1)));
  }

  std::vector<uint8_t> bad{0, 0};
  CHECK_THROWS(root_polynomial(*a2, 0, &bad));
}

TEST_CASE("word independence of the coefficients") {
  auto a2 = RootSystem::from_label("A2");
  const WeylGroup& W = a2->weyl();
  int w0 = W.longest();
  auto words = W.reduced_words(w0);
  REQUIRE(words.size() == 2);
  RootPolynomial r1 = root_polynomial(*a2, w0, &words[0]);
  RootPolynomial r2 = root_polynomial(*a2, w0, &words[1]);
  for (int v = 0; v < W.size(); ++v) {
    RationalFn a = r1.K.count(v) ? r1.K.at(v) : RationalFn();
    RationalFn b = r2.K.count(v) ? r2.K.at(v) : RationalFn();
    CHECK(a.equals(b));
  }
}

TEST_CASE("evaluation collapses to the diagonal") {
  auto a1 = RootSystem::from_label("A1");
  StableContext sc(a1);
  RootPolynomial Rs = root_polynomial(*a1, 1);
  GroupAlgElt evp = ev_root_polynomial(sc.hecke(), Rs, +1);
  CHECK(evp.equals(GroupAlgElt::delta(*a1, 1)
                       .times_scalar(xtilde_w(*a1, 1, +1) / x_w(*a1, 1, +1))));

  auto a2 = RootSystem::from_label("A2");
  StableContext sc2(a2);
  for (int w = 0; w < 6; ++w) {
    for (const auto& word : a2->weyl().reduced_words(w)) {
      RootPolynomial R = root_polynomial(*a2, w, &word);
      GroupAlgElt evm = ev_root_polynomial(sc2.hecke(), R, -1);
      CHECK(evm.equals(GroupAlgElt::delta(*a2, w)
                           .times_scalar(xhat_w(*a2, w, +1) / x_w(*a2, w, -1))));
    }
  }
}

TEST_CASE("bridge to the triangular basis coefficients") {
  auto b2 = RootSystem::from_label("B2");
  StableContext sc(b2);
  const auto& bp = sc.hecke().table(BasisFamily::BPlus);
  const auto& bm = sc.hecke().table(BasisFamily::BMinus);
  const WeylGroup& W = b2->weyl();
  for (int w = 0; w < W.size(); ++w) {
    RationalFn cp = xtilde_w(*b2, w, +1) / x_w(*b2, w, +1);
    RationalFn cm = xhat_w(*b2, w, +1) / x_w(*b2, w, -1);
    for (int v = 0; v < W.size(); ++v) {
      const RationalFn& K = sc.rootpoly().K(v, w);
      CHECK((cp * bp.at(w, v)).equals(K));
      CHECK((cm * bm.at(w, v)).equals(K));
      if (!W.bruhat_leq(v, w)) CHECK(K.is_zero());
    }
  }
}

TEST_CASE("two-variable embedding and folding") {
  auto a2 = RootSystem::from_label("A2");
  RootPolynomial R = root_polynomial(*a2, a2->weyl().longest());
  for (const auto& [v, c] : R.K) {
    RationalFn two = embed_y(c, 2);
    CHECK(pure_y(two, 2));
    CHECK(ev_fold(two, 2).equals(c));
  }
  // x-embedded values are not pure-y unless constant
  RationalFn xval = x_of_root(*a2, 0);
  CHECK(!pure_y(embed_x(xval, 2), 2));
}
