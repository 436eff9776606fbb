#include <doctest.h>

#include <set>

#include "kstab/rootdata.hpp"

using namespace kstab;

TEST_CASE("labels and counting") {
  auto a2 = RootSystem::from_label("A2");
  CHECK(a2->num_positive() == 3);
  CHECK(a2->weyl().size() == 6);
  auto b2 = RootSystem::from_label("B2");
  CHECK(b2->num_positive() == 4);
  CHECK(b2->weyl().size() == 8);
  auto c2 = RootSystem::from_label("C2");
  CHECK(c2->num_positive() == 4);
  auto g2 = RootSystem::from_label("G2");
  CHECK(g2->num_positive() == 6);
  CHECK(g2->weyl().size() == 12);
  auto a3 = RootSystem::from_label("A3");
  CHECK(a3->num_positive() == 6);
  CHECK(a3->weyl().size() == 24);
  auto b3 = RootSystem::from_label("B3");
  CHECK(b3->num_positive() == 9);
  CHECK(b3->weyl().size() == 48);
  CHECK_THROWS(RootSystem::from_label("Z9"));
}

TEST_CASE("non-finite Cartan matrices are rejected with a diagnostic") {
  CHECK_THROWS_WITH_AS(RootSystem::from_cartan({{2, -3}, {-3, 2}}),
                       doctest::Contains("non-finite type"), std::runtime_error);
  CHECK_THROWS_WITH_AS(RootSystem::from_cartan({{2, -1}, {1, 2}}),
                       doctest::Contains("positive off-diagonal"), std::runtime_error);
  CHECK_THROWS_WITH_AS(RootSystem::from_cartan({{1, 0}, {0, 2}}),
                       doctest::Contains("diagonal"), std::runtime_error);
  CHECK_THROWS_WITH_AS(RootSystem::from_cartan({{2, -1}, {0, 2}}),
                       doctest::Contains("zero pattern"), std::runtime_error);
  // affine A1~ matrix is symmetrizable but not positive definite
  CHECK_THROWS_WITH_AS(RootSystem::from_cartan({{2, -2}, {-2, 2}}),
                       doctest::Contains("non-finite type"), std::runtime_error);
}

TEST_CASE("reflections on weights") {
  auto a1 = RootSystem::from_label("A1");
  std::vector<Rat> alpha{Rat(2)};
  CHECK(reflect_weight(*a1, 0, alpha) == std::vector<Rat>{Rat(-2)});

  auto a2 = RootSystem::from_label("A2");
  std::vector<Rat> alpha2{Rat(-1), Rat(2)};
  // s1(alpha2) = alpha1 + alpha2
  CHECK(reflect_weight(*a2, 0, alpha2) == std::vector<Rat>{Rat(1), Rat(1)});
  // fixed hyperplane
  std::vector<Rat> fixed{Rat(0), Rat(5)};
  CHECK(reflect_weight(*a2, 0, fixed) == fixed);
  // involution on random weights
  std::vector<Rat> lam{Rat(3, 2), Rat(-5)};
  CHECK(reflect_weight(*a2, 1, reflect_weight(*a2, 1, lam)) == lam);
}

TEST_CASE("multiplication, inverses, lengths") {
  auto a2 = RootSystem::from_label("A2");
  const WeylGroup& W = a2->weyl();
  int s1 = W.simple(0), s2 = W.simple(1);
  CHECK(W.multiply(s1, s1) == 0);
  int c = W.multiply(s1, s2);
  CHECK(W.multiply(W.multiply(c, c), c) == 0);  // (s1 s2)^3 = e
  int w = W.from_word_string("1 2 1");
  CHECK(W.length(w) == 3);
  CHECK(w == W.longest());
  for (int a = 0; a < W.size(); ++a) {
    CHECK(W.multiply(W.inverse(a), a) == 0);
    for (int b = 0; b < W.size(); ++b)
      CHECK(W.length(W.multiply(a, b)) <= W.length(a) + W.length(b));
  }
}

TEST_CASE("words round-trip and braid-consistent matrices") {
  auto b2 = RootSystem::from_label("B2");
  const WeylGroup& W = b2->weyl();
  for (int a = 0; a < W.size(); ++a) {
    CHECK(W.from_word_string(W.to_word_string(a)) == a);
    // every reduced word multiplies back to a and gives the same matrix action
    for (const auto& word : W.reduced_words(a)) {
      int prod = 0;
      for (uint8_t i : word) prod = W.mult_simple_right(prod, i);
      CHECK(prod == a);
    }
  }
  CHECK(W.from_word_string("bogus") == -1);
  CHECK(W.from_word_string("9") == -1);
}

TEST_CASE("bruhat order") {
  auto a2 = RootSystem::from_label("A2");
  const WeylGroup& W = a2->weyl();
  int s1 = W.simple(0), s2 = W.simple(1);
  int s2s1 = W.multiply(s2, s1);
  CHECK(W.bruhat_leq(s1, s2s1));
  CHECK(!W.bruhat_leq(s1, s2));
  for (int w = 0; w < W.size(); ++w) CHECK(W.bruhat_leq(0, w));

  // brute-force subword oracle on all pairs, A2 and B2
  for (const char* label : {"A2", "B2"}) {
    auto rs = RootSystem::from_label(label);
    const WeylGroup& G = rs->weyl();
    for (int w = 0; w < G.size(); ++w) {
      const auto& word = G.word(w);
      std::set<int> below;
      // enumerate all subwords
      for (uint32_t mask = 0; mask < (1u << word.size()); ++mask) {
        int prod = 0;
        for (size_t k = 0; k < word.size(); ++k)
          if (mask & (1u << k)) prod = G.mult_simple_right(prod, word[k]);
        below.insert(prod);
      }
      for (int u = 0; u < G.size(); ++u)
        CHECK(G.bruhat_leq(u, w) == (below.count(u) > 0));
    }
  }

  // w0 is the unique maximum; its length is the number of positive roots
  const WeylGroup& G = a2->weyl();
  CHECK(G.length(G.longest()) == a2->num_positive());
  for (int w = 0; w < G.size(); ++w) CHECK(G.bruhat_leq(w, G.longest()));
}

TEST_CASE("inversion sets") {
  auto a2 = RootSystem::from_label("A2");
  const WeylGroup& W = a2->weyl();
  CHECK(W.inversion_set(W.simple(0)) == std::vector<int>{0});
  CHECK(int(W.inversion_set(W.longest()).size()) == a2->num_positive());
  // Sigma_{s1 s2} = {alpha1, alpha1 + alpha2}
  int w = W.from_word_string("1 2");
  std::vector<int> want{0, 2};  // alpha1 and alpha1+alpha2
  CHECK(W.inversion_set(w) == want);
  // brute force: Sigma_w = w Sigma^- cap Sigma^+
  for (int u = 0; u < W.size(); ++u) {
    std::vector<int> brute;
    for (int r = a2->num_positive(); r < a2->num_roots(); ++r) {
      int img = W.act_on_root(u, r);
      if (a2->is_positive_root(img)) brute.push_back(img);
    }
    std::sort(brute.begin(), brute.end());
    CHECK(W.inversion_set(u) == brute);
    CHECK(int(brute.size()) == W.length(u));
  }
  // length additivity criterion: l(uv) = l(u) + l(v) iff
  // Sigma_{uv} = Sigma_u disjoint-union u Sigma_v
  for (int u = 0; u < W.size(); ++u)
    for (int v = 0; v < W.size(); ++v) {
      int uv = W.multiply(u, v);
      std::set<int> su(W.inversion_set(u).begin(), W.inversion_set(u).end());
      std::set<int> expected = su;
      bool disjoint = true;
      for (int r : W.inversion_set(v)) {
        int img = W.act_on_root(u, r);
        if (!a2->is_positive_root(img) || !expected.insert(img).second) disjoint = false;
      }
      std::set<int> suv(W.inversion_set(uv).begin(), W.inversion_set(uv).end());
      bool additive = W.length(uv) == W.length(u) + W.length(v);
      CHECK(additive == (disjoint && expected == suv));
    }
}

TEST_CASE("reduced words enumeration") {
  auto a2 = RootSystem::from_label("A2");
  CHECK(a2->weyl().reduced_words(0) == std::vector<std::vector<uint8_t>>{{}});
  auto w0_words = a2->weyl().reduced_words(a2->weyl().longest());
  CHECK(w0_words.size() == 2);
  auto b2 = RootSystem::from_label("B2");
  auto b2w0 = b2->weyl().reduced_words(b2->weyl().longest());
  CHECK(b2w0.size() == 2);
  for (const auto& w : b2w0) CHECK(w.size() == 4);
  auto a3 = RootSystem::from_label("A3");
  CHECK(a3->weyl().reduced_words(a3->weyl().longest()).size() == 16);
}

TEST_CASE("parabolic data") {
  auto a2 = RootSystem::from_label("A2");
  const WeylGroup& W = a2->weyl();
  auto empty = W.parabolic({});
  CHECK(int(empty.min_reps.size()) == W.size());
  CHECK(empty.w0J == 0);
  auto j1 = W.parabolic({0});
  CHECK(j1.min_reps.size() == 3);
  std::vector<int> all{0, 1};
  auto full = W.parabolic(all);
  CHECK(full.min_reps == std::vector<int>{0});
  CHECK(full.w0J == W.longest());

  // coset decomposition: W = union of w W_J over representatives, disjoint
  for (const auto& J : std::vector<std::vector<int>>{{}, {0}, {1}, {0, 1}}) {
    auto par = W.parabolic(J);
    std::set<int> seen;
    for (int rep : par.min_reps)
      for (int u : par.subgroup) {
        int x = W.multiply(rep, u);
        CHECK(seen.insert(x).second);
        // the representative is Bruhat-minimal in its coset
        CHECK(W.length(rep) <= W.length(x));
      }
    CHECK(int(seen.size()) == W.size());
    // v(Sigma^+ minus Sigma_J^+) is preserved for v in W_J
    for (int v : par.subgroup)
      for (int r = 0; r < a2->num_positive(); ++r) {
        bool in_j =
            !a2->is_positive_root(W.act_on_root(W.inverse(par.w0J), r));
        if (!in_j) CHECK(a2->is_positive_root(W.act_on_root(v, r)));
      }
  }
}

TEST_CASE("dual system exchanges roots and coroots") {
  auto b2 = RootSystem::from_label("B2");
  auto dual = b2->dual();
  CHECK(dual->num_positive() == 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(dual->cartan()[i][j] == b2->cartan()[j][i]);
}
