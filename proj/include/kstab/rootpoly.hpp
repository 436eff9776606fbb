// Root polynomials for the Demazure-Lusztig generators and their expansion
// coefficients K_{v,w}, the second independent route to restriction formulas.
//
// The polynomial for w is the left-to-right product of factors
// h_i(beta_j) = tau^x_i - (q-1)/y_{-beta_j} along a reduced word, expanded in
// the tau^x basis.  The coefficients are pure y-rational functions, so the
// production path realizes the y-variables on the ambient weight lattice; the
// doubled-lattice embedding below exists to state that purity as a checkable
// property and to implement the evaluation map y -> x.

#pragma once

#include "kstab/hecke.hpp"

namespace kstab {

struct RootPolynomial {
  int w = 0;
  // K_{v,w} indexed by v; coefficients in y-variables realized on the ambient
  // lattice.  K_{w,w} = 1 and K_{v,w} = 0 unless v <= w.
  std::map<int, RationalFn> K;
};

// Builds the root polynomial along `word` (default: the canonical word of w).
// The result is word-independent; a non-reduced word is rejected.
RootPolynomial root_polynomial(const RootSystem& rs, int w,
                               const std::vector<uint8_t>* word = nullptr);

// ev(R) = sum_v K_{v,w}(y->x) tau^{x,+-}_v expanded in the delta basis.
GroupAlgElt ev_root_polynomial(const HeckeContext& hctx, const RootPolynomial& R,
                               int sign);

// Two-variable field Q^y (x) Q^x realized on a doubled exponent lattice:
// x-exponents occupy coordinates [0, rank), y-exponents [rank, 2*rank).
RationalFn embed_x(const RationalFn& f, int rank);
RationalFn embed_y(const RationalFn& f, int rank);
// The evaluation homomorphism y_lambda -> x_lambda (folds the y block).
RationalFn ev_fold(const RationalFn& f, int rank);
// Does f involve only y-variables (zero x-degree everywhere)?
bool pure_y(const RationalFn& f, int rank);

// Cached K tables per root system.
class RootPolyContext {
 public:
  explicit RootPolyContext(std::shared_ptr<const RootSystem> rs) : rs_(std::move(rs)) {}
  const RationalFn& K(int v, int w) const;

 private:
  std::shared_ptr<const RootSystem> rs_;
  mutable std::mutex mu_;
  mutable std::vector<std::optional<std::map<int, RationalFn>>> cols_;
};

}  // namespace kstab
