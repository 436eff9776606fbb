// Principal-series dictionary on the dual root system: the two bases of
// Iwahori invariants realized as K-theory classes, c-factors, transition
// matrices, intertwiners, and the spherical / Whittaker evaluations with an
// independent character-formula oracle.
//
// Convention bridge.  The ambient stable-basis machinery orders roots with the
// Borel's roots positive; this module works in the opposite labeling.  The
// flip is realized once, concretely: coefficients of stable classes enter
// through e^{lambda} -> e^{-lambda} (negate_weights), the fixed-point class
// becomes prod (1-e^{-w b})(1-q e^{w b}) f_w, the Hecke operator becomes the
// generator of the negated simple root conjugated by the rho twist, and the
// pushforward / pairing denominators use the flipped fixed-point weights.
// With that dictionary every formula below reads in textbook form over the
// ambient positive roots.

#pragma once

#include "kstab/stable.hpp"

namespace kstab {

class PadicContext {
 public:
  // Works on the dual of the given system (roots of the dual group).
  explicit PadicContext(std::shared_ptr<const RootSystem> base_system);

  const RootSystem& dual_system() const { return *d_; }
  const StableContext& stable() const { return *sctx_; }
  int dim_flag() const { return d_->num_positive(); }

  // ---- classes (all stored untwisted; the global O(-rho) twist of the
  // conventional normalization cancels from every identity and is kept out of
  // the stored representatives) ----

  // flipped fixed-point class: prod_{b>0} (1-e^{-wb})(1-q e^{wb}) f_w
  DualElt fixed_point_class(int w) const;
  // Casselman avatar g_w
  const DualElt& basis_g(int w) const;
  // characteristic-function avatar: q^{l(w)/2} (stab_-(w) flipped)
  const DualElt& basis_phi(int w) const;
  // spherical class phi-tilde = sum_w basis_phi(w)
  DualElt spherical_class() const;

  // ---- operators ----
  DualElt act_T(int i, const DualElt& f) const;              // pi(T_{s_i})
  DualElt act_theta(const ExpKey& mu, const DualElt& f) const;  // pi(theta_mu)

  // c_gamma = (1 - q^{-1} e^{gamma})/(1 - e^{gamma}) for any root index
  RationalFn c_factor_sym(int root_idx) const;
  Rat c_factor_at(int root_idx, const CharacterAssignment& tau) const;
  // J_{alpha,w} = c_{w a} c_{-w a} if w s_a > w, else 1
  RationalFn j_factor_sym(int i, int w) const;

  // ---- transition matrices (symbolic) ----
  struct Tables {
    std::vector<std::vector<RationalFn>> a, b;
  };
  const Tables& transition_matrices() const;

  // ---- intertwiners at a numeric regular character ----
  // Matrix of I^tau_{s_i} on the chosen basis (true: g / Casselman, false:
  // phi); column y holds the image coordinates of basis vector y.
  std::vector<std::vector<Rat>> intertwiner_matrix(int i, const CharacterAssignment& tau,
                                                   bool casselman_basis) const;
  // values of the simple roots under w(tau)
  CharacterAssignment weyl_on_character(int w, const CharacterAssignment& tau) const;
  void require_regular(const CharacterAssignment& tau, bool also_q = true) const;

  // numeric coordinate vector of a class (de-twisted evaluation)
  std::vector<Rat> eval_class(const DualElt& f, const CharacterAssignment& tau) const;

  // ---- spherical / Whittaker ----
  bool dominant(const std::vector<int>& mu_fund) const;
  // exponent of a dominant weight mu given in fundamental coordinates of the
  // dual system (= coweight coordinates of the base group)
  ExpKey mu_exp(const std::vector<int>& mu_fund) const;
  // delta_B^{1/2}(pi^mu) = q^{-<rho, mu>}
  RationalFn delta_half(const std::vector<int>& mu_fund) const;

  // Macdonald: both computations must agree; returns the common value.
  RationalFn macdonald_pairing(const std::vector<int>& mu_fund) const;
  RationalFn macdonald_closed(const std::vector<int>& mu_fund) const;

  // Whittaker: the operator route, the closed form, and the character oracle.
  RationalFn whittaker_k_side(const std::vector<int>& mu_fund) const;
  RationalFn whittaker_closed(const std::vector<int>& mu_fund) const;
  // Character of the highest-weight representation (alternating-sum formula,
  // exact division) and the dimension cross-check.
  LaurentPoly weyl_character(const std::vector<int>& mu_fund) const;
  Rat weyl_dimension(const std::vector<int>& mu_fund) const;
  // sum_w e^{w mu} / prod_{b>0} (1 - e^{-w b}), the localization form of the
  // character, as a rational function.
  RationalFn character_localization_sum(const std::vector<int>& mu_fund) const;

 private:
  DualElt ndual(const DualElt& f) const;  // coefficient-wise weight negation
  RationalFn fixed_weight(int w) const;   // the coefficient of fixed_point_class
  RationalFn g_denominator(int w) const;  // prod (1-e^{-wb}) / (q-e^{-wb}) split
  LaurentPoly alt_sum(const std::vector<int>& mu_plus_rho) const;

  std::shared_ptr<const RootSystem> d_;
  std::unique_ptr<StableContext> sctx_;
  mutable std::mutex mu_;
  mutable std::map<int, DualElt> g_cache_, phi_cache_;
  mutable std::optional<Tables> tables_;
};

}  // namespace kstab
