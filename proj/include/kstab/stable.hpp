// Stable basis families on the algebraic model of K_T(T^*G/B): the classes
// St^{+-}_w, their geometric normalizations stab_{+-}(w), restriction
// coefficients by recursion and by closed formula, duality, degree checks,
// and the parabolic families St^{+-,J}.

#pragma once

#include "kstab/rootpoly.hpp"

namespace kstab {

class StableContext {
 public:
  explicit StableContext(std::shared_ptr<const RootSystem> rs);

  const RootSystem& system() const { return *rs_; }
  std::shared_ptr<const RootSystem> system_ptr() const { return rs_; }
  HeckeContext& hecke() const { return *hctx_; }
  RootPolyContext& rootpoly() const { return *kctx_; }

  // pt_e = x_{-w0} f_e and pt_{w0} = x_{-w0} f_{w0}
  DualElt make_pt(bool at_longest) const;

  // St^+_w = tau^+_{w^{-1}} . pt_e ; St^-_u = (tau^-_{w0 u})^{-1} . pt_{w0}
  const DualElt& st(int sign, int w) const;
  // stab_+(w) = q_w^{-1/2} St^+_w ; stab_-(w) = q_{w0} q_w^{-1/2} St^-_w
  DualElt stab(int sign, int w) const;

  // Minus-chamber restriction stab_-(w)|_v via the three-clause recursion,
  // computed as one Bruhat-increasing column sweep over the full W x W table.
  const RationalFn& restrict_recursive(int w, int v) const;

  // Closed formulas: plus chamber via the a^+ table, minus chamber via the
  // root-polynomial coefficients.
  RationalFn restrict_closed(int sign, int w, int v) const;

  // hat-Y_Pi . (St^+_w . St^-_u), which is a multiple of the unit; returns the
  // unit coefficient (delta_{w,u} q_{w0 u}^{-1} when the duality theorem holds).
  RationalFn duality_unit_coeff(int w, int u) const;

  // Newton-polygon degree inequality for the minus family:
  //   hull(stab_-(w)|_v) + w(lambda)  inside  hull(stab_-(v)|_v) + v(lambda)
  // for v > w; lambda must be regular (lambda - u lambda never integral) and
  // inside the fundamental alcove.  Throws on an invalid lambda.
  bool degree_axiom_check(int w, int v, const std::vector<Rat>& lambda) const;
  void validate_degree_slope(const std::vector<Rat>& lambda) const;

  // Parabolic families for w in W^J (rejected otherwise).  The plus family is
  // the averaged push-pull image hat-Y_J . St^+_w; the minus family is the
  // unique coset-constant solution of the parabolic duality system (see the
  // implementation note in parabolic_st).
  DualElt parabolic_st(int sign, const std::vector<int>& J, int w) const;
  // Closed coset sums for the f_v-coefficient (v in W^J) of St^{+-,J}_w.
  RationalFn parabolic_restrict_closed(int sign, const std::vector<int>& J, int w,
                                       int v) const;
  // hat-Y_{Pi/J} . (St^{+,J}_w . St^{-,J}_v) unit coefficient.
  RationalFn parabolic_duality_unit_coeff(const std::vector<int>& J, int w, int v) const;

 private:
  void build_minus_table() const;
  std::vector<std::vector<RationalFn>> aggregated_aminus(const std::vector<int>& J) const;

  std::shared_ptr<const RootSystem> rs_;
  std::unique_ptr<HeckeContext> hctx_;
  std::unique_ptr<RootPolyContext> kctx_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, DualElt> st_cache_;
  mutable std::vector<std::vector<RationalFn>> minus_table_;
  mutable bool minus_table_built_ = false;
};

}  // namespace kstab
