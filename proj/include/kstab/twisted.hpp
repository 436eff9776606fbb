// The twisted group algebra Q_W = Q x| R[W] and its dual Q_W^*.
//
// A GroupAlgElt stores coefficients in left normal form, Sum p_w delta_w, so
// delta_w * p = w(p) delta_w is a rewriting consequence of the product rule.
// A DualElt stores Sum c_w f_w with f_w(delta_v) = delta_{w,v}; the bullet
// action (z . f)(z') = f(z' z) evaluates monomial-by-monomial through the
// closed form p delta_u . f_v = (v u^{-1})(p) f_{v u^{-1}}.

#pragma once

#include <map>

#include "kstab/rootdata.hpp"

namespace kstab {

RationalFn weyl_act_rf(const RootSystem& rs, int w, const RationalFn& x);

class GroupAlgElt {
 public:
  GroupAlgElt() = default;
  explicit GroupAlgElt(const RootSystem* rs) : rs_(rs) {}
  static GroupAlgElt delta(const RootSystem& rs, int w);
  static GroupAlgElt scalar(const RootSystem& rs, RationalFn p);  // p delta_e

  const RootSystem& system() const { return *rs_; }
  const std::map<int, RationalFn>& coeffs() const { return c_; }
  RationalFn coeff(int w) const;
  void set_coeff(int w, RationalFn p);
  void add_coeff(int w, const RationalFn& p);
  bool is_zero() const { return c_.empty(); }

  GroupAlgElt operator+(const GroupAlgElt& o) const;
  GroupAlgElt operator-(const GroupAlgElt& o) const;
  GroupAlgElt operator*(const GroupAlgElt& o) const;  // twisted product
  GroupAlgElt times_scalar(const RationalFn& p) const;  // left multiplication

  bool equals(const GroupAlgElt& o) const;

  std::string to_string() const;

 private:
  const RootSystem* rs_ = nullptr;
  std::map<int, RationalFn> c_;  // nonzero coefficients only
};

class DualElt {
 public:
  DualElt() = default;
  explicit DualElt(const RootSystem* rs) : rs_(rs) {}
  static DualElt basis(const RootSystem& rs, int w);  // f_w
  static DualElt unit(const RootSystem& rs);          // Sum_w f_w

  const RootSystem& system() const { return *rs_; }
  const std::map<int, RationalFn>& coeffs() const { return c_; }
  RationalFn coeff(int w) const;
  void set_coeff(int w, RationalFn p);
  void add_coeff(int w, const RationalFn& p);
  bool is_zero() const { return c_.empty(); }

  DualElt operator+(const DualElt& o) const;
  DualElt operator-(const DualElt& o) const;
  // componentwise product f_w . f_v = delta_{w,v} f_v
  DualElt operator*(const DualElt& o) const;
  DualElt times_scalar(const RationalFn& p) const;

  bool equals(const DualElt& o) const;
  // Is this rational multiple c * unit?  Returns c when so.
  std::optional<RationalFn> as_unit_multiple() const;

  std::string to_string() const;

 private:
  const RootSystem* rs_ = nullptr;
  std::map<int, RationalFn> c_;
};

// (z . f)(z') = f(z' z)
DualElt bullet_act(const GroupAlgElt& z, const DualElt& f);

// Localization pairing: Sum_v f|_v g|_v / prod_{a>0} (1-e^{v a})(1-q e^{-v a}).
RationalFn kpairing(const DualElt& f, const DualElt& g);

enum class PushPullKind { YJ, YHatJ, YPiOverJ, YHatPiOverJ };

// Averaged push-pull elements of eq-style Y_J / hat-Y_J; coefficients are
// normalized into left normal form on construction.
GroupAlgElt push_pull_element(const RootSystem& rs, const std::vector<int>& J,
                              PushPullKind kind);

// iota(p delta_v) = delta_{v^{-1}} p v(x_{-w0} hat-x_{w0}) / (x_{-w0} hat-x_{w0});
// anti-involution with iota(tau^+-) = tau^-+.
GroupAlgElt iota_involution(const GroupAlgElt& z);

// w(F)|_y = w(F|_{w^{-1} y})
DualElt weyl_act_dual(const RootSystem& rs, int w, const DualElt& f);

// F (x) O(lambda): coefficient at f_w multiplied by e^{w lambda};
// lambda in half-unit fundamental coordinates.
DualElt twist_line_bundle(const DualElt& f, const ExpKey& lambda);

// --- convenience builders used across modules ---

// x_alpha = 1 - e^{-alpha}, x_{-alpha}, tilde-x (q - e^alpha),
// hat-x (1 - q e^{-alpha}); root given by index into rs.
RationalFn x_of_root(const RootSystem& rs, int root_idx);
RationalFn xtilde_of_root(const RootSystem& rs, int root_idx);
RationalFn xhat_of_root(const RootSystem& rs, int root_idx);

// products over Sigma_w (inversion set of w)
RationalFn x_w(const RootSystem& rs, int w, int sign);       // x_{+-w}
RationalFn xtilde_w(const RootSystem& rs, int w, int sign);  // tilde-x_{+-w}
RationalFn xhat_w(const RootSystem& rs, int w, int sign);    // hat-x_{+-w}

// q^{k l(w)/2}
RationalFn q_length_power(const RootSystem& rs, int w, int k_halves);

}  // namespace kstab
