#include "kstab/twisted.hpp"

#include <stdexcept>

namespace kstab {

RationalFn weyl_act_rf(const RootSystem& rs, int w, const RationalFn& x) {
  if (w == 0) return x;
  const WeylGroup& W = rs.weyl();
  return x.map_exponents([&](const ExpKey& e) { return W.act_on_exp(w, e); });
}

// ---------------------------------------------------------------------------
// GroupAlgElt

GroupAlgElt GroupAlgElt::delta(const RootSystem& rs, int w) {
  GroupAlgElt z(&rs);
  z.c_[w] = RationalFn(1);
  return z;
}

GroupAlgElt GroupAlgElt::scalar(const RootSystem& rs, RationalFn p) {
  GroupAlgElt z(&rs);
  if (!p.is_zero()) z.c_[0] = std::move(p);
  return z;
}

RationalFn GroupAlgElt::coeff(int w) const {
  auto it = c_.find(w);
  return it == c_.end() ? RationalFn() : it->second;
}

void GroupAlgElt::set_coeff(int w, RationalFn p) {
  if (p.is_zero())
    c_.erase(w);
  else
    c_[w] = std::move(p);
}

void GroupAlgElt::add_coeff(int w, const RationalFn& p) {
  if (p.is_zero()) return;
  auto it = c_.find(w);
  if (it == c_.end()) {
    c_[w] = p;
  } else {
    it->second += p;
    if (it->second.is_zero()) c_.erase(it);
  }
}

GroupAlgElt GroupAlgElt::operator+(const GroupAlgElt& o) const {
  GroupAlgElt r = *this;
  if (!r.rs_) r.rs_ = o.rs_;
  for (const auto& [w, p] : o.c_) r.add_coeff(w, p);
  return r;
}

GroupAlgElt GroupAlgElt::operator-(const GroupAlgElt& o) const {
  GroupAlgElt r = *this;
  if (!r.rs_) r.rs_ = o.rs_;
  for (const auto& [w, p] : o.c_) r.add_coeff(w, -p);
  return r;
}

GroupAlgElt GroupAlgElt::operator*(const GroupAlgElt& o) const {
  if (rs_ && o.rs_ && rs_ != o.rs_)
    throw std::runtime_error("GroupAlgElt: mixed root systems");
  const RootSystem* rs = rs_ ? rs_ : o.rs_;
  GroupAlgElt r(rs);
  const WeylGroup& W = rs->weyl();
  for (const auto& [w, p] : c_)
    for (const auto& [v, p2] : o.c_) {
      // (p delta_w)(p' delta_v) = p w(p') delta_{wv}
      r.add_coeff(W.multiply(w, v), p * weyl_act_rf(*rs, w, p2));
    }
  return r;
}

GroupAlgElt GroupAlgElt::times_scalar(const RationalFn& p) const {
  GroupAlgElt r(rs_);
  if (p.is_zero()) return r;
  for (const auto& [w, c] : c_) r.c_[w] = p * c;
  return r;
}

bool GroupAlgElt::equals(const GroupAlgElt& o) const {
  // num == 0 is an exact zero test for a fraction, so cancellation in the
  // subtraction decides equality.
  return (*this - o).is_zero();
}

std::string GroupAlgElt::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (const auto& [w, p] : c_) {
    if (!s.empty()) s += "  +  ";
    s += "[" + p.to_string(rs_->rank()) + "] d_{" + rs_->weyl().to_word_string(w) + "}";
  }
  return s;
}

// ---------------------------------------------------------------------------
// DualElt

DualElt DualElt::basis(const RootSystem& rs, int w) {
  DualElt f(&rs);
  f.c_[w] = RationalFn(1);
  return f;
}

DualElt DualElt::unit(const RootSystem& rs) {
  DualElt f(&rs);
  for (int w = 0; w < rs.weyl().size(); ++w) f.c_[w] = RationalFn(1);
  return f;
}

RationalFn DualElt::coeff(int w) const {
  auto it = c_.find(w);
  return it == c_.end() ? RationalFn() : it->second;
}

void DualElt::set_coeff(int w, RationalFn p) {
  if (p.is_zero())
    c_.erase(w);
  else
    c_[w] = std::move(p);
}

void DualElt::add_coeff(int w, const RationalFn& p) {
  if (p.is_zero()) return;
  auto it = c_.find(w);
  if (it == c_.end()) {
    c_[w] = p;
  } else {
    it->second += p;
    if (it->second.is_zero()) c_.erase(it);
  }
}

DualElt DualElt::operator+(const DualElt& o) const {
  DualElt r = *this;
  if (!r.rs_) r.rs_ = o.rs_;
  for (const auto& [w, p] : o.c_) r.add_coeff(w, p);
  return r;
}

DualElt DualElt::operator-(const DualElt& o) const {
  DualElt r = *this;
  if (!r.rs_) r.rs_ = o.rs_;
  for (const auto& [w, p] : o.c_) r.add_coeff(w, -p);
  return r;
}

DualElt DualElt::operator*(const DualElt& o) const {
  DualElt r(rs_ ? rs_ : o.rs_);
  for (const auto& [w, p] : c_) {
    auto it = o.c_.find(w);
    if (it != o.c_.end()) r.set_coeff(w, p * it->second);
  }
  return r;
}

DualElt DualElt::times_scalar(const RationalFn& p) const {
  DualElt r(rs_);
  if (p.is_zero()) return r;
  for (const auto& [w, c] : c_) r.c_[w] = p * c;
  return r;
}

bool DualElt::equals(const DualElt& o) const { return (*this - o).is_zero(); }

std::optional<RationalFn> DualElt::as_unit_multiple() const {
  const int N = rs_->weyl().size();
  RationalFn first = coeff(0);
  for (int w = 1; w < N; ++w)
    if (!coeff(w).equals(first)) return std::nullopt;
  return first;
}

std::string DualElt::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (const auto& [w, p] : c_) {
    if (!s.empty()) s += "  +  ";
    s += "[" + p.to_string(rs_->rank()) + "] f_{" + rs_->weyl().to_word_string(w) + "}";
  }
  return s;
}

// ---------------------------------------------------------------------------
// bullet action and pairings

DualElt bullet_act(const GroupAlgElt& z, const DualElt& f) {
  const RootSystem& rs = f.system();
  const WeylGroup& W = rs.weyl();
  DualElt out(&rs);
  for (const auto& [u, p] : z.coeffs()) {
    int ui = W.inverse(u);
    for (const auto& [v, c] : f.coeffs()) {
      int target = W.multiply(v, ui);
      out.add_coeff(target, c * weyl_act_rf(rs, target, p));
    }
  }
  return out;
}

RationalFn kpairing(const DualElt& f, const DualElt& g) {
  const RootSystem& rs = f.system();
  const WeylGroup& W = rs.weyl();
  RationalFn sum;
  for (const auto& [v, cf] : f.coeffs()) {
    RationalFn cg = g.coeff(v);
    if (cg.is_zero()) continue;
    // 1 / prod_{a>0} (1 - e^{v a})(1 - q e^{-v a})
    std::vector<ExpKey> atoms;
    for (int r = 0; r < rs.num_positive(); ++r) {
      int vr = W.act_on_root(v, r);
      atoms.push_back(rs.root_exp(vr));
      ExpKey hat = rs.root_exp(vr, -1);
      hat.qh = 2;
      atoms.push_back(hat);
    }
    sum += cf * cg * RationalFn::fraction(LaurentPoly::one(), atoms);
  }
  return sum;
}

GroupAlgElt push_pull_element(const RootSystem& rs, const std::vector<int>& J,
                              PushPullKind kind) {
  const WeylGroup& W = rs.weyl();
  auto par = W.parabolic(J);
  // positive roots of the J-subsystem vs the rest
  std::vector<int> inside, outside;
  for (int r = 0; r < rs.num_positive(); ++r) {
    bool in_j = W.act_on_root(par.w0J, r) >= rs.num_positive();
    // Sigma_J^+ = inversions of w0J
    (in_j ? inside : outside).push_back(r);
  }
  bool over_sub = kind == PushPullKind::YJ || kind == PushPullKind::YHatJ;
  bool hat = kind == PushPullKind::YHatJ || kind == PushPullKind::YHatPiOverJ;
  const std::vector<int>& support = over_sub ? par.subgroup : par.min_reps;
  const std::vector<int>& prod_roots = over_sub ? inside : outside;

  // right-hand coefficient: 1 / prod (1-e^{a}) [(1-q e^{-a})]
  std::vector<ExpKey> atoms;
  for (int r : prod_roots) {
    atoms.push_back(rs.root_exp(r));
    if (hat) {
      ExpKey h = rs.root_exp(r, -1);
      h.qh = 2;
      atoms.push_back(h);
    }
  }
  RationalFn right_coeff = RationalFn::fraction(LaurentPoly::one(), atoms);

  GroupAlgElt out(&rs);
  for (int w : support) {
    // delta_w * c = w(c) delta_w
    out.set_coeff(w, weyl_act_rf(rs, w, right_coeff));
  }
  return out;
}

GroupAlgElt iota_involution(const GroupAlgElt& z) {
  const RootSystem& rs = z.system();
  const WeylGroup& W = rs.weyl();
  int w0 = W.longest();
  RationalFn norm = x_w(rs, w0, -1) * xhat_w(rs, w0, +1);  // x_{-w0} hat-x_{w0}
  GroupAlgElt out(&rs);
  for (const auto& [v, p] : z.coeffs()) {
    int vi = W.inverse(v);
    // delta_{v^{-1}} p v(norm)/norm  ->  left normal form
    RationalFn coeff = weyl_act_rf(rs, vi, p * weyl_act_rf(rs, v, norm)) / weyl_act_rf(rs, vi, norm);
    out.add_coeff(vi, coeff);
  }
  return out;
}

DualElt weyl_act_dual(const RootSystem& rs, int w, const DualElt& f) {
  const WeylGroup& W = rs.weyl();
  DualElt out(&rs);
  for (const auto& [y, c] : f.coeffs()) {
    // out|_{wy} = w(f|_y)
    out.set_coeff(W.multiply(w, y), weyl_act_rf(rs, w, c));
  }
  return out;
}

DualElt twist_line_bundle(const DualElt& f, const ExpKey& lambda) {
  const RootSystem& rs = f.system();
  const WeylGroup& W = rs.weyl();
  DualElt out(&rs);
  for (const auto& [w, c] : f.coeffs()) {
    ExpKey wl = W.act_on_exp(w, lambda);
    out.set_coeff(w, c * RationalFn::monomial(1, wl));
  }
  return out;
}

// ---------------------------------------------------------------------------
// atom builders

RationalFn x_of_root(const RootSystem& rs, int root_idx) {
  LaurentPoly p = LaurentPoly::one();
  p.add_term(rs.root_exp(root_idx, -1), -1);  // 1 - e^{-alpha}
  return RationalFn::from_poly(p);
}

RationalFn xtilde_of_root(const RootSystem& rs, int root_idx) {
  LaurentPoly p = LaurentPoly::monomial(1, qhalf_exp(2));  // q
  p.add_term(rs.root_exp(root_idx), -1);                   // - e^{alpha}
  return RationalFn::from_poly(p);
}

RationalFn xhat_of_root(const RootSystem& rs, int root_idx) {
  LaurentPoly p = LaurentPoly::one();
  ExpKey h = rs.root_exp(root_idx, -1);
  h.qh = 2;
  p.add_term(h, -1);  // 1 - q e^{-alpha}
  return RationalFn::from_poly(p);
}

RationalFn x_w(const RootSystem& rs, int w, int sign) {
  RationalFn out(1);
  for (int r : rs.weyl().inversion_set(w))
    out *= x_of_root(rs, sign > 0 ? r : rs.negative_of(r));
  return out;
}

RationalFn xtilde_w(const RootSystem& rs, int w, int sign) {
  RationalFn out(1);
  for (int r : rs.weyl().inversion_set(w))
    out *= xtilde_of_root(rs, sign > 0 ? r : rs.negative_of(r));
  return out;
}

RationalFn xhat_w(const RootSystem& rs, int w, int sign) {
  RationalFn out(1);
  for (int r : rs.weyl().inversion_set(w))
    out *= xhat_of_root(rs, sign > 0 ? r : rs.negative_of(r));
  return out;
}

RationalFn q_length_power(const RootSystem& rs, int w, int k_halves) {
  return RationalFn::q_power(k_halves * rs.weyl().length(w));
}

}  // namespace kstab
