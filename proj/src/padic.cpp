#include "kstab/padic.hpp"

#include <stdexcept>

namespace kstab {

PadicContext::PadicContext(std::shared_ptr<const RootSystem> base_system) {
  d_ = base_system->dual();
  sctx_ = std::make_unique<StableContext>(d_);
}

DualElt PadicContext::ndual(const DualElt& f) const {
  DualElt out(&*d_);
  for (const auto& [w, c] : f.coeffs()) out.set_coeff(w, c.negate_weights());
  return out;
}

RationalFn PadicContext::fixed_weight(int w) const {
  const WeylGroup& W = d_->weyl();
  RationalFn out(1);
  for (int r = 0; r < d_->num_positive(); ++r) {
    int wr = W.act_on_root(w, r);
    // (1 - e^{-w b})(1 - q e^{w b})
    out *= x_of_root(*d_, wr);
    LaurentPoly p = LaurentPoly::one();
    ExpKey k = d_->root_exp(wr);
    k.qh = 2;
    p.add_term(k, -1);
    out *= RationalFn::from_poly(p);
  }
  return out;
}

DualElt PadicContext::fixed_point_class(int w) const {
  DualElt f(&*d_);
  f.set_coeff(w, fixed_weight(w));
  return f;
}

RationalFn PadicContext::g_denominator(int w) const {
  const WeylGroup& W = d_->weyl();
  RationalFn out(1);
  for (int r = 0; r < d_->num_positive(); ++r) {
    int wr = W.act_on_root(w, r);
    if (d_->is_positive_root(wr)) {
      out *= x_of_root(*d_, wr);  // 1 - e^{-w b}
    } else {
      // q - e^{-w b}
      LaurentPoly p = LaurentPoly::monomial(1, qhalf_exp(2));
      p.add_term(d_->root_exp(wr, -1), -1);
      out *= RationalFn::from_poly(p);
    }
  }
  return out;
}

const DualElt& PadicContext::basis_g(int w) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = g_cache_.find(w);
  if (it == g_cache_.end()) {
    const WeylGroup& W = d_->weyl();
    DualElt g = fixed_point_class(w)
                    .times_scalar(RationalFn::q_power(2 * W.length(w)) / g_denominator(w));
    it = g_cache_.emplace(w, std::move(g)).first;
  }
  return it->second;
}

const DualElt& PadicContext::basis_phi(int w) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = phi_cache_.find(w);
  if (it == phi_cache_.end()) {
    DualElt phi =
        ndual(sctx_->stab(-1, w)).times_scalar(RationalFn::q_power(d_->weyl().length(w)));
    it = phi_cache_.emplace(w, std::move(phi)).first;
  }
  return it->second;
}

DualElt PadicContext::spherical_class() const {
  DualElt out(&*d_);
  for (int w = 0; w < d_->weyl().size(); ++w) out = out + basis_phi(w);
  return out;
}

DualElt PadicContext::act_T(int i, const DualElt& f) const {
  // flipped-convention Hecke operator: the generator of the negated simple
  // root (the rho-twist conjugation cancels on the untwisted representatives)
  return bullet_act(demazure_lusztig(*d_, DLKind::TauMinus, i, -1), f);
}

DualElt PadicContext::act_theta(const ExpKey& mu, const DualElt& f) const {
  return twist_line_bundle(f, mu);
}

RationalFn PadicContext::c_factor_sym(int root_idx) const {
  // (1 - q^{-1} e^{gamma}) / (1 - e^{gamma})
  LaurentPoly num = LaurentPoly::one();
  ExpKey k = d_->root_exp(root_idx);
  k.qh = -2;
  num.add_term(k, -1);
  return RationalFn::fraction(std::move(num), {d_->root_exp(root_idx)});
}

Rat PadicContext::c_factor_at(int root_idx, const CharacterAssignment& tau) const {
  auto f2r = [this](const ExpKey& e) { return d_->fund_halves_to_root_coords(e); };
  return evaluate_character(c_factor_sym(root_idx), tau, f2r, d_->rank());
}

RationalFn PadicContext::j_factor_sym(int i, int w) const {
  const WeylGroup& W = d_->weyl();
  if (W.length(W.mult_simple_right(w, i)) < W.length(w)) return RationalFn(1);
  int wa = W.act_on_root(w, d_->simple_root(i));
  return c_factor_sym(wa) * c_factor_sym(d_->negative_of(wa));
}

const PadicContext::Tables& PadicContext::transition_matrices() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!tables_) {
    const WeylGroup& W = d_->weyl();
    const int N = W.size();
    Tables t;
    t.a.assign(N, std::vector<RationalFn>(N));
    t.b.assign(N, std::vector<RationalFn>(N));
    for (int w = 0; w < N; ++w) {
      RationalFn dw = g_denominator(w);
      // P_y = prod_{b>0, yb>0}(1-q e^{yb}) prod_{b>0, yb<0}(1-e^{yb})
      RationalFn py(1);
      for (int r = 0; r < d_->num_positive(); ++r) {
        int yr = W.act_on_root(w, r);
        if (d_->is_positive_root(yr)) {
          LaurentPoly p = LaurentPoly::one();
          ExpKey k = d_->root_exp(yr);
          k.qh = 2;
          p.add_term(k, -1);
          py *= RationalFn::from_poly(p);
        } else {
          py *= x_of_root(*d_, d_->negative_of(yr));  // 1 - e^{y b}
        }
      }
      for (int y = 0; y < N; ++y) {
        // a_{w,y} from the plus-chamber restrictions
        RationalFn sp = sctx_->restrict_closed(+1, y, w).negate_weights();
        if (!sp.is_zero())
          t.a[w][y] =
              RationalFn::q_power(2 * W.length(w) - W.length(y)) * sp / dw;
        // b_{w,y} from the minus-chamber restrictions (here the outer index w
        // labels the stab_- family, the inner y the evaluation point)
        RationalFn sm = sctx_->restrict_recursive(y, w).negate_weights();
        if (!sm.is_zero())
          t.b[y][w] = RationalFn::q_power(W.length(y) - 2 * W.length(w)) * sm / py;
      }
    }
    tables_ = std::move(t);
  }
  return *tables_;
}

void PadicContext::require_regular(const CharacterAssignment& tau, bool also_q) const {
  for (int r = 0; r < d_->num_roots(); ++r) {
    Rat v = tau.eval_root_coords(d_->fund_halves_to_root_coords(d_->root_exp(r)));
    if (v == 1) throw std::runtime_error("character is singular: e^{root} = 1");
    if (also_q && (v == tau.q() || v * tau.q() == 1))
      throw std::runtime_error("character is singular: e^{root} = q^{+-1}");
  }
}

CharacterAssignment PadicContext::weyl_on_character(int w,
                                                    const CharacterAssignment& tau) const {
  // e^{alpha_j}(w tau) = e^{w^{-1} alpha_j}(tau)
  const WeylGroup& W = d_->weyl();
  int wi = W.inverse(w);
  std::vector<Rat> vals(d_->rank());
  for (int j = 0; j < d_->rank(); ++j) {
    int img = W.act_on_root(wi, d_->simple_root(j));
    vals[j] = tau.eval_root_coords(d_->fund_halves_to_root_coords(d_->root_exp(img)));
  }
  return CharacterAssignment(std::move(vals), tau.q());
}

std::vector<Rat> PadicContext::eval_class(const DualElt& f,
                                          const CharacterAssignment& tau) const {
  auto f2r = [this](const ExpKey& e) { return d_->fund_halves_to_root_coords(e); };
  std::vector<Rat> out(d_->weyl().size(), Rat(0));
  for (const auto& [w, c] : f.coeffs())
    out[w] = evaluate_character(c, tau, f2r, d_->rank());
  return out;
}

std::vector<std::vector<Rat>> PadicContext::intertwiner_matrix(
    int i, const CharacterAssignment& tau, bool casselman_basis) const {
  require_regular(tau);
  const WeylGroup& W = d_->weyl();
  const int N = W.size();
  Rat ca = c_factor_at(d_->simple_root(i), tau);
  Rat cma = c_factor_at(d_->negative_of(d_->simple_root(i)), tau);
  std::vector<std::vector<Rat>> m(N, std::vector<Rat>(N, Rat(0)));
  for (int w = 0; w < N; ++w) {
    int sw = W.mult_simple_left(i, w);
    bool up = W.length(sw) > W.length(w);
    if (casselman_basis) {
      m[sw][w] = up ? cma : Rat(1) / ca;
    } else {
      if (up) {
        m[sw][w] = Rat(1) / (tau.q() * ca);
        m[w][w] = Rat(1) - Rat(1) / ca;
      } else {
        m[sw][w] = Rat(1) / ca;
        m[w][w] = Rat(1) - Rat(1) / (tau.q() * ca);
      }
    }
  }
  return m;
}

bool PadicContext::dominant(const std::vector<int>& mu) const {
  for (int v : mu)
    if (v < 0) return false;
  return true;
}

ExpKey PadicContext::mu_exp(const std::vector<int>& mu) const {
  std::vector<int> halves(mu.size());
  for (size_t i = 0; i < mu.size(); ++i) halves[i] = 2 * mu[i];
  return weight_exp(halves);
}

RationalFn PadicContext::delta_half(const std::vector<int>& mu) const {
  // q^{-<rho, mu>} with <rho, mu> = sum_i mu_i (rho^vee)_i; rho^vee is the
  // half sum of the positive coroots of the dual system.
  int qh = 0;  // in halves of q
  for (int r = 0; r < d_->num_positive(); ++r)
    for (int i = 0; i < d_->rank(); ++i) qh -= mu[i] * d_->coroot(r)[i];
  return RationalFn::q_power(qh);
}

// Lambda^p_w = fixed_weight(w); the pairing and pushforward use its
// weight-negated form (evaluation of the denominator at tau^{-1}).
RationalFn PadicContext::macdonald_pairing(const std::vector<int>& mu) const {
  if (!dominant(mu)) throw std::runtime_error("macdonald: non-dominant coweight rejected");
  const WeylGroup& W = d_->weyl();
  DualElt phit = spherical_class();
  DualElt f = act_theta(mu_exp(mu), phit).times_scalar(delta_half(mu));
  RationalFn sum;
  for (int w = 0; w < W.size(); ++w) {
    RationalFn fw = f.coeff(w);
    if (fw.is_zero()) continue;
    RationalFn gw = phit.coeff(w).negate_weights();
    sum += fw * gw / fixed_weight(w).negate_weights();
  }
  return sum;
}

RationalFn PadicContext::macdonald_closed(const std::vector<int>& mu) const {
  if (!dominant(mu)) throw std::runtime_error("macdonald: non-dominant coweight rejected");
  const WeylGroup& W = d_->weyl();
  ExpKey me = mu_exp(mu);
  RationalFn sum;
  for (int w = 0; w < W.size(); ++w) {
    RationalFn term = RationalFn::monomial(1, W.act_on_exp(w, me));
    for (int r = 0; r < d_->num_positive(); ++r) {
      int wr = W.act_on_root(w, r);
      LaurentPoly n = LaurentPoly::one();
      ExpKey k = d_->root_exp(wr, -1);
      k.qh = -2;
      n.add_term(k, -1);  // 1 - q^{-1} e^{-w b}
      term *= RationalFn::fraction(std::move(n), {d_->root_exp(wr, -1)});
    }
    sum += term;
  }
  return RationalFn::q_power(2 * dim_flag()) * delta_half(mu) * sum;
}

RationalFn PadicContext::whittaker_k_side(const std::vector<int>& mu) const {
  if (!dominant(mu)) return RationalFn();  // vanishes off the dominant cone
  const WeylGroup& W = d_->weyl();
  DualElt f = act_theta(mu_exp(mu), spherical_class()).times_scalar(delta_half(mu));
  RationalFn sum;
  for (int w = 0; w < W.size(); ++w) {
    RationalFn fw = f.coeff(w);
    if (fw.is_zero()) continue;
    // flipped-convention pushforward: divide by the flipped fixed-point weight
    sum += fw / fixed_weight(w);
  }
  RationalFn pre(1);
  for (int r = 0; r < d_->num_positive(); ++r) {
    LaurentPoly n = LaurentPoly::one();
    ExpKey k = d_->root_exp(r);
    k.qh = -2;
    n.add_term(k, -1);  // 1 - q^{-1} e^{b}
    pre *= RationalFn::from_poly(n);
  }
  return pre * sum;
}

LaurentPoly PadicContext::alt_sum(const std::vector<int>& mu_plus_rho) const {
  const WeylGroup& W = d_->weyl();
  LaurentPoly p;
  ExpKey lam = weight_exp([&] {
    std::vector<int> h(mu_plus_rho.size());
    for (size_t i = 0; i < h.size(); ++i) h[i] = 2 * mu_plus_rho[i];
    return h;
  }());
  ExpKey rho_exp = weight_exp(std::vector<int>(d_->rank(), 2));
  for (int w = 0; w < W.size(); ++w) {
    ExpKey e = W.act_on_exp(w, lam) - rho_exp;
    p.add_term(e, (W.length(w) % 2 == 0) ? 1 : -1);
  }
  return p;
}

LaurentPoly PadicContext::weyl_character(const std::vector<int>& mu) const {
  if (!dominant(mu)) throw std::runtime_error("weyl_character: weight must be dominant");
  std::vector<int> mpr(mu.size());
  for (size_t i = 0; i < mu.size(); ++i) mpr[i] = mu[i] + 1;  // mu + rho
  LaurentPoly num = alt_sum(mpr);
  std::vector<ExpKey> atoms;
  for (int r = 0; r < d_->num_positive(); ++r) atoms.push_back(d_->root_exp(r, -1));
  RationalFn chi = RationalFn::fraction(std::move(num), atoms);
  auto p = chi.as_poly();
  if (!p) throw std::runtime_error("weyl_character: alternating sum not divisible");
  return *p;
}

Rat PadicContext::weyl_dimension(const std::vector<int>& mu) const {
  std::vector<Rat> mpr(d_->rank()), rho(d_->rank(), Rat(1));
  for (int i = 0; i < d_->rank(); ++i) mpr[i] = Rat(mu[i] + 1);
  Rat dim(1);
  for (int r = 0; r < d_->num_positive(); ++r)
    dim *= d_->pairing(mpr, r) / d_->pairing(rho, r);
  return dim;
}

RationalFn PadicContext::character_localization_sum(const std::vector<int>& mu) const {
  const WeylGroup& W = d_->weyl();
  ExpKey me = mu_exp(mu);
  RationalFn sum;
  for (int w = 0; w < W.size(); ++w) {
    std::vector<ExpKey> atoms;
    for (int r = 0; r < d_->num_positive(); ++r)
      atoms.push_back(d_->root_exp(W.act_on_root(w, r), -1));  // 1 - e^{-w b}
    sum += RationalFn::fraction(
        LaurentPoly::monomial(1, W.act_on_exp(w, me)), atoms);
  }
  return sum;
}

RationalFn PadicContext::whittaker_closed(const std::vector<int>& mu) const {
  if (!dominant(mu)) return RationalFn();
  RationalFn pre(1);
  for (int r = 0; r < d_->num_positive(); ++r) {
    LaurentPoly n = LaurentPoly::one();
    ExpKey k = d_->root_exp(r);
    k.qh = -2;
    n.add_term(k, -1);
    pre *= RationalFn::from_poly(n);
  }
  return delta_half(mu) * pre * RationalFn::from_poly(weyl_character(mu));
}

}  // namespace kstab
