#include "kstab/rootpoly.hpp"

#include <stdexcept>

namespace kstab {

RootPolynomial root_polynomial(const RootSystem& rs, int w,
                               const std::vector<uint8_t>* word) {
  const WeylGroup& W = rs.weyl();
  std::vector<uint8_t> local;
  if (word) {
    int prod = 0;
    for (uint8_t i : *word) prod = W.mult_simple_right(prod, i);
    if (prod != w || int(word->size()) != W.length(w))
      throw std::runtime_error("root_polynomial: word is not a reduced word of the element");
    local = *word;
  } else {
    local = W.word(w);
  }

  RationalFn q = RationalFn::q_power(2);
  RationalFn one(1);

  RootPolynomial R;
  R.w = w;
  R.K[0] = one;

  int prefix = 0;  // s_{i_1} ... s_{i_{j-1}}
  for (uint8_t i : local) {
    int beta = W.act_on_root(prefix, rs.simple_root(i));
    prefix = W.mult_simple_right(prefix, i);
    // y_{-beta} = 1 - e^{beta}
    RationalFn ybeta = x_of_root(rs, rs.negative_of(beta));
    RationalFn hc = -((q - one) / ybeta);

    std::map<int, RationalFn> next;
    auto add = [&](int v, const RationalFn& c) {
      if (c.is_zero()) return;
      auto [it, fresh] = next.try_emplace(v);
      it->second += c;
    };
    for (const auto& [v, c] : R.K) {
      // tau_v tau_i: quadratic relation when the product shortens
      int vs = W.mult_simple_right(v, i);
      if (W.length(vs) > W.length(v)) {
        add(vs, c);
      } else {
        add(vs, c * q);
        add(v, c * (q - one));
      }
      add(v, c * hc);
    }
    for (auto it = next.begin(); it != next.end();)
      it = it->second.is_zero() ? next.erase(it) : std::next(it);
    R.K = std::move(next);
  }
  return R;
}

GroupAlgElt ev_root_polynomial(const HeckeContext& hctx, const RootPolynomial& R,
                               int sign) {
  const RootSystem& rs = hctx.system();
  GroupAlgElt out(&rs);
  DLKind kind = sign > 0 ? DLKind::TauPlus : DLKind::TauMinus;
  for (const auto& [v, c] : R.K) {
    GroupAlgElt tau = hecke_word(rs, kind, v);
    out = out + tau.times_scalar(c);
  }
  return out;
}

RationalFn embed_x(const RationalFn& f, int rank) {
  (void)rank;
  return f;  // x-exponents already occupy the low block
}

RationalFn embed_y(const RationalFn& f, int rank) {
  if (2 * rank > ExpKey::kMaxRank)
    throw std::runtime_error("embed_y: doubled lattice exceeds kMaxRank");
  return f.map_exponents([rank](const ExpKey& e) {
    ExpKey r;
    r.qh = e.qh;
    for (int i = 0; i < rank; ++i) {
      r.w[rank + i] = e.w[i];
    }
    return r;
  });
}

RationalFn ev_fold(const RationalFn& f, int rank) {
  return f.map_exponents([rank](const ExpKey& e) {
    ExpKey r;
    r.qh = e.qh;
    for (int i = 0; i < rank; ++i) r.w[i] = int16_t(e.w[i] + e.w[rank + i]);
    return r;
  });
}

bool pure_y(const RationalFn& f, int rank) {
  auto poly_pure = [rank](const LaurentPoly& p) {
    for (const auto& [e, c] : p.terms())
      for (int i = 0; i < rank; ++i)
        if (e.w[i] != 0) return false;
    return true;
  };
  if (!poly_pure(f.num())) return false;
  if (!poly_pure(f.den_residual())) return false;
  for (const auto& [a, m] : f.den_atoms()) {
    for (int i = 0; i < rank; ++i)
      if (a.m.w[i] != 0) return false;
  }
  return true;
}

const RationalFn& RootPolyContext::K(int v, int w) const {
  std::lock_guard<std::mutex> lock(mu_);
  const int N = rs_->weyl().size();
  if (cols_.empty()) cols_.resize(N);
  if (!cols_[w]) {
    auto R = root_polynomial(*rs_, w);
    cols_[w] = std::move(R.K);
  }
  static const RationalFn kZero;
  auto it = cols_[w]->find(v);
  return it == cols_[w]->end() ? kZero : it->second;
}

}  // namespace kstab
