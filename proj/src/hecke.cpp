#include "kstab/hecke.hpp"

#include <stdexcept>

namespace kstab {

GroupAlgElt demazure_lusztig(const RootSystem& rs, DLKind kind, int i, int sign) {
  const WeylGroup& W = rs.weyl();
  int root = sign > 0 ? rs.simple_root(i) : rs.negative_of(rs.simple_root(i));
  int s = W.simple(i);
  RationalFn xm = x_of_root(rs, rs.negative_of(root));  // x_{-alpha} = 1 - e^{alpha}
  RationalFn xp = x_of_root(rs, root);                  // x_alpha = 1 - e^{-alpha}
  RationalFn q = RationalFn::q_power(2);
  RationalFn one(1);
  GroupAlgElt z(&rs);
  switch (kind) {
    case DLKind::Y:
      // 1/x_{-a} + 1/x_a delta_a
      z.set_coeff(0, xm.inverse());
      z.set_coeff(s, xp.inverse());
      break;
    case DLKind::X: {
      z.set_coeff(0, xm.inverse() - one);
      z.set_coeff(s, xp.inverse());
      break;
    }
    case DLKind::TauPlus:
      // (q-1)/x_{-a} + tilde-x_a / x_a delta_a
      z.set_coeff(0, (q - one) / xm);
      z.set_coeff(s, xtilde_of_root(rs, root) / xp);
      break;
    case DLKind::TauMinus:
      // (q-1)/x_{-a} + hat-x_a / x_{-a} delta_a
      z.set_coeff(0, (q - one) / xm);
      z.set_coeff(s, xhat_of_root(rs, root) / xm);
      break;
    case DLKind::TLusztig: {
      // (q-1)/(1-e^a) + (1-q e^a)/(1-e^a) delta_a
      RationalFn den = x_of_root(rs, rs.negative_of(root));  // 1-e^{a}
      LaurentPoly n = LaurentPoly::one();
      ExpKey k = rs.root_exp(root);
      k.qh = 2;
      n.add_term(k, -1);  // 1 - q e^{a}
      z.set_coeff(0, (q - one) / den);
      z.set_coeff(s, RationalFn::from_poly(n) / den);
      break;
    }
  }
  return z;
}

RationalFn demazure_operator(const RootSystem& rs, int i, int sign, const RationalFn& p) {
  int root = sign > 0 ? rs.simple_root(i) : rs.negative_of(rs.simple_root(i));
  int s = rs.weyl().simple(i);
  RationalFn diff = weyl_act_rf(rs, s, p) - p;
  RationalFn den = x_of_root(rs, root);  // 1 - e^{-alpha}
  RationalFn out = diff / den;
  // Dem lands in S (resp. stays denominator-free in the atom 1-e^{-alpha});
  // non-divisibility would mean an arithmetic bug upstream.
  for (const auto& [a, m] : out.den_atoms()) {
    ExpKey e = rs.root_exp(root, -1);
    auto canon = canonical_atom(e).first;
    if (a == canon)
      throw std::runtime_error("demazure_operator: numerator not divisible by 1-e^{-alpha}");
  }
  return out;
}

GroupAlgElt hecke_word(const RootSystem& rs, DLKind kind, int w,
                       const std::vector<uint8_t>* word) {
  const WeylGroup& W = rs.weyl();
  std::vector<uint8_t> local;
  if (word) {
    // validate: the word must be reduced and multiply to w
    int prod = 0;
    for (uint8_t i : *word) prod = W.mult_simple_right(prod, i);
    if (prod != w || int(word->size()) != W.length(w))
      throw std::runtime_error("hecke_word: word is not a reduced word of the element");
    local = *word;
  } else {
    local = W.word(w);
  }
  GroupAlgElt out = GroupAlgElt::delta(rs, 0);
  for (uint8_t i : local) out = out * demazure_lusztig(rs, kind, i);
  return out;
}

GroupAlgElt hecke_invert(const RootSystem& rs, DLKind kind, int w) {
  if (kind != DLKind::TauPlus && kind != DLKind::TauMinus)
    throw std::runtime_error("hecke_invert: only tau generators are invertible here");
  const WeylGroup& W = rs.weyl();
  RationalFn qinv = RationalFn::q_power(-2);
  RationalFn one(1);
  RationalFn q = RationalFn::q_power(2);
  GroupAlgElt out = GroupAlgElt::delta(rs, 0);
  const auto& word = W.word(w);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    GroupAlgElt gen = demazure_lusztig(rs, kind, *it);
    GroupAlgElt inv = (gen + GroupAlgElt::scalar(rs, one - q)).times_scalar(qinv);
    out = out * inv;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transition tables

const TransitionData& HeckeContext::table(BasisFamily f) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(f);
    if (it != cache_.end()) return it->second;
  }
  // Build outside the lock: building one family may consult another, and
  // concurrent duplicate work is harmless since insertion is write-once.
  TransitionData t = build_table(f);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(f);
  if (it == cache_.end()) it = cache_.emplace(f, std::move(t)).first;
  return it->second;
}

TransitionData HeckeContext::build_table(BasisFamily f) const {
  const RootSystem& rs = *rs_;
  const WeylGroup& W = rs.weyl();
  const int N = W.size();
  TransitionData t;
  t.family = f;
  t.entry.assign(N, std::vector<RationalFn>(N));

  bool plus = f == BasisFamily::APlus || f == BasisFamily::BPlus || f == BasisFamily::DPlus;
  DLKind tau = plus ? DLKind::TauPlus : DLKind::TauMinus;

  if (f == BasisFamily::APlus || f == BasisFamily::AMinus) {
    // tau_w = sum_v a_{w,v} delta_v: the expansion is just the word product.
    for (int w = 0; w < N; ++w) {
      GroupAlgElt z = hecke_word(rs, tau, w);
      for (const auto& [v, p] : z.coeffs()) t.entry[w][v] = p;
    }
    return t;
  }
  if (f == BasisFamily::BPlus || f == BasisFamily::BMinus) {
    // delta_w = sum_v b_{w,v} tau_v: invert the triangular a-table.
    const TransitionData& a = table(plus ? BasisFamily::APlus : BasisFamily::AMinus);
    // process targets by increasing length: subtract multiples of tau_v
    std::vector<int> order(N);
    for (int i = 0; i < N; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return W.length(x) > W.length(y); });
    for (int w = 0; w < N; ++w) {
      std::map<int, RationalFn> rem;  // current delta-expansion remainder
      rem[w] = RationalFn(1);
      for (int v : order) {
        auto it = rem.find(v);
        if (it == rem.end() || it->second.is_zero()) continue;
        RationalFn coeff = it->second / a.at(v, v);
        t.entry[w][v] = coeff;
        for (int u = 0; u < N; ++u) {
          const RationalFn& avu = a.at(v, u);
          if (avu.is_zero()) continue;
          auto [jt, fresh] = rem.try_emplace(u);
          jt->second -= coeff * avu;
        }
      }
    }
    return t;
  }
  // D tables: tau_w = sum_v d_{w,v} Y_{+-v}
  {
    // Expand Y_{+-v} in the delta basis first.
    DLKind ykind = DLKind::Y;
    std::vector<std::map<int, RationalFn>> ydelta(N);
    for (int v = 0; v < N; ++v) {
      GroupAlgElt z = GroupAlgElt::delta(rs, 0);
      for (uint8_t i : W.word(v)) z = z * demazure_lusztig(rs, ykind, i, plus ? +1 : -1);
      for (const auto& [u, p] : z.coeffs()) ydelta[v][u] = p;
    }
    std::vector<int> order(N);
    for (int i = 0; i < N; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return W.length(x) > W.length(y); });
    for (int w = 0; w < N; ++w) {
      GroupAlgElt z = hecke_word(rs, tau, w);
      std::map<int, RationalFn> rem;
      for (const auto& [u, p] : z.coeffs()) rem[u] = p;
      for (int v : order) {
        auto it = rem.find(v);
        if (it == rem.end() || it->second.is_zero()) continue;
        RationalFn coeff = it->second / ydelta[v].at(v);
        t.entry[w][v] = coeff;
        for (const auto& [u, p] : ydelta[v]) {
          auto [jt, fresh] = rem.try_emplace(u);
          jt->second -= coeff * p;
        }
      }
    }
    return t;
  }
}

std::map<int, RationalFn> HeckeContext::convert(const GroupAlgElt& z, DLKind target) const {
  const WeylGroup& W = rs_->weyl();
  const int N = W.size();
  BasisFamily f;
  switch (target) {
    case DLKind::TauPlus: f = BasisFamily::BPlus; break;
    case DLKind::TauMinus: f = BasisFamily::BMinus; break;
    case DLKind::Y: f = BasisFamily::DPlus; break;
    default:
      throw std::runtime_error("convert: unsupported target basis");
  }
  // Expand delta_w = sum b_{w,v} tau_v (resp. the Y analogue via the
  // triangular solve below), then substitute into z = sum c_w delta_w.
  std::map<int, RationalFn> out;
  if (target == DLKind::TauPlus || target == DLKind::TauMinus) {
    const TransitionData& b = table(f);
    for (const auto& [w, c] : z.coeffs())
      for (int v = 0; v < N; ++v) {
        if (b.at(w, v).is_zero()) continue;
        auto [it, fresh] = out.try_emplace(v);
        it->second += c * b.at(w, v);
      }
    for (auto it = out.begin(); it != out.end();)
      it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  }
  // target Y: solve directly against Y-expansions
  std::vector<std::map<int, RationalFn>> ydelta(N);
  for (int v = 0; v < N; ++v) {
    GroupAlgElt y = hecke_word(*rs_, DLKind::Y, v);
    for (const auto& [u, p] : y.coeffs()) ydelta[v][u] = p;
  }
  std::map<int, RationalFn> rem;
  for (const auto& [u, p] : z.coeffs()) rem[u] = p;
  std::vector<int> order(N);
  for (int i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return W.length(x) > W.length(y); });
  for (int v : order) {
    auto it = rem.find(v);
    if (it == rem.end() || it->second.is_zero()) continue;
    RationalFn coeff = it->second / ydelta[v].at(v);
    out[v] = coeff;
    for (const auto& [u, p] : ydelta[v]) {
      auto [jt, fresh] = rem.try_emplace(u);
      jt->second -= coeff * p;
    }
  }
  return out;
}

}  // namespace kstab
