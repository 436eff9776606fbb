#include "kstab/exactring.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace kstab {

// ---------------------------------------------------------------------------
// ExpKey

bool ExpKey::is_zero() const { return qh == 0 && weight_is_zero(); }

bool ExpKey::weight_is_zero() const {
  for (int16_t c : w)
    if (c != 0) return false;
  return true;
}

ExpKey ExpKey::operator+(const ExpKey& o) const {
  ExpKey r;
  r.qh = qh + o.qh;
  for (int i = 0; i < kMaxRank; ++i) r.w[i] = int16_t(w[i] + o.w[i]);
  return r;
}

ExpKey ExpKey::operator-(const ExpKey& o) const {
  ExpKey r;
  r.qh = qh - o.qh;
  for (int i = 0; i < kMaxRank; ++i) r.w[i] = int16_t(w[i] - o.w[i]);
  return r;
}

ExpKey ExpKey::negated() const {
  ExpKey r;
  r.qh = -qh;
  for (int i = 0; i < kMaxRank; ++i) r.w[i] = int16_t(-w[i]);
  return r;
}

ExpKey qhalf_exp(int32_t k) {
  ExpKey e;
  e.qh = k;
  return e;
}

ExpKey weight_exp(const std::vector<int>& halves) {
  ExpKey e;
  if (halves.size() > size_t(ExpKey::kMaxRank))
    throw std::runtime_error("weight_exp: rank exceeds kMaxRank");
  for (size_t i = 0; i < halves.size(); ++i) e.w[i] = int16_t(halves[i]);
  return e;
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly LaurentPoly::constant(Int c) {
  LaurentPoly p;
  if (c != 0) p.t_.emplace_back(ExpKey{}, std::move(c));
  return p;
}

LaurentPoly LaurentPoly::monomial(Int c, const ExpKey& e) {
  LaurentPoly p;
  if (c != 0) p.t_.emplace_back(e, std::move(c));
  return p;
}

bool LaurentPoly::is_one() const {
  return t_.size() == 1 && t_[0].first.is_zero() && t_[0].second == 1;
}

bool LaurentPoly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_[0].first.is_zero());
}

std::optional<std::pair<Int, ExpKey>> LaurentPoly::as_monomial() const {
  if (t_.size() != 1) return std::nullopt;
  return std::make_pair(t_[0].second, t_[0].first);
}

Int LaurentPoly::coeff(const ExpKey& e) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), e,
                             [](const auto& a, const ExpKey& k) { return a.first < k; });
  if (it != t_.end() && it->first == e) return it->second;
  return 0;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r;
  r.t_.reserve(t_.size() + o.t_.size());
  auto a = t_.begin(), b = o.t_.begin();
  while (a != t_.end() && b != o.t_.end()) {
    if (a->first < b->first)
      r.t_.push_back(*a++);
    else if (b->first < a->first)
      r.t_.push_back(*b++);
    else {
      Int c = a->second + b->second;
      if (c != 0) r.t_.emplace_back(a->first, std::move(c));
      ++a, ++b;
    }
  }
  r.t_.insert(r.t_.end(), a, t_.end());
  r.t_.insert(r.t_.end(), b, o.t_.end());
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.t_) c = -c;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (t_.empty() || o.t_.empty()) return {};
  if (auto m = o.as_monomial()) return times_monomial(m->first, m->second);
  if (auto m = as_monomial()) return o.times_monomial(m->first, m->second);
  std::map<ExpKey, Int> acc;
  for (const auto& [ea, ca] : t_)
    for (const auto& [eb, cb] : o.t_) {
      Int prod = ca * cb;
      auto [it, fresh] = acc.emplace(ea + eb, prod);
      if (!fresh) it->second += prod;
    }
  LaurentPoly r;
  r.t_.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (c != 0) r.t_.emplace_back(e, std::move(c));
  return r;
}

LaurentPoly LaurentPoly::times_monomial(const Int& c, const ExpKey& e) const {
  LaurentPoly r;
  if (c == 0) return r;
  r.t_.reserve(t_.size());
  for (const auto& [ea, ca] : t_) r.t_.emplace_back(ea + e, ca * c);
  return r;
}

LaurentPoly LaurentPoly::times_int(const Int& c) const {
  return times_monomial(c, ExpKey{});
}

LaurentPoly LaurentPoly::map_exponents(
    const std::function<ExpKey(const ExpKey&)>& f) const {
  std::map<ExpKey, Int> acc;
  for (const auto& [e, c] : t_) {
    auto [it, fresh] = acc.emplace(f(e), c);
    if (!fresh) it->second += c;
  }
  LaurentPoly r;
  for (auto& [e, c] : acc)
    if (c != 0) r.t_.emplace_back(e, std::move(c));
  return r;
}

void LaurentPoly::add_term(const ExpKey& e, const Int& c) {
  if (c == 0) return;
  auto it = std::lower_bound(t_.begin(), t_.end(), e,
                             [](const auto& a, const ExpKey& k) { return a.first < k; });
  if (it != t_.end() && it->first == e) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  } else {
    t_.emplace(it, e, c);
  }
}

namespace {

std::string half_to_string(int h) {
  if (h % 2 == 0) return std::to_string(h / 2);
  return std::to_string(h) + "/2";
}

std::string exp_to_string(const ExpKey& e, int rank) {
  std::string s;
  if (e.qh != 0) {
    s += "q^{" + half_to_string(e.qh) + "}";
  }
  if (!e.weight_is_zero()) {
    if (!s.empty()) s += "*";
    s += "e^(";
    for (int i = 0; i < rank; ++i) {
      if (i) s += ",";
      s += half_to_string(e.w[i]);
    }
    s += ")";
  }
  return s;
}

}  // namespace

std::string LaurentPoly::to_string(int rank) const {
  if (t_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : t_) {
    Int a = c;
    if (first) {
      if (a < 0) {
        s += "-";
        a = -a;
      }
    } else {
      s += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    }
    std::string mono = exp_to_string(e, rank);
    if (mono.empty()) {
      s += a.str();
    } else {
      if (a != 1) s += a.str() + "*";
      s += mono;
    }
    first = false;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Atoms and exact division

bool atom_is_canonical(const ExpKey& m) {
  for (int i = 0; i < ExpKey::kMaxRank; ++i) {
    if (m.w[i] > 0) return true;
    if (m.w[i] < 0) return false;
  }
  return m.qh > 0;
}

std::pair<Atom, LaurentPoly> canonical_atom(const ExpKey& m) {
  if (m.is_zero()) throw std::runtime_error("canonical_atom: zero atom (1-1) rejected");
  if (atom_is_canonical(m)) return {Atom{m}, LaurentPoly::one()};
  // 1 - X^m = -X^m (1 - X^{-m})
  return {Atom{m.negated()}, LaurentPoly::monomial(-1, m)};
}

LaurentPoly Atom::to_poly() const {
  LaurentPoly p = LaurentPoly::one();
  p.add_term(m, -1);
  return p;
}

std::optional<LaurentPoly> exact_divide(const LaurentPoly& p, const Atom& f) {
  if (f.m.is_zero()) throw std::runtime_error("exact_divide: zero divisor atom");
  if (p.is_zero()) return LaurentPoly{};

  // Group the support of p into cosets of Z*m.  Within a coset with positions
  // k, p = (1 - X^m) g forces g_k = sum_{j <= k} c_j and total sum zero.
  // Locate the first nonzero entry of m to compute the coset position.
  int pivot = -1;  // -1 means the q-exponent
  int pivot_val = 0;
  for (int i = 0; i < ExpKey::kMaxRank; ++i)
    if (f.m.w[i] != 0) {
      pivot = i;
      pivot_val = f.m.w[i];
      break;
    }
  if (pivot < 0) pivot_val = f.m.qh;

  auto floordiv = [](long long a, long long b) {
    long long q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
  };

  struct Entry {
    long long k;
    Int c;
  };
  std::map<ExpKey, std::vector<Entry>> cosets;
  for (const auto& [e, c] : p.terms()) {
    long long num = pivot < 0 ? e.qh : e.w[pivot];
    long long k = floordiv(num, pivot_val);
    ExpKey base = e;
    // base = e - k * m
    base.qh = int32_t(base.qh - k * f.m.qh);
    for (int i = 0; i < ExpKey::kMaxRank; ++i)
      base.w[i] = int16_t(base.w[i] - k * f.m.w[i]);
    // The remainder along the pivot may still be a multiple inside the coset
    // when other coordinates differ; the base key disambiguates.
    cosets[base].push_back({k, c});
  }

  LaurentPoly g;
  for (auto& [base, entries] : cosets) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.k < b.k; });
    Int run = 0;
    for (size_t i = 0; i < entries.size(); ++i) {
      run += entries[i].c;
      if (run != 0) {
        // the partial sum occupies every position from entries[i].k up to the
        // next support position (exclusive)
        if (i + 1 == entries.size()) return std::nullopt;  // nonzero tail
        for (long long k = entries[i].k; k < entries[i + 1].k; ++k) {
          ExpKey e = base;
          e.qh = int32_t(e.qh + k * f.m.qh);
          for (int j = 0; j < ExpKey::kMaxRank; ++j)
            e.w[j] = int16_t(e.w[j] + k * f.m.w[j]);
          g.add_term(e, run);
        }
      }
    }
    if (run != 0) return std::nullopt;
  }
  return g;
}

std::optional<LaurentPoly> exact_divide_general(const LaurentPoly& p,
                                                const LaurentPoly& d) {
  if (d.is_zero()) throw std::runtime_error("exact_divide_general: zero divisor");
  if (p.is_zero()) return LaurentPoly{};
  if (auto m = d.as_monomial()) {
    if (m->first == 1 || m->first == -1)
      return p.times_monomial(m->first, m->second.negated());
    LaurentPoly shifted = p.times_monomial(1, m->second.negated());
    LaurentPoly out;
    for (const auto& [e, c] : shifted.terms()) {
      if (c % m->first != 0) return std::nullopt;
      out.add_term(e, c / m->first);
    }
    return out;
  }
  // Laurent long division by the ShortLex-largest term of d.
  const auto& lead = d.terms().back();
  LaurentPoly r = p, g;
  size_t cap = 4 * p.term_count() * d.term_count() + 64;
  while (!r.is_zero()) {
    if (cap-- == 0) return std::nullopt;
    const auto& rl = r.terms().back();
    if (rl.second % lead.second != 0) return std::nullopt;
    Int c = rl.second / lead.second;
    ExpKey e = rl.first - lead.first;
    g.add_term(e, c);
    r = r - d.times_monomial(c, e);
  }
  return g;
}

// ---------------------------------------------------------------------------
// RationalFn

RationalFn::RationalFn(int c) { num_ = LaurentPoly::constant(c); }

RationalFn RationalFn::from_poly(LaurentPoly p) {
  RationalFn r;
  r.num_ = std::move(p);
  return r;
}

RationalFn RationalFn::from_int(const Int& c) { return from_poly(LaurentPoly::constant(c)); }

RationalFn RationalFn::from_rat(const Rat& c) {
  RationalFn r;
  r.num_ = LaurentPoly::constant(numerator(c));
  r.res_ = LaurentPoly::constant(denominator(c));
  r.normalize();
  return r;
}

RationalFn RationalFn::monomial(Int c, const ExpKey& e) {
  return from_poly(LaurentPoly::monomial(std::move(c), e));
}

RationalFn RationalFn::q_power(int32_t k) { return monomial(1, qhalf_exp(k)); }

RationalFn RationalFn::fraction(LaurentPoly num, const std::vector<ExpKey>& atom_exps) {
  RationalFn r;
  r.num_ = std::move(num);
  for (const ExpKey& m : atom_exps) {
    auto [atom, unit] = canonical_atom(m);
    // 1/(1 - X^m) = (1/u) * 1/(1 - X^{m'}), so divide the numerator by u.
    if (!unit.is_one()) {
      auto mono = unit.as_monomial();
      r.num_ = r.num_.times_monomial(mono->first, mono->second.negated());
    }
    auto it = std::lower_bound(
        r.atoms_.begin(), r.atoms_.end(), atom,
        [](const auto& a, const Atom& k) { return a.first < k; });
    if (it != r.atoms_.end() && it->first == atom)
      it->second++;
    else
      r.atoms_.emplace(it, atom, 1);
  }
  r.normalize();
  return r;
}

LaurentPoly RationalFn::den_poly() const {
  LaurentPoly d = res_;
  for (const auto& [a, mult] : atoms_)
    for (int i = 0; i < mult; ++i) d = d * a.to_poly();
  return d;
}

std::optional<LaurentPoly> RationalFn::as_poly() const {
  if (atoms_.empty() && res_.is_one()) return num_;
  // last-resort: try to clear the residual too
  RationalFn c = *this;
  c.normalize();
  if (c.atoms_.empty() && c.res_.is_one()) return c.num_;
  return std::nullopt;
}

void RationalFn::normalize() {
  if (num_.is_zero()) {
    atoms_.clear();
    res_ = LaurentPoly::one();
    return;
  }
  // Cancel atoms into the numerator.
  for (auto it = atoms_.begin(); it != atoms_.end();) {
    bool erased = false;
    while (it->second > 0) {
      auto q = exact_divide(num_, it->first);
      if (!q) break;
      num_ = std::move(*q);
      if (--it->second == 0) {
        it = atoms_.erase(it);
        erased = true;
        break;
      }
    }
    if (!erased) ++it;
  }
  // Normalize the residual: pull its monomial content and sign into num.
  if (!res_.is_one() && !res_.is_zero()) {
    if (auto q = exact_divide_general(num_, res_)) {
      num_ = std::move(*q);
      res_ = LaurentPoly::one();
    } else {
      const auto& rl = res_.terms().front();
      if (!rl.first.is_zero()) {
        res_ = res_.times_monomial(1, rl.first.negated());
        num_ = num_.times_monomial(1, rl.first.negated());
      }
      if (res_.terms().front().second < 0) {
        res_ = -res_;
        num_ = -num_;
      }
    }
  }
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
  RationalFn r;
  r.num_ = num_ * o.num_;
  if (r.num_.is_zero()) return r;
  r.atoms_ = atoms_;
  for (const auto& [a, mult] : o.atoms_) {
    auto it = std::lower_bound(
        r.atoms_.begin(), r.atoms_.end(), a,
        [](const auto& x, const Atom& k) { return x.first < k; });
    if (it != r.atoms_.end() && it->first == a)
      it->second += mult;
    else
      r.atoms_.emplace(it, a, mult);
  }
  if (res_.is_one())
    r.res_ = o.res_;
  else if (o.res_.is_one())
    r.res_ = res_;
  else
    r.res_ = res_ * o.res_;
  r.normalize();
  return r;
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  // Common denominator: max multiplicity per atom.
  RationalFn r;
  LaurentPoly extra_a = LaurentPoly::one(), extra_b = LaurentPoly::one();
  auto ia = atoms_.begin();
  auto ib = o.atoms_.begin();
  while (ia != atoms_.end() || ib != o.atoms_.end()) {
    if (ib == o.atoms_.end() || (ia != atoms_.end() && ia->first < ib->first)) {
      r.atoms_.push_back(*ia);
      for (int i = 0; i < ia->second; ++i) extra_b = extra_b * ia->first.to_poly();
      ++ia;
    } else if (ia == atoms_.end() || ib->first < ia->first) {
      r.atoms_.push_back(*ib);
      for (int i = 0; i < ib->second; ++i) extra_a = extra_a * ib->first.to_poly();
      ++ib;
    } else {
      int m = std::max(ia->second, ib->second);
      r.atoms_.emplace_back(ia->first, m);
      for (int i = 0; i < m - ia->second; ++i) extra_a = extra_a * ia->first.to_poly();
      for (int i = 0; i < m - ib->second; ++i) extra_b = extra_b * ib->first.to_poly();
      ++ia, ++ib;
    }
  }
  if (res_ == o.res_) {
    r.res_ = res_;
    r.num_ = num_ * extra_a + o.num_ * extra_b;
  } else {
    r.res_ = res_ * o.res_;
    r.num_ = num_ * extra_a * o.res_ + o.num_ * extra_b * res_;
  }
  r.normalize();
  return r;
}

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFn RationalFn::operator-(const RationalFn& o) const { return *this + (-o); }

RationalFn RationalFn::inverse() const {
  if (is_zero()) throw std::runtime_error("RationalFn: division by zero");
  // new numerator = old denominator
  RationalFn r;
  r.num_ = den_poly();
  // factor the old numerator into unit * atoms * rest
  LaurentPoly n = num_;
  // monomial content: divide by the ShortLex-least term's monomial if helpful
  {
    const auto& t0 = n.terms().front();
    if (!t0.first.is_zero()) {
      r.num_ = r.num_.times_monomial(1, t0.first.negated());
      n = n.times_monomial(1, t0.first.negated());
    }
  }
  bool progress = true;
  while (progress && !n.is_one() && n.term_count() > 1) {
    progress = false;
    // candidate atoms from exponent differences with the least term
    const auto& t0 = n.terms().front();
    std::vector<ExpKey> cands;
    for (const auto& [e, c] : n.terms()) {
      if (e == t0.first) continue;
      cands.push_back(e - t0.first);
    }
    for (const ExpKey& m : cands) {
      auto [atom, unit] = canonical_atom(m);
      if (auto q = exact_divide(n, atom)) {
        n = std::move(*q);
        auto it = std::lower_bound(
            r.atoms_.begin(), r.atoms_.end(), atom,
            [](const auto& x, const Atom& k) { return x.first < k; });
        if (it != r.atoms_.end() && it->first == atom)
          it->second++;
        else
          r.atoms_.emplace(it, atom, 1);
        progress = true;
        break;
      }
    }
  }
  if (auto m = n.as_monomial()) {
    // invert the leftover monomial / integer constant
    if (m->first == 1 || m->first == -1) {
      r.num_ = r.num_.times_monomial(m->first, m->second.negated());
    } else {
      r.num_ = r.num_.times_monomial(1, m->second.negated());
      r.res_ = r.res_ * LaurentPoly::constant(m->first < 0 ? -m->first : m->first);
      if (m->first < 0) r.num_ = -r.num_;
    }
  } else {
    r.res_ = r.res_ * n;
  }
  r.normalize();
  return r;
}

RationalFn RationalFn::operator/(const RationalFn& o) const { return *this * o.inverse(); }

RationalFn RationalFn::map_exponents(
    const std::function<ExpKey(const ExpKey&)>& f) const {
  RationalFn r;
  r.num_ = num_.map_exponents(f);
  r.res_ = res_.is_one() ? res_ : res_.map_exponents(f);
  for (const auto& [a, mult] : atoms_) {
    auto [atom, unit] = canonical_atom(f(a.m));
    if (!unit.is_one()) {
      auto mono = unit.as_monomial();
      // (1 - X^{f(m)}) = u (1 - X^{m'}) in the denominator: divide num by u^mult
      for (int i = 0; i < mult; ++i)
        r.num_ = r.num_.times_monomial(mono->first, mono->second.negated());
    }
    auto it = std::lower_bound(
        r.atoms_.begin(), r.atoms_.end(), atom,
        [](const auto& x, const Atom& k) { return x.first < k; });
    if (it != r.atoms_.end() && it->first == atom)
      it->second += mult;
    else
      r.atoms_.emplace(it, atom, mult);
  }
  r.normalize();
  return r;
}

RationalFn RationalFn::negate_weights() const {
  return map_exponents([](const ExpKey& e) {
    ExpKey r = e;
    for (int i = 0; i < ExpKey::kMaxRank; ++i) r.w[i] = int16_t(-r.w[i]);
    return r;
  });
}

RationalFn RationalFn::invert_q() const {
  return map_exponents([](const ExpKey& e) {
    ExpKey r = e;
    r.qh = -r.qh;
    return r;
  });
}

namespace {

// Random full-support evaluation used as an equality prefilter.  Values are
// assigned directly to e^{w_i/2} and q^{1/2}, which is a ring homomorphism.
struct FastPoint {
  std::array<Rat, ExpKey::kMaxRank> v;
  Rat q;
};

Rat rat_pow(const Rat& b, long long e) {
  if (e == 0) return Rat(1);
  Rat base = e > 0 ? b : Rat(1) / b;
  long long n = e > 0 ? e : -e;
  Rat acc(1);
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

Rat eval_poly_at(const LaurentPoly& p, const FastPoint& pt) {
  Rat s(0);
  for (const auto& [e, c] : p.terms()) {
    Rat m = rat_pow(pt.q, e.qh);
    for (int i = 0; i < ExpKey::kMaxRank; ++i)
      if (e.w[i] != 0) m *= rat_pow(pt.v[i], e.w[i]);
    s += Rat(c) * m;
  }
  return s;
}

}  // namespace

bool RationalFn::equals(const RationalFn& o) const {
  if (num_.is_zero()) return o.num_.is_zero();
  if (o.num_.is_zero()) return false;
  // Cancel shared atoms, then cross-multiply.
  std::vector<std::pair<Atom, int>> da, db;
  {
    auto ia = atoms_.begin();
    auto ib = o.atoms_.begin();
    while (ia != atoms_.end() || ib != o.atoms_.end()) {
      if (ib == o.atoms_.end() || (ia != atoms_.end() && ia->first < ib->first))
        da.push_back(*ia++);
      else if (ia == atoms_.end() || ib->first < ia->first)
        db.push_back(*ib++);
      else {
        int m = std::min(ia->second, ib->second);
        if (ia->second > m) da.emplace_back(ia->first, ia->second - m);
        if (ib->second > m) db.emplace_back(ib->first, ib->second - m);
        ++ia, ++ib;
      }
    }
  }
  auto expand = [](const std::vector<std::pair<Atom, int>>& atoms,
                   const LaurentPoly& res) {
    LaurentPoly d = res;
    for (const auto& [a, mult] : atoms)
      for (int i = 0; i < mult; ++i) d = d * a.to_poly();
    return d;
  };
  // Fast path: random evaluation can only prove inequality.
  if (num_.term_count() + o.num_.term_count() > 16) {
    Rng rng(0xc0ffee123457ULL);
    for (int trial = 0; trial < 3; ++trial) {
      FastPoint pt;
      for (auto& v : pt.v) v = Rat(rng.next_int(2, 19), rng.next_int(2, 19) + 17);
      pt.q = Rat(rng.next_int(2, 23), rng.next_int(29, 37));
      Rat la = eval_poly_at(expand(da, LaurentPoly::one()), pt) *
               eval_poly_at(res_.is_one() ? LaurentPoly::one() : res_, pt);
      Rat lb = eval_poly_at(expand(db, LaurentPoly::one()), pt) *
               eval_poly_at(o.res_.is_one() ? LaurentPoly::one() : o.res_, pt);
      if (la == 0 || lb == 0) continue;  // singular point, ignore
      if (eval_poly_at(num_, pt) * lb != eval_poly_at(o.num_, pt) * la) return false;
    }
  }
  LaurentPoly lhs = num_ * expand(db, o.res_);
  LaurentPoly rhs = o.num_ * expand(da, res_);
  return lhs == rhs;
}

std::string RationalFn::to_string(int rank) const {
  if (is_zero()) return "0";
  std::string s = num_.to_string(rank);
  if (atoms_.empty() && res_.is_one()) return s;
  LaurentPoly d = den_poly();
  std::string ds = d.to_string(rank);
  if (num_.term_count() > 1) s = "(" + s + ")";
  return s + " / (" + ds + ")";
}

// ---------------------------------------------------------------------------
// Character evaluation

CharacterAssignment::CharacterAssignment(std::vector<Rat> simple_root_values, Rat q_value)
    : vals_(std::move(simple_root_values)), q_(std::move(q_value)) {
  for (const Rat& v : vals_)
    if (v == 0) throw std::runtime_error("CharacterAssignment: zero value on a simple root");
  if (q_ == 0) throw std::runtime_error("CharacterAssignment: q must be nonzero");
  // exact square root when available
  Int nr = numerator(q_), dr = denominator(q_);
  if (nr > 0) {
    Int ns = boost::multiprecision::sqrt(nr), ds = boost::multiprecision::sqrt(dr);
    if (ns * ns == nr && ds * ds == dr) qhalf_ = Rat(ns, ds);
  }
}

Rat CharacterAssignment::eval_root_coords(const std::vector<Rat>& rc) const {
  Rat out(1);
  for (size_t i = 0; i < rc.size(); ++i) {
    if (rc[i] == 0) continue;
    if (denominator(rc[i]) != 1)
      throw std::runtime_error("character evaluation: exponent not in the root lattice");
    Int n = numerator(rc[i]);
    out *= rat_pow(vals_[i], n.convert_to<long long>());
  }
  return out;
}

Rat CharacterAssignment::eval_qhalf(int32_t k) const {
  if (k % 2 == 0) return rat_pow(q_, k / 2);
  if (!qhalf_)
    throw std::runtime_error("character evaluation: q^{1/2} needed but q is not a perfect square");
  return rat_pow(*qhalf_, k);
}

Rat evaluate_character(
    const RationalFn& x, const CharacterAssignment& tau,
    const std::function<std::vector<Rat>(const ExpKey&)>& fund_to_root, int rank) {
  auto eval_poly = [&](const LaurentPoly& p) {
    Rat s(0);
    for (const auto& [e, c] : p.terms())
      s += Rat(c) * tau.eval_qhalf(e.qh) * tau.eval_root_coords(fund_to_root(e));
    return s;
  };
  Rat den(1);
  for (const auto& [a, mult] : x.den_atoms()) {
    Rat v = Rat(1) - tau.eval_qhalf(a.m.qh) * tau.eval_root_coords(fund_to_root(a.m));
    if (v == 0) {
      LaurentPoly ap = a.to_poly();
      throw std::runtime_error("singular character: denominator atom " +
                               ap.to_string(rank) + " vanishes");
    }
    den *= rat_pow(v, mult);
  }
  if (!x.den_residual().is_one()) {
    Rat v = eval_poly(x.den_residual());
    if (v == 0) throw std::runtime_error("singular character: denominator vanishes");
    den *= v;
  }
  return eval_poly(x.num()) / den;
}

// ---------------------------------------------------------------------------
// Newton polygons

namespace {

// Solves M x = b exactly; returns nullopt if singular/inconsistent.
std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> m,
                                             std::vector<Rat> b) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  std::vector<int> piv_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    std::swap(b[sel], b[r]);
    Rat inv = Rat(1) / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    b[r] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
      b[i] -= f * b[r];
    }
    piv_col.push_back(int(c));
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rat> x(cols, Rat(0));
  for (size_t i = 0; i < piv_col.size(); ++i) x[piv_col[i]] = b[i];
  return x;
}

}  // namespace

bool point_in_hull(const std::vector<Rat>& p, const std::vector<std::vector<Rat>>& pts) {
  const size_t d = p.size();
  for (const auto& s : pts)
    if (s == p) return true;
  if (pts.empty()) return false;
  // Caratheodory: p lies in the hull iff it lies in the hull of some subset of
  // at most d+1 points.  Enumerate subsets of size 2..d+1.
  std::vector<size_t> idx;
  std::function<bool(size_t, size_t)> rec = [&](size_t start, size_t want) -> bool {
    if (idx.size() == want) {
      // solve sum l_i s_i = p, sum l_i = 1, l_i >= 0
      std::vector<std::vector<Rat>> m(d + 1, std::vector<Rat>(want, Rat(0)));
      std::vector<Rat> b(d + 1, Rat(0));
      for (size_t j = 0; j < want; ++j) {
        for (size_t i = 0; i < d; ++i) m[i][j] = pts[idx[j]][i];
        m[d][j] = 1;
      }
      for (size_t i = 0; i < d; ++i) b[i] = p[i];
      b[d] = 1;
      auto sol = solve_linear(m, b);
      if (!sol) return false;
      for (const Rat& l : *sol)
        if (l < 0) return false;
      // check consistency (solve_linear already verified)
      return true;
    }
    for (size_t i = start; i < pts.size(); ++i) {
      idx.push_back(i);
      if (rec(i + 1, want)) return true;
      idx.pop_back();
    }
    return false;
  };
  for (size_t want = 2; want <= d + 1 && want <= pts.size(); ++want) {
    idx.clear();
    if (rec(0, want)) return true;
  }
  return false;
}

NewtonPolygon newton_polygon(const LaurentPoly& x, int rank) {
  if (x.is_zero()) throw std::runtime_error("newton_polygon: zero polynomial rejected");
  std::vector<std::vector<Rat>> pts;
  for (const auto& [e, c] : x.terms()) {
    std::vector<Rat> p(rank);
    for (int i = 0; i < rank; ++i) p[i] = Rat(e.w[i], 2);
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  }
  NewtonPolygon np;
  for (size_t i = 0; i < pts.size(); ++i) {
    std::vector<std::vector<Rat>> others;
    for (size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    if (!point_in_hull(pts[i], others)) np.vertices.push_back(pts[i]);
  }
  std::sort(np.vertices.begin(), np.vertices.end());
  return np;
}

bool hull_contained_in(const NewtonPolygon& inner, const std::vector<Rat>& shift_inner,
                       const NewtonPolygon& outer, const std::vector<Rat>& shift_outer) {
  std::vector<std::vector<Rat>> outer_pts;
  for (const auto& v : outer.vertices) {
    auto p = v;
    for (size_t i = 0; i < p.size(); ++i) p[i] += shift_outer[i];
    outer_pts.push_back(std::move(p));
  }
  for (const auto& v : inner.vertices) {
    auto p = v;
    for (size_t i = 0; i < p.size(); ++i) p[i] += shift_inner[i];
    if (!point_in_hull(p, outer_pts)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Deterministic RNG (splitmix64)

uint64_t Rng::next() {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int64_t Rng::next_int(int64_t lo, int64_t hi) {
  return lo + int64_t(next() % uint64_t(hi - lo + 1));
}

LaurentPoly random_poly(Rng& rng, int rank, int max_terms, int max_exp) {
  LaurentPoly p;
  int n = int(rng.next_int(1, max_terms));
  for (int t = 0; t < n; ++t) {
    ExpKey e;
    e.qh = int32_t(rng.next_int(-max_exp, max_exp));
    for (int i = 0; i < rank; ++i) e.w[i] = int16_t(2 * rng.next_int(-max_exp, max_exp));
    p.add_term(e, Int(rng.next_int(-5, 5)));
  }
  if (p.is_zero()) p.add_term(ExpKey{}, 1);
  return p;
}

RationalFn random_rational(Rng& rng, int rank, int max_terms, int max_exp) {
  LaurentPoly num = random_poly(rng, rank, max_terms, max_exp);
  std::vector<ExpKey> atoms;
  int n = int(rng.next_int(0, 2));
  for (int t = 0; t < n; ++t) {
    ExpKey m;
    m.qh = int32_t(rng.next_int(-1, 1));
    for (int i = 0; i < rank; ++i) m.w[i] = int16_t(2 * rng.next_int(-1, 1));
    if (m.is_zero()) m.qh = 1;
    atoms.push_back(m);
  }
  return RationalFn::fraction(std::move(num), atoms);
}

}  // namespace kstab
