#include "kstab/rootdata.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kstab {

namespace {

constexpr int kMaxGroupSize = 384;

std::vector<std::vector<int>> cartan_from_label(const std::string& label) {
  if (label.size() < 2) throw std::runtime_error("unknown Cartan type label: " + label);
  char fam = label[0];
  int n = 0;
  try {
    n = std::stoi(label.substr(1));
  } catch (...) {
    throw std::runtime_error("unknown Cartan type label: " + label);
  }
  auto base = [&](int rank) {
    std::vector<std::vector<int>> c(rank, std::vector<int>(rank, 0));
    for (int i = 0; i < rank; ++i) c[i][i] = 2;
    for (int i = 0; i + 1 < rank; ++i) c[i][i + 1] = c[i + 1][i] = -1;
    return c;
  };
  // Convention: C[i][j] = <alpha_j, alpha_i^vee>.
  if (fam == 'A' && n >= 1 && n <= 4) return base(n);
  if (fam == 'B' && n >= 2 && n <= 4) {
    auto c = base(n);
    c[n - 1][n - 2] = -2;  // <alpha_{n-1}, alpha_n^vee> = -2 (alpha_n short)
    return c;
  }
  if (fam == 'C' && n >= 2 && n <= 4) {
    auto c = base(n);
    c[n - 2][n - 1] = -2;
    return c;
  }
  if (fam == 'D' && n == 4) {
    auto c = base(3);
    c.resize(4);
    for (auto& row : c) row.resize(4, 0);
    c[3][3] = 2;
    c[2][3] = c[3][2] = 0;
    c[1][3] = c[3][1] = -1;  // node 4 attached to node 2
    return c;
  }
  if (fam == 'G' && n == 2) return {{2, -1}, {-3, 2}};
  throw std::runtime_error("unknown or unsupported Cartan type label: " + label);
}

void validate_cartan(const std::vector<std::vector<int>>& c) {
  const int n = int(c.size());
  if (n == 0) throw std::runtime_error("invalid Cartan matrix: empty");
  for (int i = 0; i < n; ++i) {
    if (int(c[i].size()) != n) throw std::runtime_error("invalid Cartan matrix: not square");
    if (c[i][i] != 2)
      throw std::runtime_error("invalid Cartan matrix: diagonal entry != 2 at row " +
                               std::to_string(i + 1));
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (c[i][j] > 0)
        throw std::runtime_error("invalid Cartan matrix: positive off-diagonal entry at (" +
                                 std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      if ((c[i][j] == 0) != (c[j][i] == 0))
        throw std::runtime_error("invalid Cartan matrix: zero pattern not symmetric at (" +
                                 std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  }
  // Symmetrize: d_i c_ij = d_j c_ji with d_i > 0; BFS over the Coxeter graph.
  std::vector<Rat> d(n, Rat(0));
  for (int start = 0; start < n; ++start) {
    if (d[start] != 0) continue;
    d[start] = 1;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (i == j || c[i][j] == 0) continue;
        Rat want = d[i] * c[i][j] / c[j][i];
        if (d[j] == 0) {
          d[j] = want;
          stack.push_back(j);
        } else if (d[j] != want) {
          throw std::runtime_error("non-finite type: Cartan matrix is not symmetrizable");
        }
      }
    }
  }
  // Leading principal minors of (d_i c_ij) must be positive (finite type).
  std::vector<std::vector<Rat>> b(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[i][j] = d[i] * c[i][j];
  for (int k = 1; k <= n; ++k) {
    // determinant of the leading k x k block by fraction-free elimination
    std::vector<std::vector<Rat>> m(k, std::vector<Rat>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m[i][j] = b[i][j];
    Rat det(1);
    for (int col = 0; col < k; ++col) {
      int piv = -1;
      for (int r = col; r < k; ++r)
        if (m[r][col] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) {
        det = 0;
        break;
      }
      if (piv != col) {
        std::swap(m[piv], m[col]);
        det = -det;
      }
      det *= m[col][col];
      for (int r = col + 1; r < k; ++r) {
        Rat f = m[r][col] / m[col][col];
        for (int cc = col; cc < k; ++cc) m[r][cc] -= f * m[col][cc];
      }
    }
    if (det <= 0)
      throw std::runtime_error(
          "non-finite type: symmetrized Cartan matrix is not positive definite "
          "(leading principal minor " +
          std::to_string(k) + " is non-positive)");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// RootSystem

std::shared_ptr<const RootSystem> RootSystem::from_label(const std::string& label) {
  auto c = cartan_from_label(label);
  return from_cartan(std::move(c), label);
}

std::shared_ptr<const RootSystem> RootSystem::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read Cartan matrix file " + path);
  std::vector<std::vector<int>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<int> row;
    int v;
    while (ls >> v) row.push_back(v);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return from_cartan(std::move(rows), "file:" + path);
}

std::shared_ptr<const RootSystem> RootSystem::from_spec(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) return from_file(spec.substr(5));
  return from_label(spec);
}

std::shared_ptr<const RootSystem> RootSystem::from_cartan(
    std::vector<std::vector<int>> cartan, std::string name) {
  validate_cartan(cartan);
  auto rs = std::shared_ptr<RootSystem>(new RootSystem());
  rs->cartan_ = std::move(cartan);
  rs->rank_ = int(rs->cartan_.size());
  rs->name_ = std::move(name);
  rs->build();
  return rs;
}

void RootSystem::build() {
  const int n = rank_;
  if (n > ExpKey::kMaxRank / 2)
    throw std::runtime_error("rank too large for the exponent representation");

  // Enumerate roots by closure under simple reflections.  A root is stored as
  // (fundamental coords, simple-coroot coords of its coroot).
  std::map<std::vector<int>, int> seen;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> all;
  for (int i = 0; i < n; ++i) {
    std::vector<int> coords(n), cov(n, 0);
    for (int r = 0; r < n; ++r) coords[r] = cartan_[r][i];
    cov[i] = 1;
    seen[coords] = int(all.size());
    all.emplace_back(coords, cov);
  }
  for (size_t head = 0; head < all.size(); ++head) {
    for (int i = 0; i < n; ++i) {
      auto [coords, cov] = all[head];
      // s_i(beta) = beta - <beta, alpha_i^vee> alpha_i
      int pair_i = coords[i];
      std::vector<int> nc = coords;
      for (int r = 0; r < n; ++r) nc[r] -= pair_i * cartan_[r][i];
      // coroot side: s_i(beta^vee) = beta^vee - <alpha_i, beta^vee> alpha_i^vee
      int pair_co = 0;
      for (int r = 0; r < n; ++r) pair_co += cartan_[r][i] * cov[r];
      std::vector<int> ncov = cov;
      ncov[i] -= pair_co;
      if (!seen.count(nc)) {
        seen[nc] = int(all.size());
        all.emplace_back(nc, ncov);
        if (all.size() > 2000) throw std::runtime_error("non-finite type: root closure diverges");
      }
    }
  }
  // Order: positive roots first (positive = nonneg simple-root coordinates;
  // equivalently reachable with positive height), then negatives.  Height via
  // coroot pairing with rho is unreliable; use root coordinates instead:
  // compute simple-root coordinates by solving C x = coords.
  // For ordering we only need a sign; positives have all root coords >= 0.
  std::vector<int> pos_idx, neg_idx;
  std::vector<std::vector<Rat>> root_coords(all.size());
  {
    // invert the Cartan matrix exactly
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(2 * n, Rat(0)));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m[i][j] = cartan_[i][j];
      m[i][n + i] = 1;
    }
    for (int col = 0; col < n; ++col) {
      int piv = col;
      while (m[piv][col] == 0) ++piv;
      std::swap(m[piv], m[col]);
      Rat inv = Rat(1) / m[col][col];
      for (int j = 0; j < 2 * n; ++j) m[col][j] *= inv;
      for (int r = 0; r < n; ++r) {
        if (r == col || m[r][col] == 0) continue;
        Rat f = m[r][col];
        for (int j = 0; j < 2 * n; ++j) m[r][j] -= f * m[col][j];
      }
    }
    cartan_inv_.assign(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cartan_inv_[i][j] = m[i][n + j];
  }
  for (size_t k = 0; k < all.size(); ++k) {
    std::vector<Rat> rc(n, Rat(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rc[i] += cartan_inv_[i][j] * all[k].first[j];
    root_coords[k] = rc;
    bool pos = true;
    for (const Rat& v : rc)
      if (v < 0) pos = false;
    (pos ? pos_idx : neg_idx).push_back(int(k));
  }
  if (pos_idx.size() != neg_idx.size())
    throw std::runtime_error("internal error: root count mismatch");
  // sort positives by (height, coords) for a stable order; simple roots first
  auto height = [&](int k) {
    Rat h(0);
    for (const Rat& v : root_coords[k]) h += v;
    return h;
  };
  // Sort by height with a descending tie-break on simple-root coordinates, so
  // the height-one block lists the simple roots as alpha_1, alpha_2, ...
  std::sort(pos_idx.begin(), pos_idx.end(), [&](int a, int b) {
    if (height(a) != height(b)) return height(a) < height(b);
    return root_coords[a] > root_coords[b];
  });
  npos_ = int(pos_idx.size());
  roots_.clear();
  coroots_.clear();
  std::map<std::vector<int>, int> final_index;
  for (int k : pos_idx) {
    final_index[all[k].first] = int(roots_.size());
    roots_.push_back(all[k].first);
    coroots_.push_back(all[k].second);
  }
  for (int k : pos_idx) {
    std::vector<int> negc = all[k].first;
    for (int& v : negc) v = -v;
    std::vector<int> negcov = all[k].second;
    for (int& v : negcov) v = -v;
    final_index[negc] = int(roots_.size());
    roots_.push_back(negc);
    coroots_.push_back(negcov);
  }
  neg_of_.resize(roots_.size());
  for (size_t k = 0; k < roots_.size(); ++k) {
    std::vector<int> negc = roots_[k];
    for (int& v : negc) v = -v;
    neg_of_[k] = final_index.at(negc);
  }
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < n; ++r)
      if (roots_[i][r] != cartan_[r][i])
        throw std::runtime_error("internal error: simple roots not leading the root table");
  }
  rho_.assign(n, 1);

  weyl_.build(*this);
  if (weyl_.size() > kMaxGroupSize)
    throw std::runtime_error("Weyl group too large for this engine (|W| > " +
                             std::to_string(kMaxGroupSize) + ")");
}

int RootSystem::root_index(const std::vector<int>& fund_coords) const {
  for (size_t k = 0; k < roots_.size(); ++k)
    if (roots_[k] == fund_coords) return int(k);
  return -1;
}

Rat RootSystem::pairing(const std::vector<Rat>& lam, int idx) const {
  Rat s(0);
  const auto& cov = coroots_[idx];
  for (int j = 0; j < rank_; ++j) s += lam[j] * cov[j];
  return s;
}

std::shared_ptr<const RootSystem> RootSystem::dual() const {
  if (!dual_cache_) {
    std::vector<std::vector<int>> t(rank_, std::vector<int>(rank_));
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) t[i][j] = cartan_[j][i];
    dual_cache_ = from_cartan(std::move(t), name_ + "^");
  }
  return dual_cache_;
}

std::vector<Rat> RootSystem::fund_halves_to_root_coords(const ExpKey& e) const {
  std::vector<Rat> rc(rank_, Rat(0));
  for (int i = 0; i < rank_; ++i) {
    for (int j = 0; j < rank_; ++j)
      if (e.w[j] != 0) rc[i] += cartan_inv_[i][j] * Rat(e.w[j], 2);
  }
  return rc;
}

ExpKey RootSystem::root_exp(int idx, int times) const {
  ExpKey e;
  for (int i = 0; i < rank_; ++i) e.w[i] = int16_t(2 * times * roots_[idx][i]);
  return e;
}

std::vector<Rat> reflect_weight(const RootSystem& rs, int i, const std::vector<Rat>& lam) {
  std::vector<Rat> out = lam;
  Rat p = lam[i];  // <lambda, alpha_i^vee> is the i-th fundamental coordinate
  for (int r = 0; r < rs.rank(); ++r) out[r] -= p * rs.cartan()[r][i];
  return out;
}

// ---------------------------------------------------------------------------
// WeylGroup

void WeylGroup::build(const RootSystem& rs) {
  rank_ = rs.rank();
  const int nroots = rs.num_roots();

  // permutation of the root list induced by each simple reflection
  std::vector<std::vector<int>> sperm(rank_, std::vector<int>(nroots));
  for (int i = 0; i < rank_; ++i) {
    for (int r = 0; r < nroots; ++r) {
      std::vector<int> c = rs.root(r);
      int pair_i = c[i];
      for (int row = 0; row < rank_; ++row) c[row] -= pair_i * rs.cartan()[row][i];
      sperm[i][r] = rs.root_index(c);
    }
  }

  std::map<std::vector<int>, int> index_of;
  std::vector<std::vector<int>> perms;
  auto identity_perm = [&] {
    std::vector<int> p(nroots);
    for (int r = 0; r < nroots; ++r) p[r] = r;
    return p;
  };

  words_.clear();
  perms.push_back(identity_perm());
  index_of[perms[0]] = 0;
  words_.push_back({});

  // BFS by length; within a length level the queue is processed in ShortLex
  // order, so the first word reaching an element is its ShortLex-least
  // reduced word.
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int a : frontier) {
      for (int i = 0; i < rank_; ++i) {
        std::vector<int> p(nroots);
        const auto& pa = perms[a];
        // (a * s_i)(r) = a(s_i(r))
        for (int r = 0; r < nroots; ++r) p[r] = pa[sperm[i][r]];
        auto it = index_of.find(p);
        if (it == index_of.end()) {
          int idx = int(perms.size());
          index_of[p] = idx;
          perms.push_back(std::move(p));
          auto w = words_[a];
          w.push_back(uint8_t(i));
          words_.push_back(std::move(w));
          next.push_back(idx);
        }
      }
      if (perms.size() > 100000) throw std::runtime_error("Weyl group enumeration diverges");
    }
    frontier = std::move(next);
  }

  const int N = int(perms.size());
  root_perm_ = std::move(perms);

  // Re-sort into ShortLex element order (BFS above already emits by length and
  // within a level in parent-then-generator order, which coincides with
  // ShortLex on the canonical words).
  {
    std::vector<int> order(N);
    for (int i = 0; i < N; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      if (words_[x].size() != words_[y].size()) return words_[x].size() < words_[y].size();
      return words_[x] < words_[y];
    });
    std::vector<int> rankof(N);
    for (int i = 0; i < N; ++i) rankof[order[i]] = i;
    std::vector<std::vector<uint8_t>> w2(N);
    std::vector<std::vector<int>> p2(N);
    for (int i = 0; i < N; ++i) {
      w2[rankof[i]] = std::move(words_[i]);
      p2[rankof[i]] = std::move(root_perm_[i]);
    }
    words_ = std::move(w2);
    root_perm_ = std::move(p2);
  }

  simple_.resize(rank_);
  index_of.clear();
  for (int i = 0; i < N; ++i) index_of[root_perm_[i]] = i;
  for (int i = 0; i < rank_; ++i) {
    std::vector<int> p = sperm[i];
    simple_[i] = index_of.at(p);
  }

  right_.assign(N, std::vector<int>(rank_));
  for (int a = 0; a < N; ++a)
    for (int i = 0; i < rank_; ++i) {
      std::vector<int> p(rs.num_roots());
      for (int r = 0; r < rs.num_roots(); ++r) p[r] = root_perm_[a][sperm[i][r]];
      right_[a][i] = index_of.at(p);
    }

  inverse_.assign(N, 0);
  for (int a = 0; a < N; ++a) {
    std::vector<int> p(nroots);
    for (int r = 0; r < nroots; ++r) p[root_perm_[a][r]] = r;
    inverse_[a] = index_of.at(p);
  }

  // matrices on fundamental coordinates
  mats_.assign(N, std::vector<int>(rank_ * rank_, 0));
  for (int a = 0; a < N; ++a) {
    // column j = coords of a(varpi_j)?  We instead apply the word to basis
    // vectors: M_w = M_{i1} ... M_{il} acting on coordinate columns.
    std::vector<std::vector<int>> m(rank_, std::vector<int>(rank_, 0));
    for (int i = 0; i < rank_; ++i) m[i][i] = 1;
    const auto& w = words_[a];
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      int j = *it;
      // apply M_j on the left of m: (M_j x)_i = x_i - x_j C_{ij}
      std::vector<std::vector<int>> nm(rank_, std::vector<int>(rank_, 0));
      for (int col = 0; col < rank_; ++col) {
        for (int i = 0; i < rank_; ++i)
          nm[i][col] = m[i][col] - m[j][col] * rs.cartan()[i][j];
      }
      m = std::move(nm);
    }
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) mats_[a][i * rank_ + j] = m[i][j];
  }

  longest_ = 0;
  for (int a = 0; a < N; ++a)
    if (length(a) > length(longest_)) longest_ = a;

  // inversion sets: Sigma_w = { beta > 0 : w^{-1} beta < 0 }
  inv_sets_.assign(N, {});
  for (int a = 0; a < N; ++a) {
    int ai = inverse_[a];
    for (int r = 0; r < rs.num_positive(); ++r)
      if (root_perm_[ai][r] >= rs.num_positive()) inv_sets_[a].push_back(r);
  }

  // Bruhat order by increasing length of the larger element
  std::vector<int> by_len(N);
  for (int i = 0; i < N; ++i) by_len[i] = i;
  std::sort(by_len.begin(), by_len.end(),
            [&](int x, int y) { return length(x) < length(y); });
  bruhat_.assign(N, std::vector<char>(N, 0));
  for (int w : by_len) {
    if (length(w) == 0) {
      bruhat_[0][w] = 1;
      continue;
    }
    int i = words_[w].back();
    int ws = right_[w][i];
    for (int u = 0; u < N; ++u) {
      int us = right_[u][i];
      bool le;
      if (length(us) < length(u))
        le = bruhat_[us][ws];
      else
        le = bruhat_[u][ws];
      bruhat_[u][w] = le ? 1 : 0;
    }
    bruhat_[w][w] = 1;
  }
}

int WeylGroup::multiply(int a, int b) const {
  int out = a;
  for (uint8_t i : words_[b]) out = right_[out][i];
  return out;
}

ExpKey WeylGroup::act_on_exp(int a, const ExpKey& e) const {
  ExpKey r;
  r.qh = e.qh;
  const int* m = mats_[a].data();
  for (int i = 0; i < rank_; ++i) {
    int acc = 0;
    for (int j = 0; j < rank_; ++j) acc += m[i * rank_ + j] * e.w[j];
    r.w[i] = int16_t(acc);
  }
  return r;
}

std::vector<Rat> WeylGroup::act_on_weight(int a, const std::vector<Rat>& lam) const {
  std::vector<Rat> r(rank_, Rat(0));
  const int* m = mats_[a].data();
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      if (m[i * rank_ + j] != 0) r[i] += Rat(m[i * rank_ + j]) * lam[j];
  return r;
}

std::vector<std::vector<uint8_t>> WeylGroup::reduced_words(int a) const {
  if (length(a) == 0) return {{}};
  std::vector<std::vector<uint8_t>> out;
  // left descents: i with l(s_i a) < l(a)
  for (int i = 0; i < rank_; ++i) {
    int sa = multiply(simple_[i], a);
    if (length(sa) < length(a)) {
      for (auto w : reduced_words(sa)) {
        w.insert(w.begin(), uint8_t(i));
        out.push_back(std::move(w));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

WeylGroup::Parabolic WeylGroup::parabolic(const std::vector<int>& J) const {
  Parabolic p;
  std::set<int> sub{0};
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int a : frontier)
      for (int i : J) {
        int b = right_[a][i];
        if (sub.insert(b).second) next.push_back(b);
      }
    frontier = std::move(next);
  }
  p.subgroup.assign(sub.begin(), sub.end());
  std::sort(p.subgroup.begin(), p.subgroup.end());
  p.w0J = 0;
  for (int a : p.subgroup)
    if (length(a) > length(p.w0J)) p.w0J = a;
  for (int a = 0; a < size(); ++a) {
    bool minimal = true;
    for (int i : J)
      if (length(right_[a][i]) < length(a)) {
        minimal = false;
        break;
      }
    if (minimal) p.min_reps.push_back(a);
  }
  return p;
}

std::string WeylGroup::to_word_string(int a) const {
  if (a == 0) return "e";
  std::string s;
  for (uint8_t i : words_[a]) {
    if (!s.empty()) s += " ";
    s += std::to_string(int(i) + 1);
  }
  return s;
}

int WeylGroup::from_word_string(const std::string& s) const {
  if (s == "e" || s.empty()) return 0;
  std::istringstream in(s);
  int out = 0, v;
  while (in >> v) {
    if (v < 1 || v > rank_) return -1;
    out = right_[out][v - 1];
  }
  if (!in.eof()) return -1;
  return out;
}

}  // namespace kstab
