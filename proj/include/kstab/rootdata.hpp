// Finite root systems and Weyl groups: roots in fundamental-weight
// coordinates, ShortLex-canonical reduced words, Bruhat order, inversion sets,
// parabolic data.  Everything is precomputed at construction and immutable
// afterwards, so concurrent readers need no locking.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kstab/exactring.hpp"

namespace kstab {

class RootSystem;

// Weyl group of a RootSystem.  Elements are dense indices in ShortLex order
// (index 0 = identity, indices sorted by length then lexicographic canonical
// word), so serialization order is stable.
class WeylGroup {
 public:
  int size() const { return int(words_.size()); }
  int rank() const { return rank_; }
  int identity() const { return 0; }
  int simple(int i) const { return simple_[i]; }
  int longest() const { return longest_; }

  int length(int a) const { return int(words_[a].size()); }
  const std::vector<uint8_t>& word(int a) const { return words_[a]; }

  int multiply(int a, int b) const;
  int inverse(int a) const { return inverse_[a]; }
  int mult_simple_right(int a, int i) const { return right_[a][i]; }
  int mult_simple_left(int i, int a) const { return multiply(simple_[i], a); }

  bool bruhat_leq(int a, int b) const { return bruhat_[a][b]; }

  // image of the root with index r under the element a
  int act_on_root(int a, int r) const { return root_perm_[a][r]; }
  // action on exponents in half-unit fundamental coordinates (q part fixed)
  ExpKey act_on_exp(int a, const ExpKey& e) const;
  std::vector<Rat> act_on_weight(int a, const std::vector<Rat>& lam) const;

  // Sigma_w = w Sigma^- cap Sigma^+, as positive-root indices, sorted.
  const std::vector<int>& inversion_set(int a) const { return inv_sets_[a]; }

  std::vector<std::vector<uint8_t>> reduced_words(int a) const;

  struct Parabolic {
    std::vector<int> subgroup;   // W_J, ShortLex order
    std::vector<int> min_reps;   // W^J, ShortLex order
    int w0J;                     // longest element of W_J
  };
  Parabolic parabolic(const std::vector<int>& J) const;

  std::string to_word_string(int a) const;
  // parses "e" or "1 2 1"; returns -1 on malformed input
  int from_word_string(const std::string& s) const;

 private:
  friend class RootSystem;
  void build(const RootSystem& rs);

  int rank_ = 0;
  std::vector<std::vector<uint8_t>> words_;
  std::vector<int> simple_;
  std::vector<int> inverse_;
  std::vector<std::vector<int>> right_;       // [elt][i] -> elt * s_i
  std::vector<std::vector<int>> root_perm_;   // [elt][root] -> root
  std::vector<std::vector<int>> mats_;        // rank x rank, row-major, on fund coords
  std::vector<std::vector<char>> bruhat_;
  std::vector<std::vector<int>> inv_sets_;
  int longest_ = 0;
};

class RootSystem : public std::enable_shared_from_this<RootSystem> {
 public:
  // "A1".."A4", "B2".."B4", "C2".."C4", "D4", "G2"
  static std::shared_ptr<const RootSystem> from_label(const std::string& label);
  // Explicit Cartan matrix; throws std::runtime_error with a diagnostic naming
  // the violated finite-type condition.
  static std::shared_ptr<const RootSystem> from_cartan(std::vector<std::vector<int>> cartan,
                                                       std::string name = "custom");
  // Plain-text file of integer rows (whitespace-separated, one row per line).
  static std::shared_ptr<const RootSystem> from_file(const std::string& path);
  // Accepts a type label or "file:<path>".
  static std::shared_ptr<const RootSystem> from_spec(const std::string& spec);

  int rank() const { return rank_; }
  const std::string& name() const { return name_; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  int num_roots() const { return int(roots_.size()); }
  int num_positive() const { return npos_; }
  bool is_positive_root(int idx) const { return idx < npos_; }
  int negative_of(int idx) const { return neg_of_[idx]; }
  // fundamental-weight coordinates, full units
  const std::vector<int>& root(int idx) const { return roots_[idx]; }
  // simple-coroot coordinates of the coroot of root idx
  const std::vector<int>& coroot(int idx) const { return coroots_[idx]; }
  int root_index(const std::vector<int>& fund_coords) const;
  int simple_root(int i) const { return i; }  // simple roots come first

  // <lambda, alpha^vee> for the root with index idx
  Rat pairing(const std::vector<Rat>& lambda_fund, int idx) const;

  const std::vector<int>& rho() const { return rho_; }  // all-ones

  const WeylGroup& weyl() const { return weyl_; }

  std::shared_ptr<const RootSystem> dual() const;

  // conversion of a half-unit fundamental exponent into simple-root coords
  std::vector<Rat> fund_halves_to_root_coords(const ExpKey& e) const;

  // ExpKey (half units) of a root, scaled by `times`
  ExpKey root_exp(int idx, int times = 1) const;

 private:
  RootSystem() = default;
  void build();

  std::string name_;
  int rank_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<int>> roots_;
  std::vector<std::vector<int>> coroots_;
  std::vector<int> neg_of_;
  int npos_ = 0;
  std::vector<int> rho_;
  std::vector<std::vector<Rat>> cartan_inv_;
  WeylGroup weyl_;
  mutable std::shared_ptr<const RootSystem> dual_cache_;
};

// s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i, rational coordinates
std::vector<Rat> reflect_weight(const RootSystem& rs, int i, const std::vector<Rat>& lam);

}  // namespace kstab
