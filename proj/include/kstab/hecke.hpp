// Demazure-Lusztig elements tau^+-, push-pull Y, divided difference X,
// Lusztig's T^L, word products, inverses, and the triangular basis
// conversions between the delta, tau^+-, and Y bases of Q_W.

#pragma once

#include <mutex>

#include "kstab/twisted.hpp"

namespace kstab {

enum class DLKind { TauPlus, TauMinus, Y, X, TLusztig };

// Generator for the root +-alpha_i (i simple, sign -1 gives the negated root,
// needed for Y_{-i} and for the flipped Hecke action of the p-adic module).
GroupAlgElt demazure_lusztig(const RootSystem& rs, DLKind kind, int i, int sign = +1);

// Demazure operator Dem_alpha(p) = (s_alpha(p) - p)/(1 - e^{-alpha}) for
// alpha = +-alpha_i.  Divisibility is a theorem; failure throws.
RationalFn demazure_operator(const RootSystem& rs, int i, int sign, const RationalFn& p);

// Product along a reduced word of w (validated); every reduced word gives the
// same element.
GroupAlgElt hecke_word(const RootSystem& rs, DLKind kind, int w,
                       const std::vector<uint8_t>* word = nullptr);

// Inverse of tau^+-_w, built as the reversed product of generator inverses
// tau_i^{-1} = q^{-1}(tau_i + 1 - q).
GroupAlgElt hecke_invert(const RootSystem& rs, DLKind kind, int w);

enum class BasisFamily { APlus, AMinus, BPlus, BMinus, DPlus, DMinus };

// Square W x W table over Q; entry (w, v) in ShortLex element order.
struct TransitionData {
  BasisFamily family;
  std::vector<std::vector<RationalFn>> entry;
  const RationalFn& at(int w, int v) const { return entry[w][v]; }
};

// Per-root-system cache of transition tables; write-once after first use.
class HeckeContext {
 public:
  explicit HeckeContext(std::shared_ptr<const RootSystem> rs) : rs_(std::move(rs)) {}
  const RootSystem& system() const { return *rs_; }

  const TransitionData& table(BasisFamily f) const;

  // Expansion of z in the given target basis (delta needs no work); returns
  // coefficients indexed by element.
  std::map<int, RationalFn> convert(const GroupAlgElt& z, DLKind target) const;

 private:
  TransitionData build_table(BasisFamily f) const;

  std::shared_ptr<const RootSystem> rs_;
  mutable std::mutex mu_;
  mutable std::map<BasisFamily, TransitionData> cache_;
};

}  // namespace kstab
