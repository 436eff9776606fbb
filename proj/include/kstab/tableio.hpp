// Deterministic table export: CSV (RFC-4180 quoting), JSON, and a standalone
// LaTeX array.  Rows are indexed by the evaluation point v, columns by the
// family element w, both in ShortLex order.

#pragma once

#include <iosfwd>

#include "kstab/padic.hpp"

namespace kstab {

struct Table {
  std::string type_label;
  std::string basis;                       // e.g. "restrictions-", "K", "a+"
  std::vector<std::string> row_labels;     // ShortLex words
  std::vector<std::string> col_labels;
  std::vector<std::vector<std::string>> cells;  // [row][col]
};

// what: restrictions+ | restrictions- | K | a+ | a- | b+ | b- | d+ | d- |
//       padic-a | padic-b
Table build_table(const std::string& type_label, const std::string& what,
                  const CharacterAssignment* tau /* numeric padic tables */);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);
std::string to_latex(const Table& t);

// canonical rendering used by every exporter
std::string render_rational(const RationalFn& f, int rank);

}  // namespace kstab
