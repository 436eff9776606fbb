#include "kstab/tableio.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace kstab {

std::string render_rational(const RationalFn& f, int rank) { return f.to_string(rank); }

Table build_table(const std::string& type_label, const std::string& what,
                  const CharacterAssignment* tau) {
  auto rs = RootSystem::from_spec(type_label);
  const WeylGroup& W = rs->weyl();
  const int N = W.size();
  Table t;
  t.type_label = type_label;
  t.basis = what;
  for (int v = 0; v < N; ++v) t.row_labels.push_back(W.to_word_string(v));
  t.col_labels = t.row_labels;
  t.cells.assign(N, std::vector<std::string>(N));

  auto fill = [&](const std::function<RationalFn(int, int)>& entry) {
    for (int v = 0; v < N; ++v)
      for (int w = 0; w < N; ++w) t.cells[v][w] = render_rational(entry(v, w), rs->rank());
  };

  if (what == "restrictions-" || what == "restrictions+") {
    StableContext sc(rs);
    int sign = what.back() == '+' ? +1 : -1;
    fill([&](int v, int w) { return sc.restrict_closed(sign, w, v); });
  } else if (what == "K") {
    RootPolyContext kc(rs);
    fill([&](int v, int w) { return kc.K(v, w); });
  } else if (what == "a+" || what == "a-" || what == "b+" || what == "b-" ||
             what == "d+" || what == "d-") {
    HeckeContext hc(rs);
    BasisFamily f;
    if (what == "a+") f = BasisFamily::APlus;
    else if (what == "a-") f = BasisFamily::AMinus;
    else if (what == "b+") f = BasisFamily::BPlus;
    else if (what == "b-") f = BasisFamily::BMinus;
    else if (what == "d+") f = BasisFamily::DPlus;
    else f = BasisFamily::DMinus;
    const TransitionData& td = hc.table(f);
    // rows v (the expansion target), columns w (the expanded family element)
    fill([&](int v, int w) { return td.at(w, v); });
  } else if (what == "padic-a" || what == "padic-b") {
    PadicContext pc(rs);
    const auto& tab = pc.transition_matrices();
    const auto& m = what == "padic-a" ? tab.a : tab.b;
    const RootSystem& d = pc.dual_system();
    if (tau) {
      pc.require_regular(*tau);
      auto f2r = [&d](const ExpKey& e) { return d.fund_halves_to_root_coords(e); };
      for (int v = 0; v < N; ++v)
        for (int w = 0; w < N; ++w) {
          Rat val = evaluate_character(m[v][w], *tau, f2r, d.rank());
          std::ostringstream os;
          os << val;
          t.cells[v][w] = os.str();
        }
    } else {
      for (int v = 0; v < N; ++v)
        for (int w = 0; w < N; ++w) t.cells[v][w] = render_rational(m[v][w], d.rank());
    }
  } else {
    throw std::runtime_error("unknown table selection: " + what);
  }
  return t;
}

namespace {

std::string csv_quote(const std::string& s) {
  bool need = s.find_first_of(",\"\n") != std::string::npos;
  if (!need) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string to_csv(const Table& t) {
  std::ostringstream os;
  os << csv_quote(t.basis);
  for (const auto& c : t.col_labels) os << "," << csv_quote(c);
  os << "\r\n";
  for (size_t v = 0; v < t.row_labels.size(); ++v) {
    os << csv_quote(t.row_labels[v]);
    for (const auto& cell : t.cells[v]) os << "," << csv_quote(cell);
    os << "\r\n";
  }
  return os.str();
}

std::string to_json(const Table& t) {
  nlohmann::json j;
  j["type"] = t.type_label;
  j["basis"] = t.basis;
  j["columns"] = t.col_labels;
  nlohmann::json rows = nlohmann::json::array();
  for (size_t v = 0; v < t.row_labels.size(); ++v) {
    nlohmann::json row;
    row["label"] = t.row_labels[v];
    row["cells"] = t.cells[v];
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

namespace {

std::string latexize(const std::string& s) {
  // adapt the plain rendering to math mode: products and exponent tuples
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '*') {
      out += "\\cdot ";
    } else if (c == '(' && i >= 2 && s.compare(i - 2, 2, "e^") == 0) {
      out += "{(";
      size_t depth = 1;
      for (++i; i < s.size() && depth > 0; ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        out += s[i];
      }
      --i;
      out += "}";
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

std::string to_latex(const Table& t) {
  std::ostringstream os;
  os << "\\documentclass{standalone}\n\\begin{document}\n$\\begin{array}{r|";
  for (size_t i = 0; i < t.col_labels.size(); ++i) os << "c";
  os << "}\n";
  for (const auto& c : t.col_labels) os << " & \\mathtt{" << c << "}";
  os << " \\\\\\hline\n";
  for (size_t v = 0; v < t.row_labels.size(); ++v) {
    os << "\\mathtt{" << t.row_labels[v] << "}";
    for (const auto& cell : t.cells[v]) os << " & " << latexize(cell);
    os << " \\\\\n";
  }
  os << "\\end{array}$\n\\end{document}\n";
  return os.str();
}

}  // namespace kstab
