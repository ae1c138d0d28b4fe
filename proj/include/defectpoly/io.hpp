#pragma once

// Polytope files and JSON reports.
//
// A polytope file is plain text: lines starting with '#' are comments,
// blank lines are ignored, and every other line is one vertex given as
// whitespace-separated base-10 integers.  All vertex lines have the same
// length, which fixes the ambient dimension.

#include <json.hpp>

#include <cctype>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "defectpoly/exact_linalg.hpp"
#include "defectpoly/invariants.hpp"
#include "defectpoly/polynomial.hpp"
#include "defectpoly/polytope.hpp"

namespace defectpoly {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& detail, const std::string& source = "")
      : std::runtime_error((source.empty() ? "" : source + ": ") + "line " + std::to_string(line) +
                           ": " + detail),
        line_(line),
        detail_(detail) {}

  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }
  ParseError with_source(const std::string& source) const { return {line_, detail_, source}; }

 private:
  std::size_t line_;
  std::string detail_;
};

namespace detail {
inline bool is_integer_token(const std::string& s) {
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}
}  // namespace detail

/// Vertex rows exactly as written, in file order.
inline IntMatrix parse_vertex_rows(std::istream& in) {
  IntMatrix rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool have_width = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    IntVector row;
    std::string tok;
    while (tokens >> tok) {
      if (!detail::is_integer_token(tok)) throw ParseError(line_no, "not an integer: '" + tok + "'");
      row.emplace_back(tok[0] == '+' ? tok.substr(1) : tok, 10);
    }
    if (!have_width) {
      width = row.size();
      have_width = true;
      rows = IntMatrix(0, width);
    } else if (row.size() != width) {
      throw ParseError(line_no, "expected " + std::to_string(width) + " coordinates, found " +
                                    std::to_string(row.size()));
    }
    rows.append_row(row);
  }
  if (!have_width) throw ParseError(line_no, "no vertices");
  return rows;
}

inline Polytope parse_polytope(std::istream& in, std::vector<std::size_t>* discarded = nullptr) {
  return Polytope::from_vertices(parse_vertex_rows(in), discarded);
}

inline Polytope parse_polytope(const std::string& text) {
  std::istringstream in(text);
  return parse_polytope(in);
}

/// One vertex per line, single spaces, trailing newline.
inline std::string serialize(const IntMatrix& rows) {
  if (rows.cols() == 0) throw DomainError("a polytope in R^0 cannot be written as a polytope file");
  std::string out;
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    for (std::size_t j = 0; j < rows.cols(); ++j) {
      if (j) out += ' ';
      out += rows(i, j).get_str();
    }
    out += '\n';
  }
  return out;
}

inline std::string serialize(const Polytope& p) { return serialize(p.vertices()); }

// ---------------------------------------------------------------------------
// JSON.  Arbitrary-precision values are emitted as decimal strings so that
// every consumer sees them exactly; counts are plain numbers.

inline constexpr int report_schema_version = 1;

using Json = nlohmann::ordered_json;

inline Json to_json(const std::vector<Integer>& values) {
  Json a = Json::array();
  for (const auto& v : values) a.push_back(v.get_str());
  return a;
}

inline Json to_json(const Polynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs) a.push_back(c.get_str());
  return a;
}

inline Json to_json(const InvariantReport& r) {
  Json j;
  j["schema"] = report_schema_version;
  j["dim"] = r.dim;
  j["ambient_dim"] = r.ambient_dim;
  j["n_vertices"] = r.n_vertices;
  j["f_vector"] = r.f_vector;
  j["is_simple"] = r.is_simple;
  j["is_smooth"] = r.is_smooth;
  j["c0"] = r.c0.get_str();
  j["c1"] = r.c1.get_str();
  Json ct = Json::object();
  for (const auto& [t, value] : r.ct) ct[std::to_string(t)] = value.get_str();
  j["ct"] = ct;
  j["f_coefficients"] = to_json(r.f_coefficients);
  j["is_defect"] = r.is_defect;
  return j;
}

inline std::string join(const std::vector<Integer>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += values[i].get_str();
  }
  return out;
}

/// Two-column aligned text rendering of a report.
inline std::string to_text(const InvariantReport& r) {
  auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
  std::string fv;
  for (std::size_t i = 0; i < r.f_vector.size(); ++i) {
    if (i) fv += ' ';
    fv += std::to_string(r.f_vector[i]);
  }
  std::vector<std::pair<std::string, std::string>> rows{
      {"dim", std::to_string(r.dim)},
      {"ambient_dim", std::to_string(r.ambient_dim)},
      {"n_vertices", std::to_string(r.n_vertices)},
      {"f_vector", fv},
      {"is_simple", flag(r.is_simple)},
      {"is_smooth", flag(r.is_smooth)},
      {"c0", r.c0.get_str()},
      {"c1", r.c1.get_str()},
  };
  for (const auto& [t, value] : r.ct) rows.emplace_back("c" + std::to_string(t), value.get_str());
  rows.emplace_back("f_coefficients", join(r.f_coefficients));
  rows.emplace_back("is_defect", flag(r.is_defect));

  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.first.size());
  std::string out;
  for (const auto& [key, value] : rows) {
    out += key;
    out.append(width - key.size() + 2, ' ');
    out += value;
    out += '\n';
  }
  return out;
}

}  // namespace defectpoly
