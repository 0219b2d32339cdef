#pragma once

// Matrix pair documents.
//
// Text form ('#' starts a comment; blank lines are ignored):
//   params: p, q
//   F:
//   p    1
//   1    q
//   G:
//   2
// Entries on a row are separated by commas when the row has any, otherwise
// by whitespace. The params line is optional.
//
// JSON form: {"params": ["p", "q"], "F": [["p", "1"], ["1", "q"]], "G": [[2]]}
// with entries given as strings or integers.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "eigconf/charpoly.hpp"
#include "eigconf/errors.hpp"
#include "eigconf/expression.hpp"

namespace eigconf {

struct MatrixPair {
  VarTablePtr params;
  SymMatrix F, G;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
  return b == std::string_view::npos ? std::string() : std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  if (line.find(',') != std::string::npos) {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  } else {
    std::istringstream ss(line);
    std::string cell;
    while (ss >> cell) out.push_back(cell);
  }
  return out;
}

inline VarTablePtr param_table(const std::vector<std::string>& names) {
  for (const auto& n : names) {
    bool ok = !n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_');
    for (char c : n) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ok) throw ParseError("invalid parameter name '" + n + "'");
  }
  try {
    return make_table({{"params", names}});
  } catch (const Error& e) {
    throw ParseError(std::string("bad parameter list: ") + e.what());
  }
}

inline SymMatrix build_matrix(const char* label, const VarTablePtr& params,
                              const std::vector<std::vector<std::string>>& cells) {
  if (cells.empty()) throw ParseError(std::string("matrix ") + label + " has no rows");
  std::vector<std::vector<RatPoly>> rows;
  for (const auto& row : cells) {
    rows.emplace_back();
    for (const auto& c : row) {
      if (c.empty()) throw ParseError(std::string("empty entry in matrix ") + label);
      rows.back().push_back(parse_expression(c, params));
    }
  }
  try {
    return SymMatrix(params, std::move(rows));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("matrix ") + label + ": " + e.what());
  }
}

}  // namespace detail

inline MatrixPair parse_matrix_text(const std::string& text) {
  std::vector<std::string> names;
  bool have_params = false;
  std::vector<std::vector<std::string>> f, g;
  std::vector<std::vector<std::string>>* current = nullptr;
  bool seen_f = false, seen_g = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
    if (line.rfind("params:", 0) == 0) {
      if (have_params || seen_f || seen_g) throw ParseError(where() + "params must come first and only once");
      have_params = true;
      std::string rest = detail::trim(line.substr(7));
      if (!rest.empty()) names = detail::split_row(rest);
      continue;
    }
    if (line == "F:" || line == "G:") {
      bool is_f = line == "F:";
      if ((is_f && seen_f) || (!is_f && seen_g)) throw ParseError(where() + "matrix " + line + " declared twice");
      (is_f ? seen_f : seen_g) = true;
      current = is_f ? &f : &g;
      continue;
    }
    if (!current) throw ParseError(where() + "row outside of an F: or G: section");
    current->push_back(detail::split_row(line));
  }
  if (!seen_f || !seen_g) throw ParseError("document must contain both F: and G: sections");
  MatrixPair out;
  out.params = detail::param_table(names);
  out.F = detail::build_matrix("F", out.params, f);
  out.G = detail::build_matrix("G", out.params, g);
  return out;
}

inline MatrixPair parse_matrix_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("matrix document must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "params" && key != "F" && key != "G") throw ParseError("unknown key '" + key + "'");
  std::vector<std::string> names;
  if (doc.contains("params")) {
    if (!doc["params"].is_array()) throw ParseError("params must be an array of names");
    for (const auto& n : doc["params"]) {
      if (!n.is_string()) throw ParseError("params must be an array of names");
      names.push_back(n.get<std::string>());
    }
  }
  auto cells = [&](const char* label) {
    if (!doc.contains(label) || !doc[label].is_array())
      throw ParseError(std::string("missing matrix ") + label);
    std::vector<std::vector<std::string>> out;
    for (const auto& row : doc[label]) {
      if (!row.is_array()) throw ParseError(std::string("rows of ") + label + " must be arrays");
      out.emplace_back();
      for (const auto& e : row) {
        if (e.is_string()) out.back().push_back(e.get<std::string>());
        else if (e.is_number_integer()) out.back().push_back(std::to_string(e.get<long long>()));
        else throw ParseError(std::string("entries of ") + label + " must be strings or integers");
      }
    }
    return out;
  };
  MatrixPair out;
  out.params = detail::param_table(names);
  out.F = detail::build_matrix("F", out.params, cells("F"));
  out.G = detail::build_matrix("G", out.params, cells("G"));
  return out;
}

/// JSON when the first non-blank character is '{', text otherwise.
inline MatrixPair parse_matrix_document(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_matrix_json(text);
  return parse_matrix_text(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline MatrixPair load_matrix_file(const std::string& path) { return parse_matrix_document(read_file(path)); }

}  // namespace eigconf
