#pragma once

// Condition documents (JSON). Polynomials are term lists [[coeff, [e_1, ...]], ...]
// over a named variable list; coefficients are exact rationals as strings.
// A clause polynomial d_r is a list of such term lists, constant term first.
// Serialization writes one top-level key per line in a fixed order with
// compact values, so serialize(parse(serialize(P))) is byte-identical.

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "eigconf/ec_engine.hpp"
#include "eigconf/errors.hpp"
#include "eigconf/matrix_file.hpp"

namespace eigconf {

inline constexpr const char* kConditionFormat = "eigconf-condition";
inline constexpr int kConditionVersion = 1;

namespace detail {

using nlohmann::json;

inline json poly_to_json(const RatPoly& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) {
    json exps = json::array();
    for (auto e : t.exponents) exps.push_back(unsigned(e));
    terms.push_back(json::array({t.coeff.to_string(), std::move(exps)}));
  }
  return terms;
}

inline RatPoly poly_from_json(const json& j, const VarTablePtr& vars, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": polynomial must be a term list");
  std::vector<RatPoly::Term> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_string() || !t[1].is_array() || t[1].size() != vars->size())
      throw ParseError(where + ": term must be [coefficient, [" + std::to_string(vars->size()) + " exponents]]");
    Monomial m;
    for (const auto& e : t[1]) {
      if (!e.is_number_unsigned() || e.get<unsigned long>() > 0xffff) throw ParseError(where + ": bad exponent");
      m.push_back(Exponent(e.get<unsigned long>()));
    }
    Rational c = Rational::parse(t[0].get<std::string>());
    if (c.is_zero()) throw ParseError(where + ": zero coefficient in term list");
    terms.push_back({std::move(m), std::move(c)});
  }
  return RatPoly::from_terms(vars, std::move(terms));
}

inline json names_json(const VarTablePtr& t) { return json(t->names()); }

template <class T>
T get_field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("key '") + key + "' has the wrong type");
  }
}

}  // namespace detail

inline std::string serialize_condition(const Condition& P) {
  using detail::json;
  std::vector<std::pair<std::string, json>> fields;
  fields.emplace_back("format", kConditionFormat);
  fields.emplace_back("version", kConditionVersion);
  fields.emplace_back("m", P.m);
  fields.emplace_back("n", P.n);
  fields.emplace_back("params", detail::names_json(P.params));
  fields.emplace_back("target", P.c.c);
  fields.emplace_back("y", P.y);
  fields.emplace_back("unsatisfiable", P.unsatisfiable);
  fields.emplace_back("ring", P.ring == ConditionRing::CharCoeffs ? "char_coeffs" : "params");
  fields.emplace_back("ring_variables", detail::names_json(P.ring_vars));
  json a = json::array(), b = json::array();
  for (const auto& c : P.a_defs.coeffs) a.push_back(detail::poly_to_json(c));
  for (const auto& c : P.b_defs.coeffs) b.push_back(detail::poly_to_json(c));
  fields.emplace_back("char_coeffs", json{{"a", std::move(a)}, {"b", std::move(b)}});
  json clauses = json::array();
  for (const auto& cl : P.clauses) {
    json d = json::array();
    for (const auto& c : cl.d.coeffs()) d.push_back(detail::poly_to_json(c));
    json entry = json::object();
    entry["r"] = cl.r;
    entry["target"] = cl.target;
    entry["degree"] = cl.d.degree();
    entry["d"] = std::move(d);
    if (cl.sign_patterns) entry["sign_patterns"] = *cl.sign_patterns;
    clauses.push_back(std::move(entry));
  }
  fields.emplace_back("clauses", std::move(clauses));

  std::ostringstream os;
  os << "{\n";
  for (std::size_t i = 0; i < fields.size(); ++i)
    os << "  " << json(fields[i].first).dump() << ": " << fields[i].second.dump() << (i + 1 < fields.size() ? "," : "")
       << "\n";
  os << "}\n";
  return os.str();
}

inline Condition parse_condition(const std::string& text) {
  using detail::get_field;
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("condition document must be a JSON object");
  if (get_field<std::string>(doc, "format") != kConditionFormat) throw ParseError("not a condition document");
  if (get_field<int>(doc, "version") != kConditionVersion) throw ParseError("unsupported condition version");

  Condition P;
  P.m = get_field<int>(doc, "m");
  P.n = get_field<int>(doc, "n");
  if (P.m < 1 || P.n < 1) throw ParseError("m and n must be positive");
  P.params = detail::param_table(get_field<std::vector<std::string>>(doc, "params"));
  P.c.c = get_field<std::vector<long>>(doc, "target");
  P.y = get_field<std::vector<long>>(doc, "y");
  if (int(P.c.c.size()) != P.m || int(P.y.size()) != P.m) throw ParseError("target and y must have m entries");
  P.unsatisfiable = get_field<bool>(doc, "unsatisfiable");
  auto ring = get_field<std::string>(doc, "ring");
  if (ring == "char_coeffs") {
    P.ring = ConditionRing::CharCoeffs;
    P.ring_vars = char_coeff_table(P.m, P.n);
  } else if (ring == "params") {
    P.ring = ConditionRing::Params;
    P.ring_vars = P.params;
  } else {
    throw ParseError("ring must be \"char_coeffs\" or \"params\"");
  }
  if (get_field<std::vector<std::string>>(doc, "ring_variables") != P.ring_vars->names())
    throw ParseError("ring_variables do not match the ring");

  if (!doc.contains("char_coeffs") || !doc["char_coeffs"].is_object()) throw ParseError("missing char_coeffs");
  auto defs = [&](const char* key, int expected) {
    const auto& j = doc["char_coeffs"];
    if (!j.contains(key) || !j[key].is_array() || int(j[key].size()) != expected)
      throw ParseError(std::string("char_coeffs.") + key + " must list " + std::to_string(expected) + " polynomials");
    CharCoeffs c;
    c.degree = expected;
    for (const auto& p : j[key]) c.coeffs.push_back(detail::poly_from_json(p, P.params, std::string("char_coeffs.") + key));
    return c;
  };
  P.a_defs = defs("a", P.m);
  P.b_defs = defs("b", P.n);

  if (!doc.contains("clauses") || !doc["clauses"].is_array()) throw ParseError("missing clauses");
  for (const auto& j : doc["clauses"]) {
    if (!j.is_object()) throw ParseError("clause must be an object");
    Clause cl;
    cl.r = get_field<int>(j, "r");
    cl.target = get_field<long>(j, "target");
    const std::string where = "clause " + std::to_string(cl.r);
    if (!j.contains("d") || !j["d"].is_array()) throw ParseError(where + ": missing d");
    std::vector<RatPoly> coeffs;
    for (const auto& c : j["d"]) coeffs.push_back(detail::poly_from_json(c, P.ring_vars, where));
    cl.d = UniPoly<RatPoly>(std::move(coeffs));
    if (get_field<int>(j, "degree") != cl.d.degree()) throw ParseError(where + ": degree does not match d");
    if (j.contains("sign_patterns")) cl.sign_patterns = get_field<std::vector<std::string>>(j, "sign_patterns");
    P.clauses.push_back(std::move(cl));
  }
  if (int(P.clauses.size()) != P.m) throw ParseError("expected one clause per level r = 1..m");
  return P;
}

inline Condition load_condition_file(const std::string& path) { return parse_condition(read_file(path)); }

}  // namespace eigconf
