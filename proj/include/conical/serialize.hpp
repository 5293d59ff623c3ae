#ifndef CONICAL_SERIALIZE_HPP
#define CONICAL_SERIALIZE_HPP

#include <cstdio>
#include <string>

#include <json.hpp>

#include "conical/hpoly.hpp"

namespace conical {

/// Shortest decimal that round-trips a double.
inline std::string double_repr(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Canonical JSON form, exponents in listing (graded-lex) order:
/// {"d": int, "N": int, "terms": [{"exp": [...], "num": "...", "den": "..."}]}
inline nlohmann::json poly_to_json(const HPoly<Rat>& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back({{"exp", e}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  }
  return {{"d", p.dim()}, {"N", p.degree()}, {"terms", terms}};
}

/// Same schema with numeric coefficients: num carries the full-precision
/// decimal, den is "1".
inline nlohmann::json poly_to_json(const HPoly<double>& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back({{"exp", e}, {"num", double_repr(c)}, {"den", "1"}});
  return {{"d", p.dim()}, {"N", p.degree()}, {"terms", terms}};
}

inline HPoly<Rat> poly_from_json(const nlohmann::json& j) {
  HPoly<Rat> p(j.at("d").get<int>(), j.at("N").get<int>());
  for (const auto& t : j.at("terms")) {
    Mono e = t.at("exp").get<Mono>();
    p.add_term(std::move(e), make_rat(Int(t.at("num").get<std::string>()),
                                      Int(t.at("den").get<std::string>())));
  }
  return p;
}

}  // namespace conical

#endif
