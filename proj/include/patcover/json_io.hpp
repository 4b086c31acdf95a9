#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "json.hpp"
#include "patcover/geometry.hpp"
#include "patcover/pattern.hpp"

namespace patcover {

using Json = nlohmann::json;

Json to_json(const Rational& q);
Json to_json(const BigInt& z);
Json to_json(const Element& e);
Json to_json(const PointSet& s);
/// [{key_name: ..., value_name: ...}, ...] in key order.
Json witnesses_to_json(const std::map<Element, Element>& w, const char* key_name, const char* value_name);

/// Accepts "p/q" strings, decimal strings and JSON integers.
Rational rational_from_json(const Json& j);
Element element_from_json(const Json& j);
std::map<Element, Element> witnesses_from_json(const Json& j, const char* key_name, const char* value_name);

/// "1,2,3", "{1,2}", "1/2,1/3", "(1,1),(2,1)" (Gaussian), "[k]" or "1/[k]".
PatternFamily parse_family(std::string_view text);
/// "lo..hi" with integers.
std::pair<std::int64_t, std::int64_t> parse_range(std::string_view text);
std::vector<std::int64_t> parse_int_list(std::string_view text);
std::vector<Rational> parse_rational_list(std::string_view text);
/// "(0,0),(1,0)" or "0,2,4" (one coordinate per digit).
std::vector<std::vector<std::int64_t>> parse_tuple_list(std::string_view text);

/// {n, hyperplanes: [{u: [...], u_tail_norm_sq: "p/q", d: "p/q", branch: int}]}; u and d need not be normalized.
PolytopeSpec polytope_from_json(const Json& j);
Json polytope_to_json(const PolytopeSpec& P);

}  // namespace patcover
