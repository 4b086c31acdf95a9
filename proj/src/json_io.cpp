#include "patcover/json_io.hpp"

#include <algorithm>
#include <cctype>

#include "patcover/error.hpp"

namespace patcover {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      auto part = trim(s.substr(start, i - start));
      if (!part.empty()) out.push_back(part);
      start = i + 1;
    }
  return out;
}

std::string_view strip_braces(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '{' && s.back() == '}') s = trim(s.substr(1, s.size() - 2));
  return s;
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }
Json to_json(const BigInt& z) { return to_string(z); }

Json to_json(const Element& e) {
  Json a = Json::array();
  for (const auto& c : e) a.push_back(to_json(c));
  return a;
}

Json to_json(const PointSet& s) {
  Json a = Json::array();
  for (const auto& e : s) a.push_back(to_json(e));
  return a;
}

Json witnesses_to_json(const std::map<Element, Element>& w, const char* key_name, const char* value_name) {
  Json a = Json::array();
  for (const auto& [k, v] : w) a.push_back({{key_name, to_json(k)}, {value_name, to_json(v)}});
  return a;
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  fail(ErrorCode::ConfigInvalid, "expected a rational, got " + j.dump());
}

Element element_from_json(const Json& j) {
  if (!j.is_array()) return {rational_from_json(j)};
  Element e;
  for (const auto& c : j) e.push_back(rational_from_json(c));
  return e;
}

std::map<Element, Element> witnesses_from_json(const Json& j, const char* key_name, const char* value_name) {
  std::map<Element, Element> w;
  if (!j.is_array()) fail(ErrorCode::ConfigInvalid, "witnesses must be an array");
  for (const auto& item : j) {
    if (!item.contains(key_name) || !item.contains(value_name)) fail(ErrorCode::ConfigInvalid, "malformed witness");
    w[element_from_json(item.at(key_name))] = element_from_json(item.at(value_name));
  }
  return w;
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  for (auto part : split(strip_braces(text), ',')) {
    Rational q = parse_rational(part);
    if (!is_integer(q)) fail(ErrorCode::ConfigInvalid, "expected an integer: " + std::string(part));
    out.push_back(to_int64(q));
  }
  return out;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  for (auto part : split(strip_braces(text), ',')) out.push_back(parse_rational(part));
  return out;
}

std::vector<std::vector<std::int64_t>> parse_tuple_list(std::string_view text) {
  text = strip_braces(text);
  std::vector<std::vector<std::int64_t>> out;
  if (text.find('(') == std::string_view::npos) {
    for (auto v : parse_int_list(text)) out.push_back({v});
    return out;
  }
  std::size_t pos = 0;
  while ((pos = text.find('(', pos)) != std::string_view::npos) {
    auto end = text.find(')', pos);
    if (end == std::string_view::npos) fail(ErrorCode::ConfigInvalid, "unbalanced parentheses");
    out.push_back(parse_int_list(text.substr(pos + 1, end - pos - 1)));
    pos = end + 1;
  }
  return out;
}

PatternFamily parse_family(std::string_view text) {
  text = strip_braces(text);
  if (text.size() > 4 && text.substr(0, 3) == "1/[" && text.back() == ']')
    return PatternFamily::harmonic(static_cast<int>(to_int64(parse_rational(text.substr(3, text.size() - 4)))));
  if (text.size() > 2 && text.front() == '[' && text.back() == ']')
    return PatternFamily::progression(static_cast<int>(to_int64(parse_rational(text.substr(1, text.size() - 2)))));
  if (text.find('(') != std::string_view::npos) {
    std::vector<Element> es;
    for (const auto& t : parse_tuple_list(text)) {
      if (t.size() != 2) fail(ErrorCode::ConfigInvalid, "Gaussian family elements need two coordinates");
      es.push_back(vec({static_cast<long>(t[0]), static_cast<long>(t[1])}));
    }
    return PatternFamily(RingContext::cyclotomic(4), es);
  }
  auto qs = parse_rational_list(text);
  if (qs.empty()) fail(ErrorCode::ConfigInvalid, "empty family");
  bool integral = std::all_of(qs.begin(), qs.end(), [](const Rational& q) { return is_integer(q); });
  std::vector<Element> es;
  for (const auto& q : qs) es.push_back(scalar(q));
  return PatternFamily(integral ? RingContext::integers() : RingContext::rationals(), es);
}

std::pair<std::int64_t, std::int64_t> parse_range(std::string_view text) {
  auto dots = text.find("..", 1);
  if (dots == std::string_view::npos) fail(ErrorCode::ConfigInvalid, "expected lo..hi, got " + std::string(text));
  auto lo = to_int64(parse_rational(trim(text.substr(0, dots))));
  auto hi = to_int64(parse_rational(trim(text.substr(dots + 2))));
  if (lo > hi) fail(ErrorCode::ConfigInvalid, "empty range " + std::string(text));
  return {lo, hi};
}

PolytopeSpec polytope_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("hyperplanes"))
    fail(ErrorCode::ConfigInvalid, "polytope needs n and hyperplanes");
  PolytopeSpec P;
  P.n = j.at("n").get<int>();
  for (const auto& h : j.at("hyperplanes")) {
    Hyperplane hp;
    for (const auto& c : h.at("u")) hp.head.push_back(rational_from_json(c));
    if (h.contains("u_tail_norm_sq")) hp.tail_norm_sq = rational_from_json(h.at("u_tail_norm_sq"));
    if (h.contains("branch")) hp.branch = h.at("branch").get<int>();
    hp.c = rational_from_json(h.at("d"));
    P.hyperplanes.push_back(std::move(hp));
  }
  P.validate(false);
  return P;
}

Json polytope_to_json(const PolytopeSpec& P) {
  Json hs = Json::array();
  for (const auto& h : P.hyperplanes) {
    Json u = Json::array();
    for (const auto& c : h.head) u.push_back(to_json(c));
    hs.push_back({{"u", u}, {"u_tail_norm_sq", to_json(h.tail_norm_sq)}, {"branch", h.branch}, {"d", to_json(h.c)}});
  }
  return {{"n", P.n}, {"hyperplanes", hs}};
}

}  // namespace patcover
