#include "ldiv/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <new>
#include <set>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "ldiv/bounds.hpp"
#include "ldiv/constructors.hpp"
#include "ldiv/error.hpp"
#include "ldiv/numbounds.hpp"

namespace lattdiv::cli {

namespace {

using Json = nlohmann::ordered_json;
using Input = nlohmann::json;

constexpr std::size_t kMaxDegree = std::size_t{1} << 20;

// ---- input

std::uint64_t parse_uint(std::string_view text, const std::string& what) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || p != end)
    throw ValidationError(what + ": expected a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

Input parse_json(std::string_view text, const std::string& what) {
  try {
    return Input::parse(text);
  } catch (const Input::parse_error& e) {
    throw ValidationError(what + ": malformed JSON at byte " + std::to_string(e.byte) + ": " +
                          e.what());
  }
}

void expect_keys(const Input& obj, std::initializer_list<std::string_view> allowed,
                 const std::string& what) {
  if (!obj.is_object()) throw ValidationError(what + ": expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ValidationError(what + ": unknown field '" + key + "'");
  }
}

std::uint64_t as_uint(const Input& v, const std::string& what) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  throw ValidationError(what + ": expected a non-negative integer");
}

std::uint64_t uint_field(const Input& obj, const char* key, const std::string& what,
                         std::optional<std::uint64_t> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ValidationError(what + ": missing field '" + key + "'");
  }
  return as_uint(obj.at(key), what + "." + key);
}

bool bool_field(const Input& obj, const char* key, const std::string& what, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) throw ValidationError(what + "." + key + ": expected true or false");
  return obj.at(key).get<bool>();
}

Rational as_rational(const Input& v, const std::string& what) {
  auto make = [&](std::int64_t n, std::int64_t d) {
    if (d == 0) throw ValidationError(what + ": zero denominator");
    return Rational(n, d);
  };
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const auto slash = s.find('/');
    auto num = [&](std::string_view t) {
      std::int64_t x = 0;
      auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
      if (t.empty() || ec != std::errc() || p != t.data() + t.size())
        throw ValidationError(what + ": malformed rational '" + s + "'");
      return x;
    };
    if (slash == std::string::npos) return Rational(num(s));
    return make(num(std::string_view(s).substr(0, slash)), num(std::string_view(s).substr(slash + 1)));
  }
  if (v.is_object()) {
    expect_keys(v, {"num", "den"}, what);
    if (!v.contains("num") || !v.contains("den") || !v["num"].is_number_integer() ||
        !v["den"].is_number_integer())
      throw ValidationError(what + ": expected integer num and den");
    return make(v["num"].get<std::int64_t>(), v["den"].get<std::int64_t>());
  }
  throw ValidationError(what + ": expected an integer, \"a/b\" or {\"num\", \"den\"}");
}

Permutation parse_generator(const Input& g, std::size_t degree, const std::string& what) {
  try {
    if (g.is_string()) return Permutation::from_cycles(g.get<std::string>(), degree);
    if (!g.is_array()) throw ValidationError("expected an image array or a cycle string");
    if (g.size() != degree)
      throw ValidationError("has " + std::to_string(g.size()) + " images for degree " +
                            std::to_string(degree));
    std::vector<Point> images;
    images.reserve(degree);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto x = as_uint(g[i], "image " + std::to_string(i));
      if (x >= degree) throw ValidationError("image " + std::to_string(i) + " is out of range");
      images.push_back(static_cast<Point>(x));
    }
    return Permutation(std::move(images));
  } catch (const ValidationError& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

PermGroup group_from_json(const Input& obj, const Limits& limits, const std::string& what) {
  expect_keys(obj, {"degree", "generators"}, what);
  const auto degree = uint_field(obj, "degree", what);
  if (degree == 0 || degree > kMaxDegree)
    throw ValidationError(what + ": degree must be between 1 and " + std::to_string(kMaxDegree));
  std::vector<Permutation> gens;
  if (obj.contains("generators")) {
    const auto& list = obj.at("generators");
    if (!list.is_array()) throw ValidationError(what + ".generators: expected an array");
    for (std::size_t i = 0; i < list.size(); ++i)
      gens.push_back(parse_generator(list[i], degree, what + ".generators[" + std::to_string(i) + "]"));
  }
  return PermGroup::generate(degree, std::move(gens), limits.element_cap);
}

PermGroup named(std::string_view text, const Limits& limits) {
  const std::string spec(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ValidationError("group spec '" + spec +
                          "' at position 0: unknown name (expected C:n, D:n, S:n, A:n or JSON)");
  Family family;
  try {
    family = parse_family(text.substr(0, colon));
  } catch (const ValidationError&) {
    throw ValidationError("group spec '" + spec + "' at position 0: unknown family '" +
                          std::string(text.substr(0, colon)) + "'");
  }
  const auto n = parse_uint(text.substr(colon + 1),
                            "group spec '" + spec + "' at position " + std::to_string(colon + 1));
  return named_group(family, n, limits.element_cap);
}

PermGroup group_value(const Input& v, const Limits& limits, const std::string& what) {
  if (v.is_string()) return parse_group_spec(v.get<std::string>(), limits);
  return group_from_json(v, limits, what);
}

GroupPair pair_from_json(const Input& obj, const Limits& limits, const std::string& what) {
  expect_keys(obj, {"G", "H"}, what);
  if (!obj.contains("G") || !obj.contains("H")) throw ValidationError(what + ": needs G and H");
  auto g = group_value(obj["G"], limits, what + ".G");
  auto h = group_value(obj["H"], limits, what + ".H");
  return group_pair(std::move(g), std::move(h));
}

// "-" reads stdin; payloads may also name a file.
std::string resolve(const std::string& arg, std::istream& in, bool allow_file) {
  if (arg == "-") return std::string(std::istreambuf_iterator<char>(in), {});
  if (!allow_file || arg.empty() || arg.front() == '{') return arg;
  std::ifstream file(arg);
  if (!file) throw ValidationError("cannot open '" + arg + "'");
  return std::string(std::istreambuf_iterator<char>(file), {});
}

std::vector<std::uint64_t> parse_list(const std::string& text, const std::string& what) {
  std::vector<std::uint64_t> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto lo = parse_uint(std::string_view(text).substr(0, dots), what);
    const auto hi = parse_uint(std::string_view(text).substr(dots + 2), what);
    if (lo > hi) throw ValidationError(what + ": empty range");
    if (hi - lo > 100000) throw ValidationError(what + ": range too long");
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_uint(item, what));
  if (out.empty()) throw ValidationError(what + ": empty list");
  return out;
}

// ---- output

Json rational_json(const Rational& r) {
  Json j;
  j["num"] = r.numerator();
  j["den"] = r.denominator();
  return j;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, Rational>) {
    return rational_json(*v);
  } else {
    return *v;
  }
}

Json group_json(const PermGroup& g) {
  Json gens = Json::array();
  for (const auto& x : g.generators()) gens.push_back(x.to_cycle_string());
  Json j;
  j["degree"] = g.degree();
  j["order"] = g.order();
  j["generators"] = gens;
  return j;
}

Json mode_json(const ModeResult& m, bool weak) {
  Json witnesses = Json::array();
  for (const auto& w : m.witnesses) {
    Json x;
    x["subgroup"] = group_json(w.subgroup);
    x["index_over_h"] = w.index_over_h;
    x["covers"] = w.covers;
    if (weak) {
      Json taus = Json::array();
      for (const auto& t : w.taus) taus.push_back(t.to_cycle_string());
      x["taus"] = taus;
    }
    witnesses.push_back(x);
  }
  Json j;
  j["divisible"] = m.divisible;
  j["constraint_count"] = m.constraint_count;
  j["witnesses"] = witnesses;
  j["uncovered"] = m.uncovered ? Json(m.uncovered->to_cycle_string()) : Json(nullptr);
  return j;
}

Json bound_json(const BoundEntry& b) {
  Json j;
  j["value"] = optional_json(b.value);
  j["note"] = b.note;
  j["equality"] = b.equality;
  j["claims_divisible"] = optional_json(b.claims_divisible);
  j["claims_strong"] = optional_json(b.claims_strong);
  return j;
}

bool is_rational(const Json& j) {
  return j.is_object() && j.size() == 2 && j.contains("num") && j.contains("den");
}

bool is_leaf(const Json& j) { return !j.is_structured() || is_rational(j) || j.empty(); }

std::string leaf_text(const Json& j) {
  if (is_rational(j)) {
    const auto den = j["den"].get<std::int64_t>();
    return j["num"].dump() + (den == 1 ? "" : "/" + std::to_string(den));
  }
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

bool fits_inline(const Json& j) {
  if (is_leaf(j)) return true;
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& v) { return is_leaf(v); });
}

std::string inline_text(const Json& j) {
  if (is_leaf(j)) return leaf_text(j);
  std::string out = "[";
  for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + leaf_text(j[i]);
  return out + "]";
}

void render_text(const Json& j, std::ostream& out, const std::string& pad) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (fits_inline(value)) {
        out << pad << key << ": " << inline_text(value) << '\n';
      } else {
        out << pad << key << ":\n";
        render_text(value, out, pad + "  ");
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (fits_inline(value)) {
        out << pad << "- " << inline_text(value) << '\n';
      } else {
        out << pad << "-\n";
        render_text(value, out, pad + "  ");
      }
    }
  } else {
    out << pad << leaf_text(j) << '\n';
  }
}

std::string csv_cell(const Json& v) {
  std::string s = v.is_null() ? "" : (is_leaf(v) ? leaf_text(v) : v.dump());
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

void flatten(const Json& j, const std::string& path, std::ostream& out) {
  if (is_leaf(j)) {
    out << csv_cell(Json(path)) << ',' << csv_cell(j) << '\n';
    return;
  }
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, out);
  } else {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  }
}

void render_csv(const Json& result, std::ostream& out) {
  const bool table = result.contains("rows") && result["rows"].is_array() &&
                     !result["rows"].empty() &&
                     std::all_of(result["rows"].begin(), result["rows"].end(),
                                 [](const Json& r) { return r.is_object(); });
  if (!table) {
    out << "key,value\n";
    flatten(result, "", out);
    return;
  }
  std::vector<std::string> header;
  for (const auto& [key, value] : result["rows"][0].items()) {
    (void)value;
    header.push_back(key);
  }
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_cell(Json(header[i]));
  out << '\n';
  for (const auto& row : result["rows"]) {
    for (std::size_t i = 0; i < header.size(); ++i)
      out << (i ? "," : "") << (row.contains(header[i]) ? csv_cell(row[header[i]]) : "");
    out << '\n';
  }
}

// ---- subcommands

BoundHints parse_hints(const Input& obj, const Limits& limits) {
  const std::string what = "hints";
  expect_keys(obj, {"chain", "normal", "composite", "parent", "factors", "complement"}, what);
  BoundHints hints;
  auto group_list = [&](const char* key) {
    std::vector<PermGroup> out;
    if (!obj.contains(key)) return out;
    if (!obj[key].is_array()) throw ValidationError(what + "." + key + ": expected an array");
    for (std::size_t i = 0; i < obj[key].size(); ++i)
      out.push_back(group_value(obj[key][i], limits, what + "." + key + "[" + std::to_string(i) + "]"));
    return out;
  };
  hints.chain = group_list("chain");
  hints.composite = group_list("composite");
  if (obj.contains("normal")) hints.normal = group_value(obj["normal"], limits, what + ".normal");
  if (obj.contains("complement"))
    hints.complement = group_value(obj["complement"], limits, what + ".complement");
  if (obj.contains("parent")) hints.parent = pair_from_json(obj["parent"], limits, what + ".parent");
  if (obj.contains("factors")) {
    if (!obj["factors"].is_array()) throw ValidationError(what + ".factors: expected an array");
    for (std::size_t i = 0; i < obj["factors"].size(); ++i)
      hints.factors.push_back(
          pair_from_json(obj["factors"][i], limits, what + ".factors[" + std::to_string(i) + "]"));
  }
  return hints;
}

Json analyze_json(const DivisibilityReport& r) {
  Json j;
  j["G"] = group_json(r.pair.g);
  j["H"] = group_json(r.pair.h);
  j["index"] = r.pair.g.order() / r.pair.h.order();
  j["prime"] = r.prime;
  j["divisible"] = r.weak->divisible;
  j["delta"] = optional_json(r.delta);
  j["strongly_divisible"] = r.strong->divisible;
  j["big_delta"] = optional_json(r.big_delta);
  j["intermediate_count"] = r.intermediate_count;
  j["weak"] = mode_json(*r.weak, true);
  j["strong"] = mode_json(*r.strong, false);
  Json bounds = Json::object();
  for (const auto& [name, entry] : r.bounds) bounds[name] = bound_json(entry);
  j["bounds"] = bounds;
  j["violations"] = r.violations;
  return j;
}

Json scan_json(const PermGroup& g, const ScanResult& s) {
  Json rows = Json::array();
  for (const auto& row : s.rows) {
    Json r;
    r["order"] = row.representative.order();
    r["class_size"] = row.class_size;
    Json gens = Json::array();
    for (const auto& x : row.representative.generators()) gens.push_back(x.to_cycle_string());
    r["generators"] = gens;
    for (const auto& [ell, ok] : row.verdicts) r["divisible_at_" + std::to_string(ell)] = ok;
    r["all_primes"] = row.all_primes;
    rows.push_back(r);
  }
  Json j;
  j["group"] = group_json(g);
  j["subgroup_count"] = s.subgroup_count;
  j["class_count"] = s.rows.size();
  j["primes"] = s.primes;
  j["all_prime_count"] = s.all_prime_count;
  j["rows"] = rows;
  return j;
}

Json dihedral_json(const std::vector<std::uint64_t>& ns, std::uint64_t ell,
                   const DivisibilityOptions& opts, const Limits& limits) {
  Json rows = Json::array();
  for (std::uint64_t n : ns) {
    if (n < 3) throw ValidationError("dihedral-table: n must be at least 3");
    if (2 * n > limits.element_cap) throw CapExceeded("dihedral group of order " + std::to_string(2 * n) + " exceeds the element cap");
    const auto report = delta_exact(dihedral_pair(n), ell, opts);
    std::optional<std::uint64_t> predicted;
    if (ell == 2) {
      if (n % 4 == 0) predicted = 2;
    } else {
      predicted = n % ell == 0 ? 1 : 0;
    }
    Json r;
    r["n"] = n;
    r["order"] = 2 * n;
    r["divisible"] = report.weak->divisible;
    r["delta"] = optional_json(report.delta);
    r["predicted_divisible"] = predicted.has_value();
    r["predicted_delta"] = optional_json(predicted);
    r["matches"] = report.weak->divisible == predicted.has_value() && report.delta == predicted;
    rows.push_back(r);
  }
  Json j;
  j["prime"] = ell;
  j["rows"] = rows;
  return j;
}

UnitData unit_from_json(const Input& obj, const std::string& what, bool with_mu) {
  if (with_mu)
    expect_keys(obj, {"r1", "r2", "degree", "has_mu_ell"}, what);
  else
    expect_keys(obj, {"r1", "r2", "degree"}, what);
  UnitData u;
  u.r1 = uint_field(obj, "r1", what);
  u.r2 = uint_field(obj, "r2", what);
  u.degree = uint_field(obj, "degree", what, u.r1 + 2 * u.r2);
  u.has_mu_ell = bool_field(obj, "has_mu_ell", what, false);
  return u;
}

RankBoundInput rank_input(const Input& obj) {
  const std::string what = "bound";
  expect_keys(obj, {"ell", "mode", "count", "invariant", "unit_K", "unit_F", "rel_degree", "kummer_rank"},
              what);
  RankBoundInput in;
  in.ell = uint_field(obj, "ell", what);
  const auto mode = obj.value("mode", std::string("weak"));
  if (mode == "weak")
    in.mode = RankMode::weak;
  else if (mode == "strong")
    in.mode = RankMode::strong;
  else if (mode == "base")
    in.mode = RankMode::base;
  else
    throw ValidationError(what + ".mode: expected weak, strong or base");
  in.count = uint_field(obj, "count", what);
  if (obj.contains("invariant")) in.invariant = as_rational(obj["invariant"], what + ".invariant");
  if (!obj.contains("unit_K") || !obj.contains("unit_F"))
    throw ValidationError(what + ": unit_K and unit_F are required");
  in.unit_k = unit_from_json(obj["unit_K"], what + ".unit_K", true);
  in.unit_f = unit_from_json(obj["unit_F"], what + ".unit_F", true);
  in.rel_degree = uint_field(obj, "rel_degree", what);
  in.kummer_rank = uint_field(obj, "kummer_rank", what, 0);
  return in;
}

TowerPrime tower_prime(const Input& obj, std::optional<std::uint64_t> key, const std::string& what) {
  expect_keys(obj, {"ell", "delta", "mu_K", "mu_F"}, what);
  TowerPrime p;
  p.ell = key ? *key : uint_field(obj, "ell", what);
  if (key && obj.contains("ell") && as_uint(obj["ell"], what + ".ell") != *key)
    throw ValidationError(what + ": ell does not match its key");
  p.delta = uint_field(obj, "delta", what);
  p.mu_k = bool_field(obj, "mu_K", what, false);
  p.mu_f = bool_field(obj, "mu_F", what, false);
  return p;
}

TowerInput tower_input(const Input& obj) {
  const std::string what = "tower";
  expect_keys(obj, {"degree", "omega_F_disc", "omega_degree", "closure_degree", "unit_K", "unit_F", "per_prime"},
              what);
  TowerInput in;
  in.degree = uint_field(obj, "degree", what);
  in.omega_f_disc = uint_field(obj, "omega_F_disc", what);
  if (obj.contains("omega_degree")) in.omega_degree = uint_field(obj, "omega_degree", what);
  in.closure_degree = uint_field(obj, "closure_degree", what);
  if (!obj.contains("unit_K") || !obj.contains("unit_F"))
    throw ValidationError(what + ": unit_K and unit_F are required");
  in.unit_k = unit_from_json(obj["unit_K"], what + ".unit_K", false);
  in.unit_f = unit_from_json(obj["unit_F"], what + ".unit_F", false);
  if (!obj.contains("per_prime")) throw ValidationError(what + ": per_prime is required");
  const auto& pp = obj["per_prime"];
  if (pp.is_array()) {
    for (std::size_t i = 0; i < pp.size(); ++i)
      in.per_prime.push_back(tower_prime(pp[i], std::nullopt, what + ".per_prime[" + std::to_string(i) + "]"));
  } else if (pp.is_object()) {
    for (const auto& [key, value] : pp.items())
      in.per_prime.push_back(tower_prime(value, parse_uint(key, what + ".per_prime key"),
                                         what + ".per_prime." + key));
  } else {
    throw ValidationError(what + ".per_prime: expected an array or an object keyed by ell");
  }
  return in;
}

Json tower_json(const TowerResult& r) {
  Json details = Json::array();
  for (const auto& d : r.details) {
    Json x;
    x["ell"] = d.ell;
    x["delta"] = d.delta;
    x["rk_K"] = d.rk_k;
    x["rk_F"] = d.rk_f;
    x["e"] = d.e;
    x["bracket_base"] = d.base;
    x["bracket_radicand"] = d.radicand;
    x["bracket_approx"] = d.bracket_approx;
    x["meets"] = d.meets;
    x["bracket_within_4n"] = d.bracket_within_4n;
    details.push_back(x);
  }
  Json j;
  j["omega_criterion"] = r.omega_criterion;
  j["degree_criterion"] = r.degree_criterion;
  j["ceiling"] = r.ceiling;
  j["omega_degree"] = r.omega_degree;
  j["details"] = details;
  return j;
}

Json rayclass_json(const Input& obj) {
  const std::string what = "rayclass";
  expect_keys(obj, {"ell", "rk_cl_F", "s_inf", "places"}, what);
  std::vector<Place> places;
  if (obj.contains("places")) {
    if (!obj["places"].is_array()) throw ValidationError(what + ".places: expected an array");
    for (std::size_t i = 0; i < obj["places"].size(); ++i) {
      const auto& p = obj["places"][i];
      const auto w = what + ".places[" + std::to_string(i) + "]";
      expect_keys(p, {"residue_is_1_mod_ell", "in_T0", "local_degree"}, w);
      places.push_back(Place{bool_field(p, "residue_is_1_mod_ell", w, false),
                             bool_field(p, "in_T0", w, false), uint_field(p, "local_degree", w, 0)});
    }
  }
  const auto r = rayclass_bound(uint_field(obj, "rk_cl_F", what, 0), uint_field(obj, "s_inf", what, 0),
                                uint_field(obj, "ell", what), places);
  Json j;
  j["e"] = r.e;
  j["bound"] = r.bound;
  j["epsilons"] = r.epsilons;
  return j;
}

Json malle_json(const GroupPair& pair, std::uint64_t field_degree,
                const std::map<std::uint64_t, std::uint64_t>& rk_given, const DivisibilityOptions& opts) {
  const std::uint64_t index = pair.g.order() / pair.h.order();
  Json j;
  j["G"] = group_json(pair.g);
  j["H"] = group_json(pair.h);
  j["index"] = index;
  const auto a = malle_a(pair);
  j["a"] = rational_json(a.a);
  j["a_witness"] = a.witness.to_cycle_string();
  j["best_orbits"] = a.best_orbits;
  j["excluded_elements"] = a.excluded;

  auto rk = rk_given;
  if (field_degree == 1)
    for (std::uint64_t ell : prime_divisors(index)) rk.try_emplace(ell, ell == 2 ? 1 : 0);
  const std::uint64_t d = field_degree * index;
  try {
    const auto m = malle_exponent(pair, d, rk, opts);
    Json e;
    e["d"] = d;
    e["value"] = m.e;
    Json terms = Json::object();
    for (const auto& [ell, t] : m.terms) terms[std::to_string(ell)] = t;
    Json deltas = Json::object();
    for (const auto& [ell, v] : m.deltas) deltas[std::to_string(ell)] = v;
    e["terms"] = terms;
    e["deltas"] = deltas;
    e["nilpotent"] = m.nilpotent;
    e["degenerate"] = m.degenerate;
    j["exponent"] = e;
    j["exponent_note"] = m.nilpotent ? Json(nullptr) : Json("G is not nilpotent; the exponent formula assumes it is");
  } catch (const ValidationError& err) {
    j["exponent"] = nullptr;
    j["exponent_note"] = err.what();
  }
  return j;
}

Json census_json(const std::vector<std::uint64_t>& xs, std::uint64_t k, std::uint64_t j,
                 const Limits& limits, std::ostream& err) {
  const auto top = *std::max_element(xs.begin(), xs.end());
  err << "census: sieve up to " << top << " allocates about " << estimated_sieve_bytes(top) << " bytes\n";
  const auto table = ratio_table(xs, k, j, limits.sieve_max);
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    Json x;
    x["x"] = r.x;
    x["k"] = r.k;
    x["j"] = r.j;
    x["pi_k"] = r.pi_k;
    x["t_count"] = r.t_count;
    x["s_count"] = r.s_count;
    x["s_ratio"] = r.s_ratio;
    x["pi_ratio"] = r.pi_ratio;
    rows.push_back(x);
  }
  Json out;
  out["k"] = k;
  out["j"] = j;
  out["s_target"] = table.s_target;
  out["pi_target"] = table.pi_target;
  out["rows"] = rows;
  return out;
}

std::map<std::uint64_t, std::uint64_t> parse_rk_map(const std::string& text) {
  std::map<std::uint64_t, std::uint64_t> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("--rk-f: expected ell=rank pairs");
    out[parse_uint(std::string_view(item).substr(0, eq), "--rk-f")] =
        parse_uint(std::string_view(item).substr(eq + 1), "--rk-f");
  }
  return out;
}

}  // namespace

PermGroup parse_group_spec(std::string_view text, const Limits& limits) {
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string_view::npos && text[start] == '{')
    return group_from_json(parse_json(text, "group spec"), limits, "group spec");
  return named(text, limits);
}

GroupPair parse_pair_spec(std::string_view text, const Limits& limits) {
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string_view::npos && text[start] == '{')
    return pair_from_json(parse_json(text, "pair spec"), limits, "pair spec");
  const std::string spec(text);
  if (spec == "pair:klein-s5") return klein_in_s5_pair();
  if (spec == "pair:klein-s4") return klein_in_s4_pair();
  const std::string prefix = "pair:dihedral:";
  if (spec.rfind(prefix, 0) == 0) {
    const auto n = parse_uint(std::string_view(spec).substr(prefix.size()),
                              "pair spec '" + spec + "' at position " + std::to_string(prefix.size()));
    if (n < 3) throw ValidationError("pair spec '" + spec + "': n must be at least 3");
    if (2 * n > limits.element_cap) throw CapExceeded("dihedral group exceeds the element cap");
    return dihedral_pair(n);
  }
  throw ValidationError("pair spec '" + spec +
                        "' at position 0: unknown name (expected pair:dihedral:n, pair:klein-s5, "
                        "pair:klein-s4 or JSON)");
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Divisibility of finite group pairs, class group rank bounds and census counts",
               "ldiv"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Limits limits;
  int threads = 0;
  std::string format = "json";
  bool timing = false;
  app.add_option("--element-cap", limits.element_cap, "Largest group order handled")
      ->check(CLI::PositiveNumber);
  app.add_option("--work-limit", limits.work_limit, "Closure steps allowed in lattice work")
      ->check(CLI::PositiveNumber);
  app.add_option("--sieve-max", limits.sieve_max, "Largest sieve bound for census")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "Worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--timing", timing, "Add elapsed seconds to the report");

  std::string spec, payload, hints, n_list = "3..24", x_list, rk_f;
  std::uint64_t prime = 2, k = 1, j = 1, field_degree = 1;

  auto* analyze = app.add_subcommand("analyze", "Exact delta and Delta with certificates and bounds");
  analyze->add_option("pair", spec, "Pair spec or - for stdin")->required();
  analyze->add_option("--prime", prime, "The prime ell")->required();
  analyze->add_option("--hints", hints, "JSON hints for the structural bounds (literal, file or -)");

  auto* scan = app.add_subcommand("scan", "Subgroup classes divisible at every prime");
  scan->add_option("group", spec, "Group spec or - for stdin")->required();

  auto* dihedral = app.add_subcommand("dihedral-table", "D_n over a reflection, one row per n");
  dihedral->add_option("--n", n_list, "Range a..b or list a,b,c");
  dihedral->add_option("--prime", prime, "The prime ell");

  auto* bound = app.add_subcommand("bound", "Class group rank lower bound");
  bound->add_option("input", payload, "JSON literal, file or -")->required();
  auto* tower = app.add_subcommand("tower", "Infinite class field tower criteria");
  tower->add_option("input", payload, "JSON literal, file or -")->required();
  auto* rayclass = app.add_subcommand("rayclass", "Count bound for cyclic degree-ell extensions");
  rayclass->add_option("input", payload, "JSON literal, file or -")->required();

  auto* malle = app.add_subcommand("malle", "Malle invariant a(G/H) and the exponent e");
  malle->add_option("pair", spec, "Pair spec or - for stdin")->required();
  malle->add_option("--field-degree", field_degree, "[F:Q]")->check(CLI::PositiveNumber);
  malle->add_option("--rk-f", rk_f, "ell=rank pairs for the unit ranks of F (defaults for F = Q)");

  auto* census = app.add_subcommand("census", "Integer census counts and normalized ratios");
  census->add_option("--k", k, "Bound on omega")->required()->check(CLI::PositiveNumber);
  census->add_option("--j", j, "Exponent j")->required()->check(CLI::PositiveNumber);
  census->add_option("--x-list", x_list, "Comma list or range of x values")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return Exit::invalid;
  }

  if (threads > 0) omp_set_num_threads(threads);
  DivisibilityOptions opts;
  opts.work_limit = limits.work_limit;

  const auto started = std::chrono::steady_clock::now();
  const std::string sub = app.get_subcommands().front()->get_name();
  Json request;
  request["subcommand"] = sub;
  request["args"] = args;
  Json result;
  try {
    if (sub == "analyze") {
      const auto pair = parse_pair_spec(resolve(spec, in, false), limits);
      BoundHints h;
      if (!hints.empty()) {
        const auto parsed = parse_json(resolve(hints, in, true), "hints");
        request["hints"] = parsed;
        h = parse_hints(parsed, limits);
      }
      result = analyze_json(lattdiv::analyze(pair, prime, h, opts));
    } else if (sub == "scan") {
      const auto g = parse_group_spec(resolve(spec, in, false), limits);
      result = scan_json(g, scan_all_primes(g, opts));
    } else if (sub == "dihedral-table") {
      if (!is_prime(prime)) throw ValidationError("--prime must be prime");
      result = dihedral_json(parse_list(n_list, "--n"), prime, opts, limits);
    } else if (sub == "bound") {
      const auto parsed = parse_json(resolve(payload, in, true), "bound input");
      request["payload"] = parsed;
      const auto r = rank_bound(rank_input(parsed));
      for (const auto& w : r.warnings) err << "bound: " << w << '\n';
      result["real_bound"] = rational_json(r.real_bound);
      result["effective_bound"] = r.effective_bound;
      result["rk_K"] = r.rk_k;
      result["rk_F"] = r.rk_f;
      result["e"] = r.e;
      result["warnings"] = r.warnings;
    } else if (sub == "tower") {
      const auto parsed = parse_json(resolve(payload, in, true), "tower input");
      request["payload"] = parsed;
      result = tower_json(tower_criteria(tower_input(parsed)));
    } else if (sub == "rayclass") {
      const auto parsed = parse_json(resolve(payload, in, true), "rayclass input");
      request["payload"] = parsed;
      result = rayclass_json(parsed);
    } else if (sub == "malle") {
      const auto pair = parse_pair_spec(resolve(spec, in, false), limits);
      result = malle_json(pair, field_degree, parse_rk_map(rk_f), opts);
    } else if (sub == "census") {
      result = census_json(parse_list(x_list, "--x-list"), k, j, limits, err);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return Exit::invalid;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return Exit::invalid;
  } catch (const CapExceeded& e) {
    err << "resource cap: " << e.what() << '\n';
    return Exit::cap;
  } catch (const std::bad_alloc&) {
    err << "resource cap: out of memory\n";
    return Exit::cap;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return Exit::internal;
  }

  Json report;
  report["version"] = kVersion;
  report["request"] = request;
  if (timing)
    report["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  report["result"] = result;

  if (format == "json") {
    out << report.dump(2) << '\n';
  } else if (format == "text") {
    out << "ldiv " << kVersion << ' ' << sub << '\n';
    render_text(report["result"], out, "");
  } else {
    out << "# ldiv " << kVersion;
    for (const auto& a : args) out << ' ' << a;
    out << '\n';
    render_csv(report["result"], out);
  }
  return Exit::ok;
}

}  // namespace lattdiv::cli
