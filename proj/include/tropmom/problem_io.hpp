#pragma once

// JSON problem and result files. Parsing is strict: unknown keys, wrong
// types and inconsistent dimensions raise SchemaError naming the JSON
// pointer of the offending field. Rendering is canonical, so equal results
// serialize to identical bytes.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tropmom/pseudo_trop.hpp"

namespace tropmom {

class SchemaError : public UsageError {
 public:
  SchemaError(const std::string& where, const std::string& what)
      : UsageError((where.empty() ? std::string("/") : where) + ": " + what) {}
};

struct ProblemOptions {
  bool assume_semigroup_generated = false;
  std::size_t max_extension_points = PseudoOptions{}.max_extension_points;
};

struct ProblemFile {
  std::size_t ambient_dim = 0;
  std::vector<LatticePoint> support;
  SemialgSpec set;
  std::optional<std::int64_t> degree;
  ProblemOptions options;

  PointConfig config() const { return PointConfig(ambient_dim, support); }
};

struct FacetEntry {
  IntVector normal;
  std::string binomial;
};

struct ResultFile {
  std::vector<FacetEntry> facets;
  std::vector<IntVector> extreme_rays_mod_lineality;
  std::size_t lineality_dim = 0;
  std::vector<IntVector> lineality_basis;
  std::vector<std::string> warnings;
  // An integer degree, or a note such as "stable (closed form)".
  std::optional<std::variant<std::int64_t, std::string>> stabilized_at;
};

namespace io_detail {

using json = nlohmann::ordered_json;

inline void expect_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed,
                        std::initializer_list<const char*> required) {
  if (!j.is_object()) throw SchemaError(where, "expected an object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || key == k;
    if (!known) throw SchemaError(where + "/" + key, "unknown field");
  }
  for (const char* k : required)
    if (!j.contains(k)) throw SchemaError(where + "/" + k, "missing required field");
}

inline std::int64_t get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    throw SchemaError(where, "integer out of range");
  return j.get<std::int64_t>();
}

inline LatticePoint get_point(const json& j, const std::string& where, std::size_t dim) {
  if (!j.is_array()) throw SchemaError(where, "expected an integer vector");
  if (j.size() != dim)
    throw SchemaError(where, "expected " + std::to_string(dim) + " entries, got " + std::to_string(j.size()));
  LatticePoint p;
  for (std::size_t i = 0; i < j.size(); ++i) p.push_back(get_int(j[i], where + "/" + std::to_string(i)));
  return p;
}

// Integers that fit in int64 are JSON numbers; larger ones are strings.
inline json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return json(x.convert_to<std::int64_t>());
  return json(x.str());
}

inline Integer integer_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw SchemaError(where, "expected an integer");
    return Integer(s);
  }
  throw SchemaError(where, "expected an integer");
}

inline IntVector vector_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where, "expected an integer vector");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from_json(j[i], where + "/" + std::to_string(i)));
  return v;
}

inline std::vector<IntVector> vectors_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where, "expected a list of vectors");
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector_from_json(j[i], where + "/" + std::to_string(i)));
  return out;
}

inline SemialgSpec parse_set(const json& j, std::size_t n) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw SchemaError("/set/kind", "expected one of orthant, cube, full_space, toric_cube, binomials");
  const std::string kind = j["kind"];
  if (kind == "orthant" || kind == "cube" || kind == "full_space") {
    expect_keys(j, "/set", {"kind"}, {});
    if (kind == "orthant") return SemialgSpec::orthant(n);
    if (kind == "cube") return SemialgSpec::cube(n);
    return SemialgSpec::full_space(n);
  }
  if (kind == "toric_cube") {
    expect_keys(j, "/set", {"kind", "Q"}, {"Q"});
    const json& q = j["Q"];
    if (!q.is_array() || q.empty()) throw SchemaError("/set/Q", "expected a nonempty matrix");
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t i = 0; i < q.size(); ++i) rows.push_back(get_point(q[i], "/set/Q/" + std::to_string(i), n));
    try {
      return SemialgSpec::toric_cube(std::move(rows));
    } catch (const UsageError& e) {
      throw SchemaError("/set/Q", e.what());
    }
  }
  if (kind == "binomials") {
    expect_keys(j, "/set", {"kind", "gens"}, {"gens"});
    const json& g = j["gens"];
    if (!g.is_array()) throw SchemaError("/set/gens", "expected a list of {plus, minus}");
    std::vector<BinomialGenerator> gens;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::string w = "/set/gens/" + std::to_string(i);
      expect_keys(g[i], w, {"plus", "minus"}, {"plus", "minus"});
      gens.push_back({get_point(g[i]["plus"], w + "/plus", n), get_point(g[i]["minus"], w + "/minus", n)});
    }
    try {
      return SemialgSpec::binomials(n, std::move(gens));
    } catch (const UsageError& e) {
      throw SchemaError("/set/gens", e.what());
    }
  }
  throw SchemaError("/set/kind", "unknown set kind \"" + kind + "\"");
}

}  // namespace io_detail

/// Parses and validates a problem file. Syntax errors report line and column.
inline ProblemFile parse_problem(const std::string& text) {
  using io_detail::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports a byte offset; convert it to line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line, col = 1;
      else ++col;
    }
    throw SchemaError("", "JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
  io_detail::expect_keys(j, "", {"ambient_dim", "support", "set", "degree", "options"}, {"ambient_dim", "support", "set"});

  ProblemFile p;
  const std::int64_t n = io_detail::get_int(j["ambient_dim"], "/ambient_dim");
  if (n <= 0) throw SchemaError("/ambient_dim", "must be a positive integer");
  p.ambient_dim = static_cast<std::size_t>(n);

  const json& s = j["support"];
  if (!s.is_array()) throw SchemaError("/support", "expected a list of integer vectors");
  if (s.empty()) throw SchemaError("/support", "support must not be empty");
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::string w = "/support/" + std::to_string(i);
    auto pt = io_detail::get_point(s[i], w, p.ambient_dim);
    for (auto x : pt)
      if (x < 0) throw SchemaError(w, "support points must be nonnegative");
    for (std::size_t k = 0; k < p.support.size(); ++k)
      if (p.support[k] == pt) throw SchemaError(w, "duplicates /support/" + std::to_string(k));
    p.support.push_back(std::move(pt));
  }

  p.set = io_detail::parse_set(j["set"], p.ambient_dim);

  if (j.contains("degree")) {
    const std::int64_t d = io_detail::get_int(j["degree"], "/degree");
    if (d <= 0) throw SchemaError("/degree", "must be a positive integer");
    p.degree = d;
  }
  if (j.contains("options")) {
    const json& o = j["options"];
    io_detail::expect_keys(o, "/options", {"assume_semigroup_generated", "max_extension_points"}, {});
    if (o.contains("assume_semigroup_generated")) {
      if (!o["assume_semigroup_generated"].is_boolean())
        throw SchemaError("/options/assume_semigroup_generated", "expected a boolean");
      p.options.assume_semigroup_generated = o["assume_semigroup_generated"];
    }
    if (o.contains("max_extension_points")) {
      const std::int64_t m = io_detail::get_int(o["max_extension_points"], "/options/max_extension_points");
      if (m <= 0) throw SchemaError("/options/max_extension_points", "must be a positive integer");
      p.options.max_extension_points = static_cast<std::size_t>(m);
    }
  }
  return p;
}

/// Facets of `c` over `labels`, with each equation split into two opposite
/// facets, plus the rays and lineality of `c`.
inline ResultFile make_result(const Cone& c, const PointConfig& labels) {
  const Cone m = dd_convert(c);
  ResultFile r;
  std::vector<IntVector> normals = m.ineqs();
  for (const auto& e : m.eqs()) {
    normals.push_back(e);
    normals.push_back(negated(e));
  }
  std::sort(normals.begin(), normals.end(), detail::lex_less);
  for (const auto& nu : normals) r.facets.push_back({nu, render_binomial(nu, labels).str()});
  r.extreme_rays_mod_lineality = m.rays();
  r.lineality_basis = m.lineality();
  r.lineality_dim = m.lineality_dim();
  return r;
}

namespace io_detail {

inline std::string compact(const IntVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + integer_json(v[i]).dump();
  return s + "]";
}

// "[]" when empty, otherwise one item per line.
inline std::string block(const std::vector<std::string>& items, const std::string& indent) {
  if (items.empty()) return "[]";
  std::string s = "[\n";
  for (std::size_t i = 0; i < items.size(); ++i) s += indent + "  " + items[i] + (i + 1 < items.size() ? ",\n" : "\n");
  return s + indent + "]";
}

}  // namespace io_detail

/// Canonical JSON: fixed key order, one vector or facet per line, so equal
/// results render to identical bytes. `indent` prefixes every line after the
/// first, for embedding.
inline std::string render_result_json(const ResultFile& r, const std::string& indent = "") {
  using io_detail::json;
  const std::string in = indent + "  ";
  std::vector<std::string> facets, rays, lin, warnings;
  for (const auto& f : r.facets)
    facets.push_back("{\"normal\": " + io_detail::compact(f.normal) + ", \"binomial\": " + json(f.binomial).dump() + "}");
  for (const auto& v : r.extreme_rays_mod_lineality) rays.push_back(io_detail::compact(v));
  for (const auto& v : r.lineality_basis) lin.push_back(io_detail::compact(v));
  for (const auto& w : r.warnings) warnings.push_back(json(w).dump());
  std::string s = "{\n";
  s += in + "\"facets\": " + io_detail::block(facets, in) + ",\n";
  s += in + "\"extreme_rays_mod_lineality\": " + io_detail::block(rays, in) + ",\n";
  s += in + "\"lineality_dim\": " + std::to_string(r.lineality_dim) + ",\n";
  s += in + "\"lineality_basis\": " + io_detail::block(lin, in) + ",\n";
  s += in + "\"warnings\": " + io_detail::block(warnings, in);
  if (r.stabilized_at)
    s += ",\n" + in + "\"stabilized_at\": " + std::visit([](const auto& v) { return json(v).dump(); }, *r.stabilized_at);
  return s + "\n" + indent + "}" + (indent.empty() ? "\n" : "");
}

/// One inequality per line; warnings are not part of the text form.
inline std::string render_result_text(const ResultFile& r) {
  std::string out;
  for (const auto& f : r.facets) out += f.binomial + "\n";
  return out;
}

inline ResultFile parse_result(const std::string& text) {
  using io_detail::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("JSON syntax error: ") + e.what());
  }
  io_detail::expect_keys(j, "",
                         {"facets", "extreme_rays_mod_lineality", "lineality_dim", "lineality_basis", "warnings",
                          "stabilized_at"},
                         {"facets", "extreme_rays_mod_lineality", "lineality_dim", "warnings"});
  ResultFile r;
  if (!j["facets"].is_array()) throw SchemaError("/facets", "expected a list");
  for (std::size_t i = 0; i < j["facets"].size(); ++i) {
    const std::string w = "/facets/" + std::to_string(i);
    const json& f = j["facets"][i];
    io_detail::expect_keys(f, w, {"normal", "binomial"}, {"normal", "binomial"});
    if (!f["binomial"].is_string()) throw SchemaError(w + "/binomial", "expected a string");
    r.facets.push_back({io_detail::vector_from_json(f["normal"], w + "/normal"), f["binomial"]});
  }
  r.extreme_rays_mod_lineality = io_detail::vectors_from_json(j["extreme_rays_mod_lineality"], "/extreme_rays_mod_lineality");
  const std::int64_t ld = io_detail::get_int(j["lineality_dim"], "/lineality_dim");
  if (ld < 0) throw SchemaError("/lineality_dim", "must be nonnegative");
  r.lineality_dim = static_cast<std::size_t>(ld);
  if (j.contains("lineality_basis")) r.lineality_basis = io_detail::vectors_from_json(j["lineality_basis"], "/lineality_basis");
  if (!j["warnings"].is_array()) throw SchemaError("/warnings", "expected a list of strings");
  for (std::size_t i = 0; i < j["warnings"].size(); ++i) {
    if (!j["warnings"][i].is_string()) throw SchemaError("/warnings/" + std::to_string(i), "expected a string");
    r.warnings.push_back(j["warnings"][i]);
  }
  if (j.contains("stabilized_at")) {
    const json& s = j["stabilized_at"];
    if (s.is_string()) r.stabilized_at = s.get<std::string>();
    else r.stabilized_at = io_detail::get_int(s, "/stabilized_at");
  }
  return r;
}

}  // namespace tropmom
