#pragma once

// The computations behind each CLI subcommand, returning canonical results.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tropmom/problem_io.hpp"

namespace tropmom {

namespace cmd_detail {

inline PseudoOptions pseudo_options(const ProblemFile& p) { return {p.options.max_extension_points}; }

inline std::vector<std::string> set_warnings(const SemialgSpec& s) { return trop_of_set(s).warnings; }

// Guards the semigroup hypothesis behind the pseudo-moment description.
inline void require_semigroup(const ProblemFile& p) {
  if (p.set.kind != SetKind::binomials || p.options.assume_semigroup_generated) return;
  if (!semigroup_generation_check(p.set))
    throw PreconditionError("the differences plus - minus do not generate the lattice points of the cone they span; "
                            "pass --assume-semigroup-generated to proceed anyway");
}

}  // namespace cmd_detail

inline ResultFile cmd_moment(const ProblemFile& p) {
  const auto cfg = p.config();
  const auto k = trop_moment_cone(cfg, p.set);
  ResultFile r = make_result(k.cone(), cfg);
  r.warnings = cmd_detail::set_warnings(p.set);
  return r;
}

/// With a degree: the degree-d projection. Without: the stable cone, with
/// stabilized_at the first degree reaching it when that degree is found
/// within the size guard.
inline ResultFile cmd_pseudomoment(const ProblemFile& p) {
  const auto cfg = p.config();
  const auto opt = cmd_detail::pseudo_options(p);
  cmd_detail::require_semigroup(p);
  ResultFile r;
  if (p.degree) {
    r = make_result(trop_pseudomoment(cfg, p.set, *p.degree, opt).cone.cone, cfg);
  } else {
    const auto stable = stable_pseudomoment(cfg, p.set, opt);
    r = make_result(stable.cone.cone, cfg);
    if (const auto d = find_stabilization_degree(stable, opt)) r.stabilized_at = *d;
    else r.stabilized_at = std::string("stable (closed form)");
  }
  r.warnings = cmd_detail::set_warnings(p.set);
  return r;
}

/// Facets: moment facets not valid on the stable pseudo-moment cone. Rays
/// and lineality are those of the pseudo-moment cone.
inline ResultFile cmd_gap(const ProblemFile& p) {
  const auto cfg = p.config();
  cmd_detail::require_semigroup(p);
  const auto rep = gap_report(cfg, p.set, cmd_detail::pseudo_options(p));
  ResultFile r = make_result(rep.pseudo.cone.cone, cfg);
  r.facets.clear();
  for (std::size_t i = 0; i < rep.normals.size(); ++i) r.facets.push_back({rep.normals[i], rep.inequalities[i].str()});
  r.warnings = cmd_detail::set_warnings(p.set);
  return r;
}

struct MediatedListing {
  std::vector<LatticePoint> vertices;
  std::vector<LatticePoint> mediated;
  std::vector<LatticePoint> discarded;

  std::string json() const {
    auto list = [](const std::vector<LatticePoint>& pts) {
      std::vector<std::string> items;
      for (const auto& p : pts) items.push_back(io_detail::compact(to_integer(p)));
      return io_detail::block(items, "  ");
    };
    return "{\n  \"vertices\": " + list(vertices) + ",\n  \"mediated\": " + list(mediated) +
           ",\n  \"discarded\": " + list(discarded) + "\n}\n";
  }

  std::string text() const {
    auto line = [](const char* head, const std::vector<LatticePoint>& pts) {
      std::string s = head;
      for (const auto& p : pts) s += " " + format_point(p);
      return s + "\n";
    };
    return line("mediated:", mediated) + line("discarded:", discarded);
  }
};

inline MediatedListing cmd_mediated(const std::vector<LatticePoint>& vertices) {
  MediatedListing out{vertices, mediated_set(vertices), {}};
  const std::set<LatticePoint> kept(out.mediated.begin(), out.mediated.end());
  for (const auto& p : lattice_points(vertices))
    if (!kept.count(p)) out.discarded.push_back(p);
  std::sort(out.discarded.begin(), out.discarded.end(), graded_lex_less);
  return out;
}

/// Parses "x1,y1;x2,y2;..." (parentheses and spaces ignored).
inline std::vector<LatticePoint> parse_vertex_list(const std::string& s) {
  std::vector<LatticePoint> pts;
  std::string cleaned;
  for (char ch : s)
    if (ch != '(' && ch != ')' && ch != ' ') cleaned += ch;
  std::size_t start = 0;
  while (start <= cleaned.size()) {
    const std::size_t end = std::min(cleaned.find(';', start), cleaned.size());
    const std::string item = cleaned.substr(start, end - start);
    if (item.empty()) throw UsageError("--vertices: empty point in \"" + s + "\"");
    LatticePoint p;
    std::size_t pos = 0;
    while (pos <= item.size()) {
      const std::size_t comma = std::min(item.find(',', pos), item.size());
      const std::string num = item.substr(pos, comma - pos);
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(num, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (num.empty() || used != num.size()) throw UsageError("--vertices: \"" + num + "\" is not an integer");
      p.push_back(v);
      pos = comma + 1;
    }
    if (!pts.empty() && p.size() != pts.front().size()) throw UsageError("--vertices: points of different dimension");
    pts.push_back(std::move(p));
    start = end + 1;
  }
  return pts;
}

struct ScanListing {
  ScanReport report;
  PointConfig labels;

  std::string json() const {
    std::string s = "{\n  \"d_min\": " + std::to_string(report.d_min) + ",\n  \"degrees\": [";
    for (std::size_t i = 0; i < report.cones.size(); ++i) {
      const auto& [d, c] = report.cones[i];
      s += (i ? ",\n" : "\n");
      s += "    {\"degree\": " + std::to_string(d) + ", \"result\": " + render_result_json(make_result(c, labels), "    ") + "}";
    }
    s += report.cones.empty() ? "],\n" : "\n  ],\n";
    s += "  \"stabilized_at\": " + (report.stabilized_at ? std::to_string(*report.stabilized_at) : std::string("null")) + ",\n";
    s += "  \"matches_closed_form\": " +
         std::string(!report.matches_closed_form ? "null" : *report.matches_closed_form ? "true" : "false") + "\n}\n";
    return s;
  }

  std::string text() const {
    std::string out;
    for (const auto& [d, c] : report.cones) {
      const auto r = make_result(c, labels);
      out += "degree " + std::to_string(d) + ": " + std::to_string(r.facets.size()) + " facets\n";
      out += render_result_text(r);
    }
    out += "stabilized_at: " + (report.stabilized_at ? std::to_string(*report.stabilized_at) : std::string("none")) + "\n";
    return out;
  }
};

inline ScanListing cmd_scan(const ProblemFile& p, std::int64_t d_max) {
  cmd_detail::require_semigroup(p);
  const auto cfg = p.config();
  return {stabilization_scan(cfg, p.set, d_max, cmd_detail::pseudo_options(p)), cfg};
}

}  // namespace tropmom
