// tropmom: binomial moment inequalities from JSON problem files.
//
// Exit codes: 0 success, 2 input or schema error, 3 mathematical
// precondition failure, 4 resource guard.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tropmom/tropmom.hpp"

namespace {

enum Exit { ok = 0, input_error = 2, precondition = 3, resource = 4 };

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tropmom::UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Flags {
  std::string format = "json";
  bool assume_semigroup = false;
  std::optional<std::size_t> max_points;
  std::optional<std::int64_t> degree;
  std::int64_t d_max = 0;
  std::string file;
  std::string vertices;
};

tropmom::ProblemFile load(const Flags& f) {
  auto p = tropmom::parse_problem(slurp(f.file));
  if (f.assume_semigroup) p.options.assume_semigroup_generated = true;
  if (f.max_points) p.options.max_extension_points = *f.max_points;
  if (f.degree) p.degree = *f.degree;
  return p;
}

void emit(const Flags& f, const tropmom::ResultFile& r) {
  if (f.format == "text") {
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << tropmom::render_result_text(r);
  } else {
    std::cout << tropmom::render_result_json(r);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropicalized moment and pseudo-moment cones"};
  app.require_subcommand(1);
  app.fallthrough();  // inherited, so global flags may follow the subcommand
  Flags f;
  app.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--assume-semigroup-generated", f.assume_semigroup,
               "Skip the check that the binomial generators generate their lattice semigroup");
  app.add_option("--max-extension-points", f.max_points, "Largest extension support before giving up")
      ->check(CLI::PositiveNumber);

  auto* moment = app.add_subcommand("moment", "Facets of the tropicalized moment cone");
  moment->add_option("file", f.file, "Problem file")->required();
  auto* pseudo = app.add_subcommand("pseudomoment", "Facets of the tropicalized pseudo-moment cone");
  pseudo->add_option("file", f.file, "Problem file")->required();
  pseudo->add_option("--degree", f.degree, "Fixed degree instead of the stable cone")->check(CLI::PositiveNumber);
  auto* gap = app.add_subcommand("gap", "Moment facets without a sums-of-squares certificate");
  gap->add_option("file", f.file, "Problem file")->required();
  auto* mediated = app.add_subcommand("mediated", "Maximal mediated set of a lattice simplex");
  mediated->add_option("--vertices", f.vertices, "Vertices as \"x1,y1;x2,y2;...\"")->required();
  auto* scan = app.add_subcommand("scan", "Pseudo-moment cones for every degree up to --dmax");
  scan->add_option("file", f.file, "Problem file")->required();
  scan->add_option("--dmax", f.d_max, "Largest degree")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return input_error;
  }

  try {
    if (moment->parsed()) emit(f, tropmom::cmd_moment(load(f)));
    if (pseudo->parsed()) emit(f, tropmom::cmd_pseudomoment(load(f)));
    if (gap->parsed()) emit(f, tropmom::cmd_gap(load(f)));
    if (mediated->parsed()) {
      const auto listing = tropmom::cmd_mediated(tropmom::parse_vertex_list(f.vertices));
      std::cout << (f.format == "text" ? listing.text() : listing.json());
    }
    if (scan->parsed()) {
      const auto listing = tropmom::cmd_scan(load(f), f.d_max);
      std::cout << (f.format == "text" ? listing.text() : listing.json());
    }
  } catch (const tropmom::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input_error;
  } catch (const tropmom::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return precondition;
  } catch (const tropmom::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return resource;
  }
  return ok;
}
