// gmh: validate, inspect and simplify generalized maps, and compute their homology.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmh/gmap.hpp"
#include "gmh/homology.hpp"
#include "gmh/io.hpp"
#include "gmh/orientation.hpp"
#include "gmh/simplify.hpp"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kDomain = 1, kInput = 2 };

struct Config {
  std::string input;
  std::string format;
  bool removal_only = false;
  bool contraction_first = false;
  bool no_simplify = false;
  bool project = false;
  std::optional<std::uint64_t> seed;
  std::uint32_t grid = 16;
  long count = 20;
  std::optional<std::size_t> voxels;
  std::string out;
  bool json = false;
};

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string detect_format(const Config& c) {
  if (!c.format.empty()) return c.format;
  const auto ext = std::filesystem::path(c.input).extension().string();
  if (ext == ".off" || ext == ".OFF") return "off";
  if (ext == ".gmap") return "gmap";
  if (ext == ".vox" || ext == ".txt" || ext == ".xyz") return "voxels";
  throw InputError("cannot tell the format of " + c.input + "; pass --format");
}

gmh::GMap load(const Config& c) {
  const auto fmt = detect_format(c);
  if (fmt == "off") return gmh::load_off(c.input).map;
  if (fmt == "voxels") return gmh::load_voxels(c.input);
  return gmh::read_gmap_table(c.input);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::vector<std::string>> torsion_strings(const gmh::HomologyResult& h) {
  std::vector<std::vector<std::string>> out;
  for (const auto& level : h.torsion) {
    out.emplace_back();
    for (const auto& t : level) out.back().push_back(t.get_str());
  }
  return out;
}

json chain_json(const gmh::ChainComplex& cc, int p, const std::vector<mpz_class>& chain) {
  json cells = json::array(), coefficients = json::array();
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (chain[k] == 0) continue;
    cells.push_back(cc.labels[static_cast<std::size_t>(p)][k]);
    coefficients.push_back(chain[k].get_si());
  }
  return {{"cells", cells}, {"coefficients", coefficients}};
}

std::ostream& output(const Config& c, std::ofstream& file) {
  if (c.out.empty()) return std::cout;
  file.open(c.out);
  if (!file) throw gmh::Error(gmh::ErrorKind::Io, "cannot write " + c.out);
  return file;
}

gmh::SimplifyOptions options_for(const Config& c) {
  gmh::SimplifyOptions o;
  o.contractions = !c.removal_only;
  o.contraction_first = c.contraction_first;
  o.record_chains = c.project;
  return o;
}

int cmd_validate(const Config& c) {
  const auto g = load(c);
  const auto report = gmh::validate(g);
  const auto sub = gmh::check_subclass(g);
  std::string signs = "ok";
  if (report.ok()) {
    try {
      gmh::assign_signs(g);
    } catch (const gmh::Error& e) {
      signs = e.what();
    }
  } else {
    signs = "skipped";
  }
  if (c.json) {
    std::cout << json{{"valid", report.ok()},
                      {"violations", report.violations.size()},
                      {"free_darts", sub.free_dart_violations.size()},
                      {"multi_links", sub.multi_link_violations.size()},
                      {"signs", signs}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << (report.ok() ? "valid " : "invalid ") << g.dimension() << "-Gmap with " << g.num_darts()
              << " darts\n";
    if (!report.ok()) std::cout << report.describe();
    for (const auto& [d, i] : sub.free_dart_violations) std::cout << "dart " << d + 1 << " is " << i << "-free\n";
    for (const auto& [d, i] : sub.multi_link_violations)
      std::cout << "dart " << d + 1 << " is " << i << "-linked inside its own cell\n";
    std::cout << "orientation: " << signs << '\n';
  }
  return report.ok() && sub.ok() ? kOk : kDomain;
}

int cmd_stats(const Config& c) {
  const auto g = load(c);
  const auto counts = gmh::CellCatalog::build(g).counts();
  if (c.json) {
    std::cout << json{{"dimension", g.dimension()}, {"darts", g.num_darts()}, {"cells", counts}}.dump(2) << '\n';
  } else {
    std::cout << "dimension " << g.dimension() << "\ndarts " << g.num_darts() << '\n';
    for (std::size_t k = 0; k < counts.size(); ++k) std::cout << "S" << k << ' ' << counts[k] << '\n';
  }
  return kOk;
}

json log_json(const gmh::OperationLog& log) {
  json records = json::array();
  for (const auto& r : log.records) {
    json rec{{"kind", r.collapse ? "collapse" : r.kind == gmh::OpKind::Removal ? "removal" : "contraction"},
             {"operation", r.kind == gmh::OpKind::Removal ? "removal" : "contraction"},
             {"dim", r.dim},
             {"cell", r.cell},
             {"darts", r.cell_darts.size()}};
    if (r.absorbed != gmh::kNoDart) rec["merged"] = {r.survivor, r.absorbed};
    if (!r.vanished.empty()) rec["vanished"] = r.vanished;
    records.push_back(rec);
  }
  return {{"dimension", log.dimension},
          {"initial_darts", log.initial_darts},
          {"initial_cells", log.initial_cells},
          {"final_cells", log.final_cells},
          {"records", records}};
}

int cmd_simplify(const Config& c) {
  const auto g = load(c);
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = gmh::simplify(gmh::assign_signs(g), options_for(c));
  const double elapsed = seconds_since(t0);
  std::ofstream file;
  gmh::write_gmap_table(res.map.base, output(c, file));
  if (!c.out.empty()) {
    std::ofstream log(c.out + ".log.json");
    log << log_json(res.log).dump(2) << '\n';
  }
  std::ostream& info = c.out.empty() ? std::cerr : std::cout;
  json stats{{"darts", g.num_darts()},
             {"cells", res.log.initial_cells},
             {"final_darts", res.map.base.num_darts()},
             {"final_cells", res.log.final_cells},
             {"operations", res.log.records.size()},
             {"time_simplify", elapsed}};
  info << (c.json ? stats.dump(2) : stats.dump()) << '\n';
  return kOk;
}

int cmd_homology(const Config& c) {
  const auto g = load(c);
  const auto signed_map = gmh::assign_signs(g);
  gmh::RunRow row;
  row.name = c.input;
  row.darts = g.num_darts();
  row.cells = gmh::CellCatalog::build(g).counts();

  const auto t0 = std::chrono::steady_clock::now();
  gmh::SimplifyResult res;
  if (c.no_simplify) {
    res.map = signed_map;
    res.log.dimension = g.dimension();
    res.log.initial_darts = g.num_darts();
  } else {
    res = gmh::simplify(signed_map, options_for(c));
  }
  row.time_simplify = seconds_since(t0);
  row.final_darts = res.map.base.num_darts();
  row.final_cells = gmh::CellCatalog::build(res.map.base).counts();

  const auto t1 = std::chrono::steady_clock::now();
  const auto cc = gmh::build_chain_complex(res.map, c.no_simplify ? nullptr : &res.log.final_labels);
  const auto h = gmh::homology(cc, true);
  row.time_homology = seconds_since(t1);
  row.betti = h.betti;
  row.torsion = torsion_strings(h);

  json extra;
  json gens = json::array();
  for (std::size_t p = 0; p < h.generators.size(); ++p) {
    gens.push_back(json::array());
    for (const auto& gen : h.generators[p]) {
      auto j = chain_json(cc, static_cast<int>(p), gen.chain);
      j["order"] = gen.order.get_str();
      gens.back().push_back(j);
    }
  }
  extra["generators"] = gens;
  if (c.project && !c.no_simplify) {
    const auto original = gmh::build_chain_complex(signed_map);
    const auto projected = gmh::project_generators(h, cc, res.log, original);
    json pj = json::array();
    for (std::size_t p = 0; p < projected.size(); ++p) {
      pj.push_back(json::array());
      for (const auto& chain : projected[p]) pj.back().push_back(chain_json(original, static_cast<int>(p), chain));
    }
    extra["projected_generators"] = pj;
  }
  std::ofstream file;
  gmh::write_report({row}, output(c, file), c.json ? gmh::ReportFormat::Json : gmh::ReportFormat::Text, extra);
  return kOk;
}

int cmd_batch(const Config& c) {
  if (!c.seed) throw InputError("batch needs --seed");
  if (c.count <= 0) throw gmh::Error(gmh::ErrorKind::EmptyBatch, "batch needs --count of at least 1");
  if (c.grid == 0) throw InputError("--grid must be positive");
  const std::size_t cells = static_cast<std::size_t>(c.grid) * c.grid * c.grid;
  const std::size_t k = c.voxels.value_or(cells / 2);
  std::vector<gmh::RunRow> both, removal;
  bool agree = true;
  for (long r = 0; r < c.count; ++r) {
    const std::uint64_t seed = *c.seed + static_cast<std::uint64_t>(r);
    const auto g = gmh::voxels_to_gmap(gmh::random_voxels(c.grid, k, seed));
    const auto s = gmh::assign_signs(g);
    const auto oracle = gmh::homology_invariants(gmh::build_chain_complex(s));
    const auto counts = gmh::CellCatalog::build(g).counts();
    for (bool removal_only : {false, true}) {
      gmh::RunRow row;
      row.name = "run" + std::to_string(r) + (removal_only ? "/removal" : "/both");
      row.seed = seed;
      row.darts = g.num_darts();
      row.cells = counts;
      gmh::SimplifyOptions o;
      o.contractions = !removal_only;
      o.contraction_first = c.contraction_first;
      const auto t0 = std::chrono::steady_clock::now();
      const auto res = gmh::simplify(s, o);
      row.time_simplify = seconds_since(t0);
      const auto t1 = std::chrono::steady_clock::now();
      const auto h = gmh::homology_invariants(gmh::build_chain_complex(res.map));
      row.time_homology = seconds_since(t1);
      row.final_darts = res.map.base.num_darts();
      row.final_cells = res.log.final_cells;
      row.betti = h.betti;
      row.torsion = torsion_strings(h);
      agree = agree && h.betti == oracle.betti && h.torsion == oracle.torsion;
      (removal_only ? removal : both).push_back(std::move(row));
    }
  }
  std::ofstream file;
  std::ostream& out = output(c, file);
  if (c.json) {
    json doc{{"seed", *c.seed},
             {"grid", c.grid},
             {"voxels", k},
             {"count", c.count},
             {"oracle_agrees", agree},
             {"both", gmh::report_document(both, true)},
             {"removal_only", gmh::report_document(removal, true)}};
    out << doc.dump(2) << '\n';
  } else {
    out << "# seed " << *c.seed << " grid " << c.grid << " voxels " << k << "\n# removal and contraction\n";
    gmh::write_report(both, out, gmh::ReportFormat::Text, {}, true);
    out << "# removal only\n";
    gmh::write_report(removal, out, gmh::ReportFormat::Text, {}, true);
    out << "# oracle " << (agree ? "agrees" : "DISAGREES") << '\n';
  }
  return agree ? kOk : kDomain;
}

int exit_code(gmh::ErrorKind kind) {
  switch (kind) {
    case gmh::ErrorKind::Parse:
    case gmh::ErrorKind::Io:
    case gmh::ErrorKind::NotQuasiManifold:
    case gmh::ErrorKind::OutOfRange:
    case gmh::ErrorKind::EmptyBatch:
      return kInput;
    default:
      return kDomain;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homology of generalized maps through removal and contraction"};
  app.require_subcommand(1);
  Config c;

  auto input_opts = [&c](CLI::App* sub) {
    sub->add_option("input", c.input, "input file")->required();
    sub->add_option("--format", c.format, "input format")->check(CLI::IsMember({"off", "voxels", "gmap"}));
    sub->add_flag("--json", c.json, "machine-readable output");
  };
  auto pipeline_opts = [&c](CLI::App* sub) {
    sub->add_flag("--removal-only", c.removal_only, "skip the contraction phase");
    sub->add_flag("--contraction-first", c.contraction_first, "run contractions before removals");
    sub->add_option("--out", c.out, "output file (default stdout)");
  };

  auto* validate = app.add_subcommand("validate", "check the map axioms and subclass conditions");
  input_opts(validate);
  auto* stats = app.add_subcommand("stats", "dart and cell counts");
  input_opts(stats);
  auto* simplify = app.add_subcommand("simplify", "write the simplified map as a table");
  input_opts(simplify);
  pipeline_opts(simplify);
  auto* homology = app.add_subcommand("homology", "Betti numbers, torsion and generators");
  input_opts(homology);
  pipeline_opts(homology);
  homology->add_flag("--no-simplify", c.no_simplify, "compute on the input map directly");
  homology->add_flag("--project-generators", c.project, "express generators on the input cells");
  auto* batch = app.add_subcommand("batch", "random voxel sets through both pipeline modes");
  batch->add_option("--seed", c.seed, "first seed; run r uses seed + r");
  batch->add_option("--grid", c.grid, "grid side");
  batch->add_option("--count", c.count, "number of runs");
  batch->add_option("--voxels", c.voxels, "occupied cells per run (default half the grid)");
  batch->add_option("--out", c.out, "output file (default stdout)");
  batch->add_flag("--contraction-first", c.contraction_first, "run contractions before removals");
  batch->add_flag("--json", c.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*validate) return cmd_validate(c);
    if (*stats) return cmd_stats(c);
    if (*simplify) return cmd_simplify(c);
    if (*homology) return cmd_homology(c);
    return cmd_batch(c);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const gmh::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  }
}
