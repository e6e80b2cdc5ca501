// freeconv: free/boolean/monotone convolutions of probability measures,
// density grids and atom reports from their analytic transforms.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "freeconv/free_conv.hpp"
#include "freeconv/measure_io.hpp"
#include "freeconv/otherconv.hpp"
#include "freeconv/recovery.hpp"
#include "freeconv/semigroup.hpp"

using namespace freeconv;
using nlohmann::json;

namespace {

struct JobOptions {
  std::vector<std::string> inputs;
  std::optional<double> t;
  std::vector<double> grid;   // LO HI N
  int circle_n = 0;
  double tol = 1e-13;
  double seed_height = 1e-2;
  std::string format = "csv";
  std::string output = "out.csv";
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct JobResult {
  DensityGrid grid;
  std::string branch_note;
  double max_residual = 0.0;
  long evaluations = 0;
};

void write_csv(const std::string& path, const DensityGrid& grid) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidSpecFile, "cannot write " + path);
  out << "x,density\n";
  for (size_t i = 0; i < grid.abscissae.size(); ++i) {
    out << fmt17(grid.abscissae[i]) << ",";
    if (std::isfinite(grid.densities[i]))
      out << fmt17(grid.densities[i]);
    else
      out << "nan";
    out << "\n";
  }
}

json report_json(const JobResult& res) {
  json atoms = json::array();
  for (const auto& a : res.grid.atoms.entries) {
    atoms.push_back({{"pos", a.location},
                     {"mass", a.mass},
                     {"rule", atom_rule_name(a.rule)}});
  }
  json doc;
  doc["schema"] = 1;
  doc["atoms"] = atoms;
  doc["mass_account"] = {
      {"continuous", res.grid.mass_account.continuous_mass},
      {"atomic", res.grid.mass_account.atomic_mass},
      {"deficit", res.grid.mass_account.deficit}};
  doc["residual_diagnostics"] = {
      {"max_subordination_residual", res.max_residual},
      {"evaluations", res.evaluations},
      {"flagged", res.max_residual > 1e-8}};
  doc["branch_note"] = res.branch_note;
  return doc;
}

void emit(const JobOptions& opt, const JobResult& res) {
  if (opt.format == "json") {
    json doc = report_json(res);
    json xs = json::array(), ds = json::array();
    for (size_t i = 0; i < res.grid.abscissae.size(); ++i) {
      xs.push_back(res.grid.abscissae[i]);
      if (std::isfinite(res.grid.densities[i]))
        ds.push_back(res.grid.densities[i]);
      else
        ds.push_back(nullptr);
    }
    doc["grid"] = {{"x", xs}, {"density", ds}};
    std::ofstream out(opt.output);
    if (!out)
      throw Error(ErrorCode::InvalidSpecFile, "cannot write " + opt.output);
    out << doc.dump(2) << "\n";
  } else {
    write_csv(opt.output, res.grid);
    std::ofstream rep(opt.output + ".report.json");
    if (!rep)
      throw Error(ErrorCode::InvalidSpecFile,
                  "cannot write " + opt.output + ".report.json");
    rep << report_json(res).dump(2) << "\n";
  }
}

GridSpec grid_spec_for(const JobOptions& opt, bool circle) {
  GridSpec spec;
  if (circle) {
    if (opt.circle_n <= 0)
      throw Error(ErrorCode::BadParameters,
                  "circle-domain output needs --circle N");
    spec.kind = GridSpec::Kind::circle;
    spec.n = opt.circle_n;
  } else {
    if (opt.grid.size() != 3)
      throw Error(ErrorCode::BadParameters,
                  "line-domain output needs --grid LO HI N");
    spec.kind = GridSpec::Kind::line;
    spec.lo = opt.grid[0];
    spec.hi = opt.grid[1];
    spec.n = static_cast<int>(opt.grid[2]);
    if (spec.n < 2 || spec.lo >= spec.hi)
      throw Error(ErrorCode::BadParameters, "bad --grid LO HI N");
  }
  spec.schedule.y0 = opt.seed_height;
  return spec;
}

std::vector<AtomCandidate> to_candidates(const AtomReport& rep) {
  std::vector<AtomCandidate> out;
  for (const auto& e : rep.entries) out.push_back({e.location, e.rule});
  return out;
}

std::vector<AtomCandidate> merge_scanned(std::vector<AtomCandidate> cands,
                                         const TransformHandle& handle,
                                         const GridSpec& spec) {
  if (spec.kind != GridSpec::Kind::line) return cands;
  for (const auto& c :
       scan_f_zeros(handle, spec.lo, spec.hi, spec.n, spec.schedule)) {
    bool dup = false;
    for (const auto& have : cands)
      if (std::abs(have.location - c.location) < 1e-6) dup = true;
    if (!dup) cands.push_back(c);
  }
  return cands;
}

int run_job(const std::string& op, const JobOptions& opt) {
  SolverConfig cfg;
  cfg.tolerance = opt.tol;

  const bool needs_two = (op == "add-free" || op == "mult-free" ||
                          op == "add-boolean" || op == "mult-boolean" ||
                          op == "add-monotone" || op == "mult-monotone");
  const bool needs_t =
      (op == "power-add" || op == "power-mult" || op == "psi-map");
  if (needs_two && opt.inputs.size() != 2)
    throw Error(ErrorCode::BadParameters, op + " takes two measure files");
  if (!needs_two && opt.inputs.size() != 1)
    throw Error(ErrorCode::BadParameters, op + " takes one measure file");
  if (needs_t && !opt.t)
    throw Error(ErrorCode::BadParameters, op + " needs --t");
  if (!needs_t && opt.t)
    throw Error(ErrorCode::BadParameters, op + " does not take --t");

  std::vector<Measure> ms;
  for (const auto& path : opt.inputs) ms.push_back(load_measure_file(path));

  JobResult res;
  TransformHandle handle;
  std::vector<AtomCandidate> cands;
  std::shared_ptr<ResidualStats> stats;
  bool circle_out = false;
  bool scan_zeros = false;

  if (op == "add-free") {
    if (ms[0].domain() == Domain::circle || ms[1].domain() == Domain::circle)
      throw Error(ErrorCode::DomainMismatch, "add-free needs line measures");
    SubordinationPair pair = free_add(ms[0], ms[1], cfg);
    handle = pair.convolved;
    stats = pair.stats;
    cands = to_candidates(atoms_free_add(ms[0], ms[1]));
  } else if (op == "mult-free") {
    if (ms[0].domain() != ms[1].domain())
      throw Error(ErrorCode::DomainMismatch, "mult-free needs equal domains");
    if (ms[0].domain() == Domain::halfline) {
      SubordinationPair pair = free_mult_halfline(ms[0], ms[1], cfg);
      handle = pair.convolved;
      stats = pair.stats;
    } else if (ms[0].domain() == Domain::circle) {
      SubordinationPair pair = free_mult_circle(ms[0], ms[1], cfg);
      handle = pair.convolved;
      stats = pair.stats;
      circle_out = true;
    } else {
      throw Error(ErrorCode::DomainMismatch,
                  "mult-free needs halfline or circle measures");
    }
    cands = to_candidates(atoms_free_mult(ms[0], ms[1]));
  } else if (op == "add-boolean") {
    if (ms[0].domain() == Domain::circle || ms[1].domain() == Domain::circle)
      throw Error(ErrorCode::DomainMismatch, "add-boolean needs line measures");
    handle = boolean_add(ms[0], ms[1]);
    scan_zeros = true;
  } else if (op == "mult-boolean") {
    if (ms[0].domain() != Domain::circle || ms[1].domain() != Domain::circle)
      throw Error(ErrorCode::DomainMismatch,
                  "mult-boolean needs circle measures");
    handle = boolean_mult_circle(ms[0], ms[1]);
    circle_out = true;
  } else if (op == "add-monotone") {
    if (ms[0].domain() == Domain::circle || ms[1].domain() == Domain::circle)
      throw Error(ErrorCode::DomainMismatch,
                  "add-monotone needs line measures");
    handle = monotone_add(ms[0], ms[1]);
    scan_zeros = true;
  } else if (op == "mult-monotone") {
    if (ms[0].domain() != Domain::halfline ||
        ms[1].domain() != Domain::halfline)
      throw Error(ErrorCode::DomainMismatch,
                  "mult-monotone needs halfline measures");
    handle = monotone_mult_halfline(ms[0], ms[1]);
    scan_zeros = true;
  } else if (op == "power-add") {
    if (ms[0].domain() == Domain::circle)
      throw Error(ErrorCode::DomainMismatch, "power-add needs a line measure");
    PowerResult p = free_add_power(ms[0], *opt.t, cfg);
    handle = p.transformed;
    stats = p.stats;
    res.branch_note = p.branch_note;
    cands = to_candidates(atoms_add_power(ms[0], *opt.t));
  } else if (op == "power-mult") {
    if (ms[0].domain() == Domain::halfline) {
      PowerResult p = free_mult_power_halfline(ms[0], *opt.t, cfg);
      handle = p.transformed;
      stats = p.stats;
      res.branch_note = p.branch_note;
      cands = to_candidates(atoms_mult_power_halfline(ms[0], *opt.t));
    } else if (ms[0].domain() == Domain::circle) {
      PowerResult p = free_mult_power_circle(ms[0], *opt.t, cfg);
      handle = p.transformed;
      stats = p.stats;
      res.branch_note = p.branch_note;
      cands = to_candidates(atoms_mult_power_circle(ms[0], *opt.t));
      circle_out = true;
    } else {
      throw Error(ErrorCode::DomainMismatch,
                  "power-mult needs a halfline or circle measure");
    }
  } else if (op == "psi-map") {
    if (ms[0].domain() == Domain::real) {
      handle = boolean_to_free_add(ms[0], *opt.t, cfg);
      res.branch_note = handle.provenance();
      scan_zeros = true;
    } else if (ms[0].domain() == Domain::circle) {
      handle = boolean_to_free_mult_circle(ms[0], *opt.t, cfg);
      res.branch_note = handle.provenance();
      circle_out = true;
    } else {
      throw Error(ErrorCode::DomainMismatch,
                  "psi-map needs a real or circle measure");
    }
  } else {
    throw Error(ErrorCode::BadParameters, "unknown operation " + op);
  }

  GridSpec spec = grid_spec_for(opt, circle_out);
  if (scan_zeros) cands = merge_scanned(cands, handle, spec);
  res.grid = recover_grid(handle, spec, cands);
  if (stats) {
    res.max_residual = stats->max_residual.load();
    res.evaluations = stats->evaluations.load();
  } else if (handle.stats()) {
    res.max_residual = handle.stats()->max_residual.load();
    res.evaluations = handle.stats()->evaluations.load();
  }
  emit(opt, res);
  if (res.max_residual > 1e-6) {
    std::cerr << "solver residual " << res.max_residual
              << " exceeds 1e-6; results are suspect\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "freeconv: free, boolean, and monotone convolutions of probability "
      "measures via analytic subordination"};
  app.require_subcommand(1);

  JobOptions opt;
  const std::vector<std::pair<std::string, std::string>> ops = {
      {"add-free", "free additive convolution (boxplus) of measures on R"},
      {"mult-free",
       "free multiplicative convolution (boxtimes), half-line or circle"},
      {"add-boolean", "boolean additive convolution of measures on R"},
      {"mult-boolean", "boolean multiplicative convolution on the circle"},
      {"add-monotone", "monotone additive convolution (order matters)"},
      {"mult-monotone", "monotone multiplicative convolution on [0,inf)"},
      {"power-add", "free additive power mu^{boxplus t}, --t >= 1"},
      {"power-mult", "free multiplicative power mu^{boxtimes t}, --t >= 1"},
      {"psi-map",
       "boolean-to-free bijection Psi_t (t = 2: Bercovici-Pata), --t > 1"}};

  for (const auto& [name, desc] : ops) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("inputs", opt.inputs, "measure spec files (JSON)")
        ->required()
        ->expected(1, 2);
    sub->add_option("--t", opt.t, "convolution power / bijection parameter");
    sub->add_option("--grid", opt.grid, "LO HI N output grid (line densities)")
        ->expected(3);
    sub->add_option("--circle", opt.circle_n, "N output angles on [0,2pi)");
    sub->add_option("--tol", opt.tol, "fixed point tolerance");
    sub->add_option("--seed-height", opt.seed_height,
                    "initial height of the boundary schedule");
    sub->add_option("--format", opt.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("-o,--output", opt.output, "output path");
  }

  CLI11_PARSE(app, argc, argv);

  const std::string op = app.get_subcommands().front()->get_name();
  try {
    return run_job(op, opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::SolverFailure:
      case ErrorCode::MaxIterations:
      case ErrorCode::InversionDiverged:
      case ErrorCode::NonConvergent:
      case ErrorCode::OscillatoryLimit:
        return 3;
      default:
        return 2;  // validation
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
