#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "latdisc/diophantine.hpp"
#include "latdisc/discrepancy.hpp"
#include "latdisc/fit.hpp"
#include "latdisc/fourier.hpp"
#include "latdisc/generators.hpp"
#include "latdisc/io.hpp"
#include "verify.hpp"

using namespace latdisc;

namespace {

enum Exit { kOk = 0, kFailure = 1, kInput = 2, kCostCap = 3, kExhausted = 4, kVerify = 5 };

struct RunConfig {
  std::string polygon_file;
  std::string preset_name;
  std::string rho_grid;
  std::string method = "both";
  std::string mode = "grid";
  std::string out;
  std::string suite = "all";
  int k_max = 64;
  int n_angles = 64;
  std::int64_t samples = 20000;
  std::uint64_t seed = 0;
  bool deterministic = false;
  std::optional<int> k_cap;
  std::int64_t rho_cap = 10000;
  int u = 2;
  double tol = kDefaultTol;
  std::optional<double> theta;
  double epsilon = 0.3;
};

Polygond load(const RunConfig& cfg) {
  if (cfg.polygon_file.empty() == cfg.preset_name.empty()) throw InputError("give exactly one of --polygon or --preset");
  Polygond p = cfg.polygon_file.empty() ? preset(cfg.preset_name) : load_polygon(cfg.polygon_file);
  if (!satisfies_normalization(p)) {
    std::cerr << "warning: polygon violates the normalization min side >= 1, min |P_h + P_{h+1}| >= 1\n";
  }
  return p;
}

void require_positive(std::int64_t v, const char* name) {
  if (v < 1) throw InputError(std::string(name) + " must be positive");
}

MotionSampleConfig motion_config(const RunConfig& cfg) {
  require_positive(cfg.samples, "--samples");
  if (cfg.mode != "grid" && cfg.mode != "mc") throw InputError("--mode must be grid or mc");
  // 100 translations (a 10 x 10 grid) per rotation; samples round up.
  const std::int64_t n_sigma = (cfg.samples + 99) / 100;
  if (n_sigma > kDirectSampleCap / 100) throw CostCapError("--samples exceeds the direct route cap");
  return {static_cast<int>(n_sigma), 100, cfg.mode == "grid" ? SamplingMode::kGrid : SamplingMode::kMonteCarlo, cfg.seed};
}

std::vector<double> grid(const RunConfig& cfg) { return parse_grid(cfg.rho_grid); }

void require_dilations(const std::vector<double>& rhos) {
  for (const double r : rhos) {
    if (!(r >= 1)) throw InputError("dilations must be >= 1, got " + format_double(r));
  }
}

// Everything is rendered into a buffer first so a failing command leaves no
// partial output file behind.
int emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + cfg.out);
  f << text;
  return kOk;
}

int cmd_classify(const RunConfig& cfg) {
  if (!(cfg.tol > 0)) throw InputError("--tol must be positive");
  const Polygond p = load(cfg);
  const auto cls = regularity_class(p, cfg.tol);
  nlohmann::json j = {{"tag", to_string(cls.tag)}, {"regular", cls.regular()}};
  if (cls.side) j["side"] = *cls.side;
  if (cls.partner) j["partner"] = *cls.partner;
  if (cls.circle) j["circle"] = {{"center", {cls.circle->center.x(), cls.circle->center.y()}}, {"radius", cls.circle->radius}};
  return emit(cfg, j.dump(2) + "\n");
}

int cmd_transform(const RunConfig& cfg) {
  const Polygond p = load(cfg);
  const auto rhos = grid(cfg);
  require_positive(cfg.n_angles, "--n-angles");
  std::ostringstream os;
  if (cfg.theta) {
    CsvWriter csv(os, {"rho", "theta", "re", "im"});
    for (const double rho : rhos) {
      const auto v = chi_hat(p, frequency(rho, *cfg.theta));
      csv.cell(rho).cell(*cfg.theta).cell(v.real()).cell(v.imag()).end_row();
    }
  } else {
    CsvWriter csv(os, {"rho", "value", "n_angles"});
    const double diam = diameter(p);
    for (const double rho : rhos) {
      if (!(rho > 0)) throw InputError("transform radii must be positive");
      const int n = std::max(cfg.n_angles, required_angles(rho, diam));
      csv.cell(rho).cell(spherical_average(p, rho, n)).cell(static_cast<long long>(n)).end_row();
    }
  }
  return emit(cfg, os.str());
}

int cmd_norm(const RunConfig& cfg) {
  const Polygond p = load(cfg);
  const auto rhos = grid(cfg);
  require_dilations(rhos);
  if (cfg.method != "direct" && cfg.method != "parseval" && cfg.method != "both") {
    throw InputError("--method must be direct, parseval or both");
  }
  const bool direct = cfg.method != "parseval";
  const bool pars = cfg.method != "direct";
  const MotionSampleConfig motion = direct ? motion_config(cfg) : MotionSampleConfig{};
  if (pars) {
    require_positive(cfg.k_max, "--k-max");
    require_positive(cfg.n_angles, "--n-angles");
    if (cfg.k_max > kParsevalKMaxCap) throw CostCapError("--k-max exceeds the Parseval cost cap");
  }
  std::ostringstream os;
  CsvWriter csv(os, {"rho", "method", "value", "normalized_value", "k_max_or_samples", "tail_or_stderr"});
  for (const double rho : rhos) {
    if (direct) {
      const auto e = l2_norm_direct(p, rho, motion);
      csv.cell(rho).cell(to_string(e.method)).cell(e.value).cell(normalized_norm(e));
      csv.cell(static_cast<long long>(e.samples)).cell(e.std_error.value_or(0.0)).end_row();
    }
    if (pars) {
      const auto e = l2_norm_parseval(p, rho, cfg.k_max, cfg.n_angles);
      csv.cell(rho).cell(to_string(e.method)).cell(e.value).cell(normalized_norm(e));
      csv.cell(static_cast<long long>(cfg.k_max)).cell(*e.tail_estimate).end_row();
    }
  }
  return emit(cfg, os.str());
}

// Direct-route sweep of normalized_norm with summary statistics on stderr.
int cmd_scan(const RunConfig& cfg) {
  const Polygond p = load(cfg);
  const auto rhos = grid(cfg);
  require_dilations(rhos);
  const MotionSampleConfig motion = motion_config(cfg);
  std::ostringstream os;
  CsvWriter csv(os, {"rho", "value", "normalized_value", "samples", "stderr"});
  std::vector<double> values;
  for (const double rho : rhos) {
    const auto e = l2_norm_direct(p, rho, motion);
    values.push_back(normalized_norm(e));
    csv.cell(rho).cell(e.value).cell(values.back()).cell(static_cast<long long>(e.samples)).cell(*e.std_error).end_row();
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  std::cerr << "max " << format_double(sorted.back()) << " min " << format_double(sorted.front()) << " min/median "
            << format_double(sorted.front() / median);
  if (rhos.size() >= 2 && rhos.back() > rhos.front()) {
    std::cerr << " slope " << format_double(loglog_fit(rhos, values).slope);
  }
  std::cerr << '\n';
  return emit(cfg, os.str());
}

int cmd_dip_search(const RunConfig& cfg) {
  const Polygond p = load(cfg);
  require_positive(cfg.u, "--u");
  if (cfg.k_cap) require_positive(*cfg.k_cap, "--k-cap");
  require_positive(cfg.rho_cap, "--rho-cap");
  const MotionSampleConfig motion = motion_config(cfg);
  DipCertificate cert;
  try {
    cert = construct_dip(p, cfg.u, cfg.k_cap, cfg.rho_cap);
  } catch (const DipNotFound& e) {
    std::cerr << "no dip up to rho_cap " << cfg.rho_cap << "; best candidate rho " << e.best_rho() << " with max |sin| "
              << format_double(e.best_max_value()) << " (bound " << format_double(1.0 / cfg.u) << ")\n";
    return kExhausted;
  }
  nlohmann::json table = nlohmann::json::array();
  std::vector<double> neighbors;
  const double at_dip = normalized_norm(l2_norm_direct(p, static_cast<double>(cert.rho_u), motion));
  table.push_back({{"rho", static_cast<double>(cert.rho_u)}, {"normalized_norm", at_dip}});
  for (const double off : {-0.35, -0.25, -0.15, -0.05, 0.05, 0.15, 0.25, 0.35}) {
    const double rho = static_cast<double>(cert.rho_u) + off;
    if (rho < 1) continue;
    neighbors.push_back(normalized_norm(l2_norm_direct(p, rho, motion)));
    table.push_back({{"rho", rho}, {"normalized_norm", neighbors.back()}});
  }
  std::sort(neighbors.begin(), neighbors.end());
  const double median = neighbors.empty() ? at_dip
                        : neighbors.size() % 2 ? neighbors[neighbors.size() / 2]
                                               : 0.5 * (neighbors[neighbors.size() / 2 - 1] + neighbors[neighbors.size() / 2]);
  nlohmann::json j = {{"certificate", certificate_to_json(cert)},
                      {"norm_table", table},
                      {"neighborhood_median", median},
                      {"dip_visible", at_dip < median}};
  return emit(cfg, j.dump(2) + "\n");
}

int cmd_decay(const RunConfig& cfg) {
  const Polygond p = load(cfg);
  const auto rhos = grid(cfg);
  const LineFit fit = decay_exponent_fit(p, rhos);
  std::ostringstream os;
  CsvWriter csv(os, {"rho", "spherical_average", "n_angles", "fitted_slope"});
  const double diam = diameter(p);
  for (const double rho : rhos) {
    const int n = required_angles(rho, diam);
    csv.cell(rho).cell(spherical_average(p, rho, n)).cell(static_cast<long long>(n)).cell(fit.slope).end_row();
  }
  return emit(cfg, os.str());
}

int cmd_verify(const RunConfig& cfg) {
  std::ostringstream os;
  const auto report = verify::run_suite(cfg.suite, cfg.seed, os);
  emit(cfg, os.str());
  return report.failures.empty() ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Lattice-point discrepancy laboratory for convex polygons"};
  app.require_subcommand(1);
  app.add_flag("--deterministic", cfg.deterministic, "Fixed-order single-threaded evaluation (always on; accepted for scripts)");
  app.add_option("--out", cfg.out, "Write output here instead of stdout");
  app.add_option("--seed", cfg.seed, "Seed for Monte Carlo sampling and verify suites");

  const auto polygon_opts = [&](CLI::App* sub) {
    sub->add_option("--polygon", cfg.polygon_file, "Polygon JSON file {\"vertices\": [[x, y], ...]}");
    sub->add_option("--preset", cfg.preset_name, "Named polygon")->description(
        "Named polygon: square, unit-square, triangle, rect-2x1, trapezoid, hex-sym-noncyclic, octagon-p, "
        "pgon-family-p:N:SEED, pgon-convex:N:SEED");
  };
  const auto sampling_opts = [&](CLI::App* sub) {
    sub->add_option("--samples", cfg.samples, "Direct-route motions (rounded up to a multiple of 100)");
    sub->add_option("--mode", cfg.mode, "Direct-route sampling: grid or mc");
  };
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Write output here instead of stdout");
    sub->add_option("--seed", cfg.seed, "Seed");
    sub->add_flag("--deterministic", cfg.deterministic, "Accepted for scripts; evaluation is always deterministic");
  };

  auto* classify = app.add_subcommand("classify", "Regularity class with witness (JSON)");
  polygon_opts(classify);
  common(classify);
  classify->add_option("--tol", cfg.tol, "Relative tolerance of the geometric predicates");

  auto* transform = app.add_subcommand("transform", "Spherical average sweep, or point values with --theta (CSV)");
  polygon_opts(transform);
  common(transform);
  transform->add_option("--rho-grid", cfg.rho_grid, "Radius grid")->required();
  transform->add_option("--n-angles", cfg.n_angles, "Minimum angular samples");
  transform->add_option("--theta", cfg.theta, "Evaluate chi_hat at direction theta instead");

  auto* norm = app.add_subcommand("norm", "Discrepancy norm by direct counting and/or Parseval (CSV)");
  polygon_opts(norm);
  common(norm);
  sampling_opts(norm);
  norm->add_option("--rho-grid", cfg.rho_grid, "Dilation grid")->required();
  norm->add_option("--method", cfg.method, "direct, parseval or both");
  norm->add_option("--k-max", cfg.k_max, "Parseval truncation radius");
  norm->add_option("--n-angles", cfg.n_angles, "Parseval angular floor");

  auto* scan = app.add_subcommand("scan", "Direct-route normalized norm sweep (CSV, summary on stderr)");
  polygon_opts(scan);
  common(scan);
  sampling_opts(scan);
  scan->add_option("--rho-grid", cfg.rho_grid, "Dilation grid")->required();

  auto* dip = app.add_subcommand("dip-search", "Dip dilation certificate and nearby norms (JSON)");
  polygon_opts(dip);
  common(dip);
  sampling_opts(dip);
  dip->add_option("--u", cfg.u, "Smallness level 1/u");
  dip->add_option("--k-cap", cfg.k_cap, "Cap on |k| in the frequency set");
  dip->add_option("--rho-cap", cfg.rho_cap, "Largest dilation scanned");

  auto* decay = app.add_subcommand("decay", "Spherical average decay with log-log slope (CSV)");
  polygon_opts(decay);
  common(decay);
  decay->add_option("--rho-grid", cfg.rho_grid, "Radius grid (>= 8 values over >= 1.5 decades)")->required();

  auto* verify = app.add_subcommand("verify", "Cross-oracle invariant suites");
  common(verify);
  verify->add_option("suite", cfg.suite, "geometry, transform, counting, parseval, diophantine or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (classify->parsed()) return cmd_classify(cfg);
    if (transform->parsed()) return cmd_transform(cfg);
    if (norm->parsed()) return cmd_norm(cfg);
    if (scan->parsed()) return cmd_scan(cfg);
    if (dip->parsed()) return cmd_dip_search(cfg);
    if (decay->parsed()) return cmd_decay(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const CostCapError& e) {
    std::cerr << "cost cap: " << e.what() << '\n';
    return kCostCap;
  } catch (const SearchExhausted& e) {
    std::cerr << "search exhausted: " << e.what() << '\n';
    return kExhausted;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
