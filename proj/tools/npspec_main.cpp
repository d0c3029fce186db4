#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "npspec/config.hpp"
#include "npspec/io.hpp"
#include "npspec/resonance.hpp"
#include "npspec/spectral.hpp"
#include "npspec/validation.hpp"

namespace {

using namespace npspec;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::optional<std::string> domain;
  std::optional<double> R, r, eps_c, delta, kmax;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config_path, "JSON config file");
  cmd->add_option("--out", a.out_path, "output CSV path");
  cmd->add_option("--domain", a.domain, "crescent|touching")
      ->check(CLI::IsMember({"crescent", "touching"}));
  cmd->add_option("--R", a.R, "outer disk radius");
  cmd->add_option("--r", a.r, "inner disk radius");
  cmd->add_option("--eps-c", a.eps_c, "inclusion permittivity");
  cmd->add_option("--delta", a.delta, "dissipation");
  cmd->add_option("--kmax", a.kmax, "frequency truncation");
  cmd->add_option("--seed", a.seed, "seed for randomized checks");
}

RunConfig load_config(const CommonArgs& a) {
  RunConfig c;
  if (!a.config_path.empty()) {
    std::ifstream in(a.config_path);
    if (!in) throw std::invalid_argument("cannot open config: " + a.config_path);
    nlohmann::json j;
    in >> j;
    c = config_from_json(j);
  }
  if (a.domain)
    c.domain.kind = (*a.domain == "crescent") ? DomainKind::Crescent : DomainKind::TouchingDisks;
  if (a.R) c.domain.R = *a.R;
  if (a.r) c.domain.r = *a.r;
  if (a.eps_c) {
    c.eps_c = *a.eps_c;
    c.has_dielectric = true;
  }
  if (a.delta) {
    c.delta = *a.delta;
    c.has_dielectric = true;
  }
  if (a.kmax) c.k_max = *a.kmax;
  if (a.seed) c.seed = *a.seed;
  c.validate();
  return c;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open output: " + path);
  return os;
}

std::string json_sibling(const std::string& csv_path) {
  const auto dot = csv_path.find_last_of('.');
  const auto slash = csv_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return csv_path + ".json";
  return csv_path.substr(0, dot) + ".json";
}

void write_summary(const std::string& csv_path, const nlohmann::json& j) {
  std::ofstream os(json_sibling(csv_path));
  os << j.dump(2) << "\n";
  std::cout << j.dump(2) << "\n";
}

int cmd_validate(const CommonArgs& a, bool tiny, bool corrupt) {
  RunConfig c = load_config(a);
  validation::ValidationOptions opt;
  opt.seed = c.seed;
  opt.tiny = tiny;
  opt.corrupt_symbol_sign = corrupt;
  const validation::ValidationReport rep = validation::run_validation(opt);
  std::ostringstream report;
  report << "# npspec validate config=" << config_hash_hex(c) << " seed=" << c.seed
         << (tiny ? " tiny" : "") << (corrupt ? " corrupt-symbol-sign" : "") << "\n";
  validation::print_report(report, rep);
  if (!a.out_path.empty()) {
    auto os = open_out(a.out_path);
    os << report.str();
  }
  std::cout << report.str();
  return rep.all_pass() ? 0 : 1;
}

int cmd_spectrum(const CommonArgs& a) {
  RunConfig c = load_config(a);
  if (!c.has_source) throw std::invalid_argument("spectrum: config needs a source");
  auto grid = std::make_shared<FrequencyGrid>(
      build_grid(c.resolved_k_max(), c.n_per_decade, c.k_min));
  const SpectralMeasure m = q_density(c.source, c.domain, grid);
  const double mass = m.mass();
  const double want = norm_sq(boundary_data(c.source, c.domain, grid), c.domain);

  auto os = open_out(a.out_path.empty() ? "spectrum.csv" : a.out_path);
  const std::string hash = config_hash_hex(c);
  csv_begin(os, "spectrum", hash, {"t", "Q", "channel", "kappa"});
  const int neg = negative_channel(c.domain), pos = positive_channel(c.domain);
  csv_row(os, {fmt17(-0.5), fmt17(m.limit_lower), std::to_string(neg), fmt17(0.0)});
  for (std::size_t j = 0; j < m.t_nodes.size(); ++j)
    csv_row(os, {fmt17(m.t_nodes[j]), fmt17(m.density[j]), std::to_string(m.channel[j]),
                 fmt17(m.kappa[j])});
  csv_row(os, {fmt17(0.5), fmt17(m.limit_upper), std::to_string(pos), fmt17(0.0)});

  nlohmann::json j;
  j["command"] = "spectrum";
  j["config"] = config_to_json(c);
  j["config_hash"] = hash;
  j["mass"] = mass;
  j["boundary_data_norm_sq"] = want;
  j["mass_identity_relative_gap"] = std::abs(mass - want) / want;
  j["limit_lower"] = m.limit_lower;
  j["limit_upper"] = m.limit_upper;
  j["rows"] = m.t_nodes.size() + 2;
  write_summary(a.out_path.empty() ? "spectrum.csv" : a.out_path, j);
  return 0;
}

int cmd_resonance(const CommonArgs& a) {
  RunConfig c = load_config(a);
  if (!c.has_source) throw std::invalid_argument("resonance: config needs a source");
  if (!c.has_dielectric) throw std::invalid_argument("resonance: config needs a dielectric");
  const double lambda0 = make_lambda(c.eps_c, 1.0).lambda0;
  const std::vector<double> deltas = c.sweep_deltas();
  const double kmax = c.resolved_k_max();

  std::vector<SweepPoint> sweep;
  nlohmann::json j;
  j["command"] = "resonance";
  j["config"] = config_to_json(c);
  j["config_hash"] = config_hash_hex(c);
  j["lambda0"] = lambda0;

  if (lambda0 >= -0.5 && lambda0 < 0.5 && lambda0 != 0.0) {
    const BlowupResult r =
        blowup_limit(c.eps_c, c.source, c.domain, kmax, c.n_per_decade, c.k_min, deltas);
    sweep = r.sweep;
    j["resonant"] = true;
    j["extrapolated_limit"] = r.estimate;
    j["predicted"] = r.predicted;
    j["relative_gap"] = std::abs(r.estimate - r.predicted) / std::abs(r.predicted);
  } else if (lambda0 == 0.0) {
    const BoundedCaseResult r =
        bounded_case_check(c.source, c.domain, kmax, c.n_per_decade, c.k_min, deltas);
    // recover plain norms for the CSV
    for (const SweepPoint& p : r.sweep)
      sweep.push_back({p.delta, p.norm_sq / (p.delta * p.delta)});
    j["resonant"] = false;
    j["note"] = "lambda0 = 0: order-delta blow-up does not occur";
    j["max_delta2_norm_sq"] = r.max_scaled;
    j["majorant"] = r.majorant;
    j["within_majorant"] = r.max_scaled <= r.majorant;
  } else {
    auto grid = std::make_shared<FrequencyGrid>(build_grid(kmax, c.n_per_decade, c.k_min));
    double lo = 1e300, hi = 0.0;
    for (double d : deltas) {
      const double ns = resonance_norm({c.eps_c, d}, c.source, c.domain, grid);
      sweep.push_back({d, ns});
      lo = std::min(lo, ns);
      hi = std::max(hi, ns);
    }
    j["resonant"] = false;
    j["note"] = "lambda0 outside [-1/2,1/2): no resonance";
    j["sweep_variation"] = (hi - lo) / lo;
  }

  auto os = open_out(a.out_path.empty() ? "resonance.csv" : a.out_path);
  csv_begin(os, "resonance", config_hash_hex(c),
            {"delta", "norm_sq", "delta_times_norm_sq"});
  for (const SweepPoint& p : sweep)
    csv_row(os, {fmt17(p.delta), fmt17(p.norm_sq), fmt17(p.delta * p.norm_sq)});
  write_summary(a.out_path.empty() ? "resonance.csv" : a.out_path, j);
  return 0;
}

int cmd_field(const CommonArgs& a, const std::string& points_path) {
  RunConfig c = load_config(a);
  if (!c.has_source) throw std::invalid_argument("field: config needs a source");
  if (!c.has_dielectric) throw std::invalid_argument("field: config needs a dielectric");
  std::ifstream pts(points_path);
  if (!pts) throw std::invalid_argument("cannot open points file: " + points_path);

  auto grid = std::make_shared<FrequencyGrid>(
      build_grid(c.resolved_k_max(), c.n_per_decade, c.k_min));
  const PUDensity phi = solve_transmission({c.eps_c, c.delta}, c.source, c.domain, grid);

  auto os = open_out(a.out_path.empty() ? "field.csv" : a.out_path);
  csv_begin(os, "field", config_hash_hex(c), {"x", "y", "u", "flag"});
  std::string line;
  std::size_t rows = 0;
  while (std::getline(pts, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double x, y;
    if (!(ss >> x >> y)) continue;  // header or malformed line
    StripPoint w = plane_to_strip({x, y});
    int flag = 0;
    for (Component comp : {Component::Outer, Component::Inner}) {
      const double xc = c.domain.line_abscissa(comp);
      if (std::abs(w.x - xc) < 1e-9) {
        // on the boundary line: nudge to the nearest side
        w.x = xc + (w.x >= xc ? 1.0 : -1.0) * 1e-6;
        flag = 1;
      }
    }
    const double u = newtonian_potential(c.source, {x, y}) +
                     single_layer_eval(phi, w, c.domain);
    csv_row(os, {fmt17(x), fmt17(y), fmt17(u), std::to_string(flag)});
    ++rows;
  }

  nlohmann::json j;
  j["command"] = "field";
  j["config"] = config_to_json(c);
  j["config_hash"] = config_hash_hex(c);
  j["rows"] = rows;
  write_summary(a.out_path.empty() ? "field.csv" : a.out_path, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral calculus of the Neumann-Poincare operator on touching-disk domains"};
  app.require_subcommand(1);

  CommonArgs va, sa, ra, fa;
  bool tiny = false, corrupt = false;
  std::string points_path;

  CLI::App* validate = app.add_subcommand("validate", "run the property suite");
  add_common(validate, va);
  validate->add_flag("--tiny", tiny, "small grids, relaxed tolerances (flagged)");
  validate->add_flag("--corrupt-symbol-sign", corrupt,
                     "test hook: corrupt one symbol coupling sign")
      ->group("");  // hidden

  CLI::App* spectrum = app.add_subcommand("spectrum", "spectral measure density Q(t)");
  add_common(spectrum, sa);

  CLI::App* resonance = app.add_subcommand("resonance", "dissipation sweep and blow-up rate");
  add_common(resonance, ra);

  CLI::App* field = app.add_subcommand("field", "total field u = F + S[phi] at points");
  add_common(field, fa);
  field->add_option("--points", points_path, "CSV of x,y evaluation points")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(va, tiny, corrupt);
    if (spectrum->parsed()) return cmd_spectrum(sa);
    if (resonance->parsed()) return cmd_resonance(ra);
    if (field->parsed()) return cmd_field(fa, points_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
