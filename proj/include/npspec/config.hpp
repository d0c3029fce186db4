#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "npspec/geometry.hpp"
#include "npspec/resonance.hpp"

namespace npspec {

//! Effective run parameters: domain, discretizations, source, dielectric and
//! sweep. JSON config plus CLI overrides produce one of these; the canonical
//! serialization is hashed into every output file.
struct RunConfig {
  DomainSpec domain{DomainKind::Crescent, 1.0, 0.5};
  double k_min = 1e-6;
  double k_max = 0.0;  // 0 → 200/gap
  int n_per_decade = 32;
  double y_max = 40.0;
  std::uint64_t y_n = 4097;
  bool has_source = false;
  DipoleSource source{{5.0, 0.0}, 1.0, 0.0};
  bool has_dielectric = false;
  double eps_c = -1.0 / 3.0;
  double delta = 1e-3;
  double sweep_start = 1e-1;
  double sweep_end = 1e-4;
  int sweep_n = 7;
  std::uint64_t seed = 2024;

  double resolved_k_max() const { return k_max > 0.0 ? k_max : 200.0 / domain.gap(); }

  std::vector<double> sweep_deltas() const {
    std::vector<double> d(static_cast<std::size_t>(sweep_n));
    for (int i = 0; i < sweep_n; ++i)
      d[static_cast<std::size_t>(i)] =
          sweep_n == 1 ? sweep_start
                       : sweep_start * std::pow(sweep_end / sweep_start,
                                                static_cast<double>(i) / (sweep_n - 1));
    return d;
  }

  void validate() const {
    domain.validate();
    if (!(k_min > 0.0)) throw std::invalid_argument("config: k_min must be positive");
    if (k_max != 0.0 && !(k_max > k_min))
      throw std::invalid_argument("config: k_max must exceed k_min");
    if (n_per_decade < 4) throw std::invalid_argument("config: n_per_decade < 4");
    if (!(y_max > 0.0) || y_n < 16) throw std::invalid_argument("config: bad trace grid");
    if (has_dielectric && eps_c == 1.0)
      throw std::invalid_argument("config: eps_c = 1 is degenerate");
    if (has_dielectric && !(delta > 0.0))
      throw std::invalid_argument("config: delta must be positive");
    if (sweep_n < 1 || !(sweep_start > 0.0) || !(sweep_end > 0.0))
      throw std::invalid_argument("config: bad sweep");
    if (has_source && !source_outside_closure(source, domain))
      throw std::invalid_argument("config: source inside the closed domain");
  }
};

inline RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  if (j.contains("domain")) {
    const auto& d = j.at("domain");
    if (d.contains("kind")) {
      const std::string k = d.at("kind").get<std::string>();
      if (k == "crescent")
        c.domain.kind = DomainKind::Crescent;
      else if (k == "touching")
        c.domain.kind = DomainKind::TouchingDisks;
      else
        throw std::invalid_argument("config: domain.kind must be crescent or touching");
    }
    c.domain.R = d.value("R", c.domain.R);
    c.domain.r = d.value("r", c.domain.r);
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    c.k_min = g.value("k_min", c.k_min);
    c.k_max = g.value("k_max", c.k_max);
    c.n_per_decade = g.value("n_per_decade", c.n_per_decade);
  }
  if (j.contains("trace_grid")) {
    const auto& g = j.at("trace_grid");
    c.y_max = g.value("y_max", c.y_max);
    c.y_n = g.value("n", c.y_n);
  }
  if (j.contains("source")) {
    const auto& s = j.at("source");
    c.has_source = true;
    const auto z = s.at("z");
    c.source.z = {z.at(0).get<double>(), z.at(1).get<double>()};
    const auto a = s.at("moment");
    c.source.ax = a.at(0).get<double>();
    c.source.ay = a.at(1).get<double>();
  }
  if (j.contains("dielectric")) {
    const auto& d = j.at("dielectric");
    c.has_dielectric = true;
    c.eps_c = d.at("eps_c").get<double>();
    c.delta = d.value("delta", c.delta);
  }
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    c.sweep_start = s.value("delta_start", c.sweep_start);
    c.sweep_end = s.value("delta_end", c.sweep_end);
    c.sweep_n = s.value("n", c.sweep_n);
  }
  c.seed = j.value("seed", c.seed);
  return c;
}

inline nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["domain"] = {{"kind", c.domain.kind == DomainKind::Crescent ? "crescent" : "touching"},
                 {"R", c.domain.R},
                 {"r", c.domain.r}};
  j["grid"] = {{"k_min", c.k_min}, {"k_max", c.k_max}, {"n_per_decade", c.n_per_decade}};
  j["trace_grid"] = {{"y_max", c.y_max}, {"n", c.y_n}};
  if (c.has_source)
    j["source"] = {{"z", {c.source.z.x, c.source.z.y}}, {"moment", {c.source.ax, c.source.ay}}};
  if (c.has_dielectric) j["dielectric"] = {{"eps_c", c.eps_c}, {"delta", c.delta}};
  j["sweep"] = {{"delta_start", c.sweep_start}, {"delta_end", c.sweep_end}, {"n", c.sweep_n}};
  j["seed"] = c.seed;
  return j;
}

//! FNV-1a over the canonical (key-sorted) serialization.
inline std::uint64_t config_hash(const RunConfig& c) {
  const std::string s = config_to_json(c).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string config_hash_hex(const RunConfig& c) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(c)));
  return buf;
}

}  // namespace npspec
