#include "chq/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace chq {

void RunConfig::validate() const {
  std::vector<Violation> v;
  if (!(riesz_tol > 0.0)) v.push_back({"riesz_tol", "riesz_tol > 0 required"});
  if (!(boundary_band >= 0.0)) v.push_back({"boundary_band", "boundary_band >= 0 required"});
  if (!(grid_r_min > 1.0)) v.push_back({"grid.r_min", "r_min > 1 required"});
  if (!(grid_r_max > grid_r_min)) v.push_back({"grid.r_max", "r_max > r_min required"});
  if (grid_points < 2) v.push_back({"grid.points", "points >= 2 required"});
  if (threads < 1) v.push_back({"threads", "threads >= 1 required"});
  if (!v.empty()) throw DomainError(std::move(v));
}

VerifySettings RunConfig::verify_settings() const {
  VerifySettings s;
  s.r_min = grid_r_min;
  s.r_max = grid_r_max;
  s.points = grid_points;
  s.tol = riesz_tol;
  s.threads = threads;
  return s;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error("cannot parse " + path + ": " + e.what());
  }
}

double json_real(const json& value, const std::string& field) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec == std::errc() && res.ptr == s.data() + s.size()) return x;
  }
  throw DomainError(field, "number or decimal string required");
}

namespace {

int json_int(const json& value, const std::string& field) {
  const double x = json_real(value, field);
  if (x != std::floor(x) || std::abs(x) > 1e9) throw DomainError(field, "integer required");
  return static_cast<int>(x);
}

template <class T>
void read_if(const json& j, const char* key, T& target) {
  if (!j.contains(key)) return;
  if constexpr (std::is_same_v<T, int>)
    target = json_int(j.at(key), key);
  else if constexpr (std::is_same_v<T, std::uint64_t>)
    target = static_cast<std::uint64_t>(json_real(j.at(key), key));
  else
    target = json_real(j.at(key), key);
}

std::vector<double> real_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw DomainError(field, "array required");
  std::vector<double> out;
  for (const auto& x : j) out.push_back(json_real(x, field));
  return out;
}

}  // namespace

RunConfig load_config(const std::optional<std::string>& path) {
  RunConfig c;
  if (path) {
    const json j = read_json_file(*path);
    if (!j.is_object()) throw Error(*path + ": config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "riesz_tol") c.riesz_tol = json_real(value, key);
      else if (key == "boundary_band") c.boundary_band = json_real(value, key);
      else if (key == "threads") c.threads = json_int(value, key);
      else if (key == "seed") c.seed = static_cast<std::uint64_t>(json_int(value, key));
      else if (key == "grid") {
        read_if(value, "r_min", c.grid_r_min);
        read_if(value, "r_max", c.grid_r_max);
        read_if(value, "points", c.grid_points);
      } else {
        throw DomainError(key, "unknown config key");
      }
    }
  }
  apply_env_overrides(c);
  c.validate();
  return c;
}

void apply_env_overrides(RunConfig& c) {
  auto env = [](const char* name) -> std::optional<json> {
    const char* v = std::getenv(name);
    if (!v) return std::nullopt;
    return json(std::string(v));
  };
  if (auto v = env("CHQ_RIESZ_TOL")) c.riesz_tol = json_real(*v, "CHQ_RIESZ_TOL");
  if (auto v = env("CHQ_BOUNDARY_BAND")) c.boundary_band = json_real(*v, "CHQ_BOUNDARY_BAND");
  if (auto v = env("CHQ_GRID_R_MIN")) c.grid_r_min = json_real(*v, "CHQ_GRID_R_MIN");
  if (auto v = env("CHQ_GRID_R_MAX")) c.grid_r_max = json_real(*v, "CHQ_GRID_R_MAX");
  if (auto v = env("CHQ_GRID_POINTS")) c.grid_points = json_int(*v, "CHQ_GRID_POINTS");
  if (auto v = env("CHQ_THREADS")) c.threads = json_int(*v, "CHQ_THREADS");
  if (auto v = env("CHQ_SEED"))
    c.seed = static_cast<std::uint64_t>(json_int(*v, "CHQ_SEED"));
}

ProblemParams params_from_json(const json& j, std::initializer_list<const char*> ignore) {
  if (!j.is_object()) throw DomainError("params", "JSON object required");
  std::map<std::string, double> raw;
  std::vector<Violation> bad;
  for (const auto& [key, value] : j.items()) {
    bool skip = false;
    for (const char* k : ignore) skip = skip || key == k;
    if (skip) continue;
    try {
      raw[key] = json_real(value, key);
    } catch (const DomainError& e) {
      for (const auto& v : e.violations()) bad.push_back(v);
    }
  }
  if (!bad.empty()) throw DomainError(std::move(bad));
  return validate_params(raw);
}

json to_json(const ProblemParams& P) {
  return {{"N", P.N}, {"m", P.m}, {"p", P.p}, {"q", P.q},
          {"alpha", P.alpha}, {"mu", P.mu}, {"theta", P.theta}};
}

json to_json(const BetaRoots& r) {
  return {{"beta_minus", r.beta_minus},         {"beta_plus", r.beta_plus},
          {"beta_star", r.beta_star},           {"degenerate", r.degenerate},
          {"residual_minus", r.residual_minus}, {"residual_plus", r.residual_plus}};
}

json to_json(const Verdict& v) {
  json w = json::array();
  for (const auto& x : v.witnesses)
    w.push_back({{"condition", x.condition}, {"paper_result", x.cited_result},
                 {"margin", x.margin}});
  return {{"outcome", to_string(v.outcome)}, {"witnesses", w},
          {"boundary", v.boundary_conditions}};
}

json to_json(const std::vector<ConditionEntry>& trace) {
  json out = json::array();
  for (const auto& e : trace) {
    json item = {{"condition", e.condition},
                 {"formula", e.formula},
                 {"satisfied", e.satisfied},
                 {"margin", e.margin},
                 {"within_band", e.state == Cmp::Within}};
    if (!e.cited_result.empty()) item["paper_result"] = e.cited_result;
    out.push_back(item);
  }
  return out;
}

json to_json(const RadialProfile& u) {
  if (u.kind == ProfileKind::Power)
    return {{"variant", "power"}, {"kappa", u.kappa}, {"gamma", u.gamma}};
  return {{"variant", "power_log"}, {"kappa", u.kappa}, {"gamma", u.gamma},
          {"tau", u.tau},           {"s", u.s}};
}

RadialProfile profile_from_json(const json& j) {
  if (!j.is_object() || !j.contains("variant")) throw DomainError("profile", "variant required");
  const std::string variant = j.at("variant").get<std::string>();
  auto need = [&](const char* key) {
    if (!j.contains(key)) throw DomainError(key, "required");
    return json_real(j.at(key), key);
  };
  RadialProfile u;
  if (variant == "power") {
    u = RadialProfile::power(need("kappa"), need("gamma"));
  } else if (variant == "power_log") {
    u = RadialProfile::power_log(need("kappa"), need("gamma"), need("tau"), need("s"));
  } else {
    throw DomainError("variant", "power or power_log required");
  }
  u.validate();
  return u;
}

RadialDensity density_from_json(const json& j) {
  if (!j.is_object() || !j.contains("variant")) throw DomainError("profile", "variant required");
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "tabulated") {
    if (!j.contains("radii") || !j.contains("values") || !j.contains("tail_exponent"))
      throw DomainError("profile", "radii, values and tail_exponent required");
    return RadialDensity::tabulated(real_list(j.at("radii"), "radii"),
                                    real_list(j.at("values"), "values"),
                                    json_real(j.at("tail_exponent"), "tail_exponent"));
  }
  if (variant == "indicator") {
    double height = 1.0;
    read_if(j, "height", height);
    if (!j.contains("lo") || !j.contains("hi")) throw DomainError("profile", "lo and hi required");
    return RadialDensity::indicator(json_real(j.at("lo"), "lo"), json_real(j.at("hi"), "hi"),
                                    height);
  }
  return RadialDensity::from_profile(profile_from_json(j));
}

json to_json(const Certificate& c) {
  return {{"profile", to_json(c.profile)},
          {"subcase", to_string(c.subcase)},
          {"gamma_interval", {c.gamma_lo, c.gamma_hi}},
          {"kappa_history", c.kappa_history},
          {"s_history", c.s_history},
          {"subcase_tie", c.subcase_tie},
          {"inherited_taxonomy", c.inherited_taxonomy}};
}

Certificate certificate_from_json(const json& j) {
  const json& c = j.contains("certificate") ? j.at("certificate") : j;
  if (!c.is_object() || !c.contains("profile"))
    throw DomainError("certificate", "profile required");
  Certificate cert;
  cert.profile = profile_from_json(c.at("profile"));
  if (c.contains("subcase")) cert.subcase = subcase_from_string(c.at("subcase").get<std::string>());
  if (c.contains("gamma_interval")) {
    const auto iv = real_list(c.at("gamma_interval"), "gamma_interval");
    if (iv.size() != 2) throw DomainError("gamma_interval", "two entries required");
    cert.gamma_lo = iv[0];
    cert.gamma_hi = iv[1];
  }
  if (c.contains("kappa_history")) cert.kappa_history = real_list(c.at("kappa_history"), "kappa_history");
  if (c.contains("s_history")) cert.s_history = real_list(c.at("s_history"), "s_history");
  if (c.contains("subcase_tie")) cert.subcase_tie = c.at("subcase_tie").get<bool>();
  if (c.contains("inherited_taxonomy"))
    cert.inherited_taxonomy = c.at("inherited_taxonomy").get<bool>();
  return cert;
}

json to_json(const VerificationReport& r) {
  return {{"passed", r.passed},
          {"min_margin", r.min_margin},
          {"asymptotic_ok", r.asymptotic_ok},
          {"c1_ok", r.c1_ok},
          {"kappa", r.kappa},
          {"tail_log_margin", r.tail_log_margin},
          {"bound_case", r.bound_case},
          {"failure", r.failure},
          {"grid", r.grid},
          {"margins", r.margins}};
}

json to_json(const RieszValue& v) {
  json out = {{"r", v.r}, {"divergent", v.divergent}};
  if (!v.divergent) {
    out["lower"] = v.lower;
    out["upper"] = v.upper;
    out["truncation_radius"] = v.truncation_radius;
    out["evals"] = v.evals;
  }
  return out;
}

json region_json(const std::vector<RegionRecord>& records) {
  json out = json::array();
  for (const auto& r : records)
    out.push_back({{"p", r.p}, {"q", r.q}, {"outcome", to_string(r.outcome)},
                   {"witness", r.witness}});
  return out;
}

RegionScanSpec region_spec_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("region", "JSON object required");
  RegionScanSpec spec;
  json base = j;
  for (const char* k : {"grid", "p_min", "p_max", "q_min", "q_max", "steps", "format"})
    base.erase(k);
  base["p"] = 1.0;
  base["q"] = 0.0;
  spec.base = params_from_json(base);
  const json& g = j.contains("grid") ? j.at("grid") : j;
  read_if(g, "p_min", spec.p_min);
  read_if(g, "p_max", spec.p_max);
  read_if(g, "q_min", spec.q_min);
  read_if(g, "q_max", spec.q_max);
  read_if(g, "steps", spec.steps);
  if (j.contains("format")) {
    const auto f = j.at("format").get<std::string>();
    if (f == "csv") spec.format = RegionScanSpec::Format::Csv;
    else if (f == "json") spec.format = RegionScanSpec::Format::Json;
    else throw DomainError("format", "csv or json required");
  }
  spec.validate();
  return spec;
}

}  // namespace chq
