#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "chq/beta.hpp"
#include "chq/certify.hpp"
#include "chq/classifier.hpp"
#include "chq/model.hpp"
#include "chq/region.hpp"
#include "chq/riesz.hpp"

namespace chq {

using json = nlohmann::json;

/// Run-wide settings: file values first, then CHQ_* environment variables.
struct RunConfig {
  double riesz_tol = 1e-6;
  double boundary_band = 1e-9;
  double grid_r_min = 1.01;
  double grid_r_max = 1e3;
  int grid_points = 64;
  int threads = 1;
  std::uint64_t seed = 20240601;
  std::string out;

  void validate() const;
  ComparisonPolicy policy() const { return {boundary_band}; }
  VerifySettings verify_settings() const;
};

/// Config keys: riesz_tol, boundary_band, grid{r_min, r_max, points},
/// threads, seed. Environment: CHQ_RIESZ_TOL, CHQ_BOUNDARY_BAND,
/// CHQ_GRID_R_MIN, CHQ_GRID_R_MAX, CHQ_GRID_POINTS, CHQ_THREADS, CHQ_SEED.
RunConfig load_config(const std::optional<std::string>& path);
void apply_env_overrides(RunConfig& config);

/// Throws Error naming the path when the file cannot be read or parsed.
json read_json_file(const std::string& path);

/// A JSON number or a decimal string.
double json_real(const json& value, const std::string& field);

/// Keys N, m, p, q, alpha, mu, optional theta; values may be decimal strings.
/// Keys listed in `ignore` are skipped.
ProblemParams params_from_json(const json& j, std::initializer_list<const char*> ignore = {});
json to_json(const ProblemParams& params);

json to_json(const BetaRoots& roots);
json to_json(const Verdict& verdict);
json to_json(const std::vector<ConditionEntry>& trace);

json to_json(const RadialProfile& profile);
RadialProfile profile_from_json(const json& j);

/// Density for the riesz command: the profile variants plus "tabulated" and
/// "indicator".
RadialDensity density_from_json(const json& j);

json to_json(const Certificate& cert);
Certificate certificate_from_json(const json& j);
json to_json(const VerificationReport& report);
json to_json(const RieszValue& value);

json region_json(const std::vector<RegionRecord>& records);
RegionScanSpec region_spec_from_json(const json& j);

}  // namespace chq
