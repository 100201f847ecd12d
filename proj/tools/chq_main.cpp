#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chq/io.hpp"
#include "chq/selftest.hpp"

namespace {

using chq::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitNotExists = 3;
constexpr int kExitBoundary = 4;

struct Globals {
  std::optional<std::string> params_path;
  std::optional<std::string> config_path;
  std::optional<std::string> out_path;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> inline_params;
};

chq::RunConfig make_config(const Globals& g) {
  chq::RunConfig c = chq::load_config(g.config_path);
  if (g.threads) c.threads = *g.threads;
  if (g.seed) c.seed = *g.seed;
  if (g.out_path) c.out = *g.out_path;
  c.validate();
  return c;
}

json params_json(const Globals& g) {
  json j = json::object();
  if (g.params_path) j = chq::read_json_file(*g.params_path);
  if (!j.is_object()) throw chq::DomainError("params", "JSON object required");
  for (const auto& [k, v] : g.inline_params) j[k] = v;
  return j;
}

void emit(const chq::RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out);
  if (!out) throw chq::Error("cannot write " + c.out);
  out << text;
}

void emit(const chq::RunConfig& c, const json& j) { emit(c, j.dump(2) + "\n"); }

int exit_for(chq::Outcome o) {
  switch (o) {
    case chq::Outcome::Exists: return kExitOk;
    case chq::Outcome::NotExists: return kExitNotExists;
    case chq::Outcome::Boundary: return kExitBoundary;
  }
  return kExitInput;
}

int cmd_beta(const Globals& g) {
  const auto c = make_config(g);
  const json j = params_json(g);
  for (const char* key : {"N", "m", "mu"})
    if (!j.contains(key)) throw chq::DomainError(key, "required");
  const double n = chq::json_real(j.at("N"), "N");
  if (n != static_cast<int>(n) || n < 1) throw chq::DomainError("N", "integer N >= 1 required");
  const int N = static_cast<int>(n);
  const double m = chq::json_real(j.at("m"), "m");
  const double mu = chq::json_real(j.at("mu"), "mu");
  if (!(m > 1.0)) throw chq::DomainError("m", "m > 1 required");
  const auto roots = chq::solve_beta_roots(N, m, mu, c.policy());
  json out = chq::to_json(roots);
  out["hardy_constant"] = chq::hardy_constant(N, m);
  out["signs"] = chq::to_string(chq::sign_classification(roots, N, m, mu));
  emit(c, out);
  return kExitOk;
}

int cmd_classify(const Globals& g) {
  const auto c = make_config(g);
  const auto P = chq::params_from_json(params_json(g));
  const auto verdict = chq::classify(P, c.policy());
  json out = chq::to_json(verdict);
  out["conditions"] = chq::to_json(chq::necessary_condition_trace(P, c.policy()));
  emit(c, out);
  return exit_for(verdict.outcome);
}

int cmd_certify(const Globals& g) {
  const auto c = make_config(g);
  const auto P = chq::params_from_json(params_json(g));
  const auto verdict = chq::classify(P, c.policy());
  if (verdict.outcome != chq::Outcome::Exists) {
    emit(c, json{{"verdict", chq::to_json(verdict)}});
    return exit_for(verdict.outcome);
  }
  const auto sol = chq::existence_certificate(P, c.verify_settings(), c.policy());
  emit(c, json{{"params", chq::to_json(P)},
               {"certificate", chq::to_json(sol.certificate)},
               {"report", chq::to_json(sol.report)}});
  return sol.report.passed ? kExitOk : kExitNumeric;
}

int cmd_verify(const Globals& g, const std::string& cert_path) {
  const auto c = make_config(g);
  const json cert_json = chq::read_json_file(cert_path);
  json pj = g.params_path || !g.inline_params.empty() ? params_json(g) : json::object();
  if (pj.empty() && cert_json.contains("params")) pj = cert_json.at("params");
  const auto P = chq::params_from_json(pj);
  const auto cert = chq::certificate_from_json(cert_json);
  const auto report = chq::verify_supersolution(P, cert, c.verify_settings());
  emit(c, chq::to_json(report));
  return report.passed ? kExitOk : kExitNumeric;
}

int cmd_riesz(const Globals& g, const std::vector<double>& radii_flag) {
  const auto c = make_config(g);
  const json j = params_json(g);
  for (const char* key : {"N", "alpha", "p", "profile"})
    if (!j.contains(key)) throw chq::DomainError(key, "required");
  const double n = chq::json_real(j.at("N"), "N");
  if (n != static_cast<int>(n)) throw chq::DomainError("N", "integer required");
  std::vector<double> radii = radii_flag;
  if (radii.empty() && j.contains("r")) {
    if (j.at("r").is_array())
      for (const auto& x : j.at("r")) radii.push_back(chq::json_real(x, "r"));
    else
      radii.push_back(chq::json_real(j.at("r"), "r"));
  }
  if (radii.empty()) throw chq::DomainError("r", "at least one radius required");
  const double tol = j.contains("tol") ? chq::json_real(j.at("tol"), "tol") : c.riesz_tol;
  const auto density = chq::density_from_json(j.at("profile"));
  json out = json::array();
  for (double r : radii)
    out.push_back(chq::to_json(chq::riesz_convolve_radial(
        density, static_cast<int>(n), chq::json_real(j.at("alpha"), "alpha"),
        chq::json_real(j.at("p"), "p"), r, tol)));
  emit(c, out);
  return kExitOk;
}

struct RegionFlags {
  std::optional<double> p_min, p_max, q_min, q_max;
  std::optional<int> steps;
  std::optional<std::string> format;
};

int cmd_region(const Globals& g, const RegionFlags& f) {
  const auto c = make_config(g);
  json j = params_json(g);
  if (f.p_min) j["p_min"] = *f.p_min;
  if (f.p_max) j["p_max"] = *f.p_max;
  if (f.q_min) j["q_min"] = *f.q_min;
  if (f.q_max) j["q_max"] = *f.q_max;
  if (f.steps) j["steps"] = *f.steps;
  if (f.format) j["format"] = *f.format;
  if (j.contains("grid") && (f.p_min || f.p_max || f.q_min || f.q_max || f.steps)) {
    for (const char* k : {"p_min", "p_max", "q_min", "q_max", "steps"})
      if (j.contains(k)) j["grid"][k] = j[k];
  }
  const auto spec = chq::region_spec_from_json(j);
  const auto records = chq::scan_region(spec, c.policy(), c.threads);
  if (spec.format == chq::RegionScanSpec::Format::Csv)
    emit(c, chq::region_csv(records));
  else
    emit(c, chq::region_json(records));
  return kExitOk;
}

int cmd_selftest(const Globals& g, const std::vector<std::string>& suites, bool perturb) {
  const auto c = make_config(g);
  chq::SelftestOptions opt;
  opt.suites = suites;
  opt.seed = c.seed;
  opt.threads = c.threads;
  opt.perturb_gamma = perturb;
  opt.log = &std::cout;
  const auto results = chq::run_selftest(opt);
  for (const auto& r : results) {
    if (!r.passed) {
      std::cerr << "first failing: " << (r.criterion > 0 ? "criterion " + std::to_string(r.criterion) + " " : "")
                << "[" << r.name << "]\n";
      return kExitNumeric;
    }
  }
  std::cout << "all " << results.size() << " suites passed\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive solutions of -div(|grad u|^{m-2} grad u) - mu|x|^{-m} u^{m-1} >= "
               "(I_alpha * u^p) u^q on |x| > 1"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--params", g.params_path, "parameter JSON file");
  app.add_option("--config", g.config_path, "config JSON file");
  app.add_option("--out", g.out_path, "write output here instead of stdout");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for the randomized suites");
  for (const char* key : {"N", "m", "p", "q", "alpha", "mu", "theta"}) {
    app.add_option_function<std::string>(
        std::string("--") + key, [&g, key](const std::string& v) { g.inline_params[key] = v; },
        std::string("override ") + key);
  }

  auto* beta = app.add_subcommand("beta", "roots of G(beta) = mu");
  auto* classify = app.add_subcommand("classify", "existence verdict with witnesses");
  auto* certify = app.add_subcommand("certify", "build and verify a solution certificate");
  auto* verify = app.add_subcommand("verify", "re-verify a stored certificate");
  std::string cert_path;
  verify->add_option("--certificate", cert_path, "certificate JSON (certify output)")->required();
  auto* riesz = app.add_subcommand("riesz", "enclosure of the radial Riesz convolution");
  std::vector<double> radii;
  riesz->add_option("--r", radii, "radii (overrides the params file)");
  auto* region = app.add_subcommand("region", "classify a (p, q) grid");
  RegionFlags rf;
  region->add_option("--p-min", rf.p_min);
  region->add_option("--p-max", rf.p_max);
  region->add_option("--q-min", rf.q_min);
  region->add_option("--q-max", rf.q_max);
  region->add_option("--steps", rf.steps);
  region->add_option("--format", rf.format)->check(CLI::IsMember({"csv", "json"}));
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suites");
  std::vector<std::string> suites;
  bool perturb = false;
  selftest->add_option("--suite", suites, "suite or group name (repeatable)");
  selftest->add_flag("--perturb-gamma", perturb, "nudge one Lanczos coefficient");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*beta) return cmd_beta(g);
    if (*classify) return cmd_classify(g);
    if (*certify) return cmd_certify(g);
    if (*verify) return cmd_verify(g, cert_path);
    if (*riesz) return cmd_riesz(g, radii);
    if (*region) return cmd_region(g, rf);
    if (*selftest) return cmd_selftest(g, suites, perturb);
  } catch (const chq::DomainError& e) {
    std::cerr << "error: invalid input\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v.field << ": " << v.constraint << "\n";
    return kExitInput;
  } catch (const chq::NoRealRoots& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const chq::QuadratureFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const chq::BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const chq::EmptyInterval& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const chq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
