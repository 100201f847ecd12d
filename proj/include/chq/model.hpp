#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Violation {
  std::string field;
  std::string constraint;
};

/// One or more parameter constraints failed. Every violated constraint is
/// listed, not just the first.
class DomainError : public Error {
 public:
  explicit DomainError(std::vector<Violation> violations);
  DomainError(std::string field, std::string constraint);

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Parameters of  -Δ_m u - μ|x|^{-m} u^{m-1} >= (I_α * u^p) u^q  on |x| > 1.
/// `theta` is the exponent of the Hardy weight in the general-operator
/// nonexistence criteria; the headline inequality fixes it to m.
struct ProblemParams {
  int N = 3;
  double m = 2.0;
  double p = 1.0;
  double q = 0.0;
  double alpha = 1.0;
  double mu = 0.0;
  double theta = 2.0;
};

/// Half-width of the indeterminacy band around strict/non-strict thresholds.
struct ComparisonPolicy {
  double boundary_band = 1e-9;
};

/// Three-way outcome of comparing a quantity against a threshold.
enum class Cmp { Below, Within, Above };

/// Classifies `margin` against the band [-δ, δ].
Cmp compare(double margin, const ComparisonPolicy& policy);

/// Builds validated parameters from a name->value map. Required keys:
/// N, m, p, q, alpha, mu. `theta` is optional and defaults to m.
/// Throws DomainError listing every violated constraint.
ProblemParams validate_params(const std::map<std::string, double>& raw);

/// Re-validates an already constructed parameter set.
void check_params(const ProblemParams& params);

/// Optimal Hardy constant |(N-m)/m|^m.
double hardy_constant(int N, double m);

}  // namespace chq
