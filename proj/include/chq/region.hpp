#pragma once

#include <string>
#include <vector>

#include "chq/classifier.hpp"

namespace chq {

/// Grid of (p, q) over [p_min, p_max] x [q_min, q_max], endpoints included.
/// `base` supplies N, m, α, μ, θ; its p and q are ignored.
struct RegionScanSpec {
  ProblemParams base;
  double p_min = 0.1, p_max = 6.0;
  double q_min = -1.0, q_max = 6.0;
  int steps = 50;
  enum class Format { Csv, Json } format = Format::Csv;

  void validate() const;
};

struct RegionRecord {
  double p = 0.0;
  double q = 0.0;
  Outcome outcome = Outcome::Boundary;
  std::string witness;  // cited results (NotExists) or conditions in the band (Boundary)
};

/// Row-major with p varying fastest. The order does not depend on `threads`.
std::vector<RegionRecord> scan_region(const RegionScanSpec& spec,
                                      const ComparisonPolicy& policy = {}, int threads = 1);

std::string region_csv(const std::vector<RegionRecord>& records);

}  // namespace chq
