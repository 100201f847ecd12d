#include "chq/region.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <thread>

namespace chq {

void RegionScanSpec::validate() const {
  std::vector<Violation> v;
  if (!(p_min < p_max)) v.push_back({"p_min", "p_min < p_max required"});
  if (!(q_min < q_max)) v.push_back({"q_min", "q_min < q_max required"});
  if (!(p_min > 0.0)) v.push_back({"p_min", "p_min > 0 required"});
  if (steps < 2) v.push_back({"steps", "steps >= 2 required"});
  if (!v.empty()) throw DomainError(std::move(v));
  ProblemParams probe = base;
  probe.p = p_min;
  check_params(probe);
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& s : parts) {
    if (!out.empty()) out += ';';
    out += s;
  }
  return out;
}

std::string number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::vector<RegionRecord> scan_region(const RegionScanSpec& spec, const ComparisonPolicy& policy,
                                      int threads) {
  spec.validate();
  const int n = spec.steps;
  const std::size_t total = static_cast<std::size_t>(n) * n;
  std::vector<RegionRecord> out(total);
  auto axis = [n](double lo, double hi, int i) {
    return i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  };
  auto work = [&](std::size_t k) {
    const int i = static_cast<int>(k % n), j = static_cast<int>(k / n);
    ProblemParams P = spec.base;
    P.p = axis(spec.p_min, spec.p_max, i);
    P.q = axis(spec.q_min, spec.q_max, j);
    const Verdict v = classify(P, policy);
    RegionRecord& r = out[k];
    r.p = P.p;
    r.q = P.q;
    r.outcome = v.outcome;
    if (v.outcome == Outcome::NotExists) {
      std::vector<std::string> ids;
      for (const auto& w : v.witnesses) ids.push_back(w.cited_result);
      r.witness = join(ids);
    } else if (v.outcome == Outcome::Boundary) {
      r.witness = join(v.boundary_conditions);
    }
  };
  threads = std::max(1, std::min<int>(threads, static_cast<int>(total)));
  if (threads == 1) {
    for (std::size_t k = 0; k < total; ++k) work(k);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t k = next++; k < total; k = next++) work(k);
      } catch (...) {
        errors[t] = std::current_exception();
        next = total;
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::string region_csv(const std::vector<RegionRecord>& records) {
  std::string out = "p,q,outcome,witness\n";
  for (const auto& r : records) {
    out += number(r.p);
    out += ',';
    out += number(r.q);
    out += ',';
    out += to_string(r.outcome);
    out += ',';
    out += r.witness;
    out += '\n';
  }
  return out;
}

}  // namespace chq
