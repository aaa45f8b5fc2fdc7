#include "verify.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "ggm/branches.hpp"
#include "ggm/measure.hpp"
#include "ggm/model.hpp"
#include "ggm/oracle.hpp"

namespace ggmtree_cli {

namespace {

using namespace ggm;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// theta grid inside the double-friendly range for this k. Off-diagonal
/// branch values grow like h^k beyond theta_c; past ~1e5 the double
/// representation floor alone exceeds the 1e-10 residual gate.
std::pair<double, double> residual_range(int k) {
  if (k == 2) return {0.5, 10.0};
  if (k == 3) return {0.5, 5.2};
  const double theta_c = 2.0 * (k + 1.0) / (k - 1.0);
  return {0.5, theta_c + 1.6 / ((k - 1.0) * (k - 1.0))};
}

SuiteResult residual_suite(const VerifyOptions& opt) {
  const auto [lo, hi] = residual_range(opt.k);
  const int n = opt.full ? 100 : 20;
  double worst = 0.0;
  int branches_seen = 0, beyond_scale = 0;
  for (int j = 0; j < n; ++j) {
    const ModelParams p(opt.k, lo + j * (hi - lo) / (n - 1));
    for (int q : {2, 3, 4})
      for (const auto& b : branches::census(q, p)) {
        // For k >= 4 branch values outgrow the scale where an absolute
        // 1e-10 residual is representable in doubles at all.
        if (opt.k > 3 && std::fmax(b.x, b.y) > 1e4) {
          ++beyond_scale;
          continue;
        }
        worst = std::fmax(worst, b.residual);
        ++branches_seen;
      }
  }
  const bool pass = worst < 1e-10 && branches_seen > 0;
  std::string detail =
      std::to_string(branches_seen) + " branches, worst residual " + fmt(worst);
  if (beyond_scale > 0)
    detail += " (" + std::to_string(beyond_scale) + " beyond double-certifiable scale)";
  return {"residual_gate", pass, false, detail};
}

SuiteResult reciprocity_suite(const VerifyOptions& opt) {
  const CriticalConstants cc = critical_constants(opt.k);
  const int n = opt.full ? 50 : 10;
  const double hi = opt.k == 2 ? 20.0 : residual_range(opt.k).second;
  double worst = 0.0;
  int pairs = 0;
  for (int j = 1; j <= n; ++j) {
    const double theta = cc.theta_c + j * (hi - cc.theta_c) / n;
    const auto off = branches::p2_solve_offdiagonal(ModelParams(opt.k, theta));
    if (off.size() != 2) continue;
    double r2 = off[0].y / off[0].x;  // tau2^k
    const double r1 = off[1].y / off[1].x;
    if (opt.inject_fault) r2 += 1e-6;
    const double tau1 = std::pow(r1, 1.0 / opt.k);
    const double tau2 = std::pow(r2, 1.0 / opt.k);
    worst = std::fmax(worst, std::fabs(tau1 * tau2 - 1.0));
    ++pairs;
  }
  const bool pass = pairs > 0 && worst < 1e-10;
  return {"tau_reciprocity", pass, false,
          std::to_string(pairs) + " pairs, worst |tau1*tau2 - 1| = " + fmt(worst)};
}

SuiteResult vieta_suite(const VerifyOptions& opt) {
  if (opt.k != 2)
    return {"vieta_period4", true, true, "skipped: asymmetric period-4 is k=2 only"};
  const int n = opt.full ? 40 : 10;
  double worst = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double theta = 2.0 + j * 18.0 / n;
    const ModelParams p(2, theta);
    const double disc = theta * (theta * theta * theta - 4.0 * theta * theta + 16.0);
    const double phi1 = 0.5 * (theta * theta - 2.0 * theta + std::sqrt(disc));
    const double phi2 = 0.5 * (theta * theta - 2.0 * theta - std::sqrt(disc));
    for (const auto& b : branches::p4_solve_asymmetric(p)) {
      const double phi = b.tag == branches::CaseTag::AsymPhi1 ? phi1 : phi2;
      worst = std::fmax(worst, std::fabs(b.x + b.y - phi) / std::fmax(1.0, phi));
      worst = std::fmax(worst, std::fabs(b.x * b.y - 4.0 / (theta * theta)));
    }
  }
  return {"vieta_period4", worst < 1e-10, false, "worst deviation " + fmt(worst)};
}

SuiteResult count_suite(const VerifyOptions& opt) {
  const CriticalConstants cc = critical_constants(opt.k);
  std::string detail;
  bool pass = true;
  auto expect = [&](const char* what, int got, int want) {
    if (got != want) {
      pass = false;
      detail += std::string(what) + " got " + std::to_string(got) + " want " +
                std::to_string(want) + "; ";
    }
  };
  if (opt.k == 2) {
    const double nu2_thetas[] = {1, 2, 4, 6, 7, 10};
    const int nu2_want[] = {2, 1, 2, 2, 6, 6};
    for (int i = 0; i < 6; ++i)
      expect("nu2", branches::p2_count(ModelParams(2, nu2_thetas[i])), nu2_want[i]);
    const double nu4_thetas[] = {1, 3, 6, 6.5, 7};
    const int nu4_want[] = {1, 2, 3, 4, 5};
    for (int i = 0; i < 5; ++i)
      expect("nu4", branches::p4_count(ModelParams(2, nu4_thetas[i])), nu4_want[i]);
    expect("nu3(3)", branches::p3_count(ModelParams(2, 3.0)), 1);
    expect("nu3(4)", branches::p3_count(ModelParams(2, 4.0)), 3);
    expect("nu3(10)", branches::p3_count(ModelParams(2, 10.0)), 5);
  } else {
    expect("nu2(theta_0)", branches::p2_count(ModelParams(opt.k, cc.theta_0)), 1);
    expect("nu2(mid)",
           branches::p2_count(ModelParams(opt.k, 0.5 * (cc.theta_0 + cc.theta_c))), 2);
    expect("nu2(above)", branches::p2_count(ModelParams(opt.k, cc.theta_c + 1.0)), 6);
    bool lb = false;
    expect("nu4_lb(below)",
           branches::p4_count(ModelParams(opt.k, 0.5 * cc.theta_0), &lb), 1);
    expect("nu4_lb(above)", branches::p4_count(ModelParams(opt.k, cc.theta_c + 1.0), &lb), 3);
    if (!lb) {
      pass = false;
      detail += "nu4 lower-bound flag not set for k>2; ";
    }
  }
  if (detail.empty()) detail = "all count checks matched";
  return {"ggm_counts", pass, false, detail};
}

SuiteResult oracle_suite(const VerifyOptions& opt) {
  const CriticalConstants cc = critical_constants(opt.k);
  std::vector<std::pair<int, double>> pts;
  const double hi_cap = opt.k == 2 ? 10.0 : residual_range(opt.k).second;
  auto add = [&](int q, double theta) {
    if (theta > 0.0 && theta <= hi_cap) pts.push_back({q, theta});
  };
  // q=4 for k != 2: the census carries only the symmetric case (the count
  // is a lower bound there), so oracle agreement is not expected.
  std::vector<int> qs = opt.k == 2 ? std::vector<int>{2, 3, 4} : std::vector<int>{2, 3};
  for (int q : qs) {
    add(q, 0.5 * cc.theta_0);
    add(q, 0.5 * (cc.theta_0 + cc.theta_c));
    if (opt.full) {
      add(q, cc.theta_c + 0.8);
      add(q, cc.theta_c + 1.7);
    }
    add(q, cc.theta_c + 1.1);
  }
  int agree = 0;
  for (auto [q, theta] : pts) {
    const ModelParams p(opt.k, theta);
    auto rep = oracle::solve(q, p);
    std::vector<PeriodicLaw> laws;
    for (const auto& b : branches::census(q, p)) laws.push_back(b.law);
    if (opt.inject_fault && !laws.empty())
      laws.front().values.back() *= 1.0 + 1e-5;
    if (oracle::compare(rep, laws)) ++agree;
  }
  const bool pass = agree == static_cast<int>(pts.size());
  std::string detail = std::to_string(agree) + "/" + std::to_string(pts.size()) + " points agree";
  if (opt.k != 2) detail += " (q=4 excluded: the census is a lower bound for k != 2)";
  return {"oracle_agreement", pass, false, detail};
}

SuiteResult consistency_suite(const VerifyOptions& opt) {
  if (opt.k > 3)
    return {"measure_consistency", true, true,
            "skipped: depth-2 enumeration exceeds the cap for k > 3"};
  const bool full_root = opt.k == 2;  // k=3 depth-2 fits the cap only rooted at k
  const CriticalConstants cc = critical_constants(opt.k);
  const auto t1 = measure::FiniteSubtree::build(opt.k, 1, full_root);
  const auto t2 = measure::FiniteSubtree::build(opt.k, 2, full_root);
  double worst = 0.0;
  int checked = 0;
  auto check = [&](const PeriodicLaw& law, const ModelParams& p) {
    worst = std::fmax(worst, measure::check_consistency(law, t1, t2, p, 0));
    worst = std::fmax(worst, measure::check_consistency(law, t1, t2, p, std::nullopt));
    ++checked;
  };
  {
    const ModelParams p(opt.k, cc.theta_c + 1.0);
    check(branches::p2_solve_diagonal(p)->law, p);
    const auto c3 = branches::p3_solve(p);
    check(c3.back().law, p);
    if (opt.k == 2) check(branches::p4_solve_asymmetric(ModelParams(2, 8.0)).front().law,
                          ModelParams(2, 8.0));
  }
  bool pass = worst < 1e-12;
  std::string detail = std::to_string(checked) + " laws, worst deviation " + fmt(worst);
  // A non-solution law must be visibly inconsistent.
  const ModelParams p(opt.k, cc.theta_c + 1.0);
  PeriodicLaw bad = branches::p2_solve_diagonal(p)->law;
  bad.values[1] += 0.1;
  const double dev = measure::check_consistency(bad, t1, t2, p, 0);
  if (dev < 1e-6) {
    pass = false;
    detail += "; perturbed law not rejected (dev " + fmt(dev) + ")";
  }
  return {"measure_consistency", pass, false, detail};
}

}  // namespace

std::vector<SuiteResult> run_verify(const VerifyOptions& opt) {
  return {
      residual_suite(opt),    reciprocity_suite(opt), vieta_suite(opt),
      count_suite(opt),       oracle_suite(opt),      consistency_suite(opt),
  };
}

}  // namespace ggmtree_cli
