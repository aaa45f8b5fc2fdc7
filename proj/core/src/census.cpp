#include <algorithm>
#include <cmath>
#include <map>

#include "branches_common.hpp"
#include "ggm/branches.hpp"

namespace ggm::branches {

const char* to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::Trivial: return "trivial";
    case CaseTag::XEq1: return "x_eq_1";
    case CaseTag::YEq1: return "y_eq_1";
    case CaseTag::Diagonal: return "diagonal";
    case CaseTag::OffdiagTau1: return "offdiag_tau1";
    case CaseTag::OffdiagTau2: return "offdiag_tau2";
    case CaseTag::AsymPhi1: return "asym_phi1";
    case CaseTag::AsymPhi2: return "asym_phi2";
  }
  return "unknown";
}

bool same_up_to_rotation(const PeriodicLaw& a, const PeriodicLaw& b, double rel_tol) {
  if (a.q != b.q) return false;
  const int q = a.q;
  for (int s = 0; s < q; ++s) {
    bool all = true;
    for (int i = 0; i < q && all; ++i) {
      const double av = a.values[static_cast<size_t>((i + s) % q)];
      const double bv = b.values[static_cast<size_t>(i)];
      if (std::fabs(av - bv) > rel_tol * std::fmax(1.0, std::fabs(bv))) all = false;
    }
    if (all) return true;
  }
  return false;
}

int distinct_up_to_rotation(const std::vector<SolutionBranch>& branches, double rel_tol) {
  std::vector<const PeriodicLaw*> reps;
  for (const SolutionBranch& b : branches) {
    bool found = false;
    for (const PeriodicLaw* r : reps)
      if (same_up_to_rotation(b.law, *r, rel_tol)) {
        found = true;
        break;
      }
    if (!found) reps.push_back(&b.law);
  }
  return static_cast<int>(reps.size());
}

std::vector<std::string> census_labels(const std::vector<SolutionBranch>& branches) {
  std::map<CaseTag, int> totals;
  for (const SolutionBranch& b : branches) ++totals[b.tag];
  // Ordinals by ascending y within a repeated tag.
  std::map<CaseTag, std::vector<std::pair<double, size_t>>> by_tag;
  for (size_t i = 0; i < branches.size(); ++i)
    by_tag[branches[i].tag].push_back({branches[i].y, i});
  std::vector<std::string> labels(branches.size());
  for (auto& [tag, entries] : by_tag) {
    std::sort(entries.begin(), entries.end());
    for (size_t ord = 0; ord < entries.size(); ++ord) {
      std::string label = to_string(tag);
      if (totals[tag] > 1) label += "_" + std::to_string(ord);
      labels[entries[ord].second] = std::move(label);
    }
  }
  return labels;
}

std::vector<SolutionBranch> census(int q, const ModelParams& params) {
  switch (q) {
    case 2: return p2_census(params);
    case 3: return p3_solve(params);
    case 4: return p4_census(params);
    default: throw domain_error("census: q must be 2, 3 or 4");
  }
}

int count(int q, const ModelParams& params) {
  switch (q) {
    case 2: return p2_count(params);
    case 3: return p3_count(params);
    case 4: return p4_count(params);
    default: throw domain_error("count: q must be 2, 3 or 4");
  }
}

PhaseCount phase_count(const ModelParams& params) {
  PhaseCount pc;
  pc.theta = params.theta;
  pc.raw2 = static_cast<int>(p2_census(params).size());
  pc.raw3 = static_cast<int>(p3_solve(params).size());
  pc.raw4 = static_cast<int>(p4_census(params).size());
  pc.nu2 = p2_count(params);
  pc.nu3 = p3_count(params);
  pc.nu4 = p4_count(params, &pc.nu4_lower_bound);
  return pc;
}

}  // namespace ggm::branches
