#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "ggm/branches.hpp"
#include "ggm/measure.hpp"
#include "ggm/model.hpp"

using namespace ggm;
using namespace ggm::measure;

namespace {

/// Test-side brute force for a depth-1 star: weight of (z1..zE) is
/// prod_e Q(z_e) * l(s + z_e) for the pinned measure, and the s-sum of
/// that for the mixed one. Independent of the library's enumeration.
std::vector<double> star_table(const PeriodicLaw& law, int edges, double theta,
                               std::optional<int> pin) {
  const auto weight_one = [&](int s, const std::vector<int>& zeta) {
    double w = 1.0;
    for (int z : zeta) w *= (z == 0 ? theta : 1.0) * law.at_class(s + z);
    return w;
  };
  std::int64_t total = 1;
  for (int e = 0; e < edges; ++e) total *= 3;
  std::vector<double> w(static_cast<size_t>(total));
  double sum = 0.0;
  for (std::int64_t r = 0; r < total; ++r) {
    std::vector<int> zeta(static_cast<size_t>(edges));
    std::int64_t d = r;
    for (int e = 0; e < edges; ++e) {
      zeta[static_cast<size_t>(e)] = static_cast<int>(d % 3) - 1;
      d /= 3;
    }
    double val = 0.0;
    if (pin) {
      val = weight_one(*pin, zeta);
    } else {
      for (int s = 0; s < law.q; ++s) val += weight_one(s, zeta);
    }
    w[static_cast<size_t>(r)] = val;
    sum += val;
  }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace

TEST_CASE("subtree geometry") {
  const auto t = FiniteSubtree::build(2, 2);
  CHECK(t.edge_count() == 9);
  CHECK(t.vertex_count() == 10);
  CHECK(t.boundary.size() == 6);
  const auto h = FiniteSubtree::build(2, 2, /*full_root=*/false);
  CHECK(h.edge_count() == 6);
  CHECK_THROWS_AS(FiniteSubtree::build(2, 0), domain_error);
}

TEST_CASE("all-ones law gives the kernel product measure") {
  const ModelParams p(2, 2.0);
  const auto tree = FiniteSubtree::build(2, 1);
  const auto m = pinned_marginal(PeriodicLaw::all_ones(2), tree, 0, p);
  const auto dist = edge_gradient_distribution(m);
  for (const auto& d : dist) {
    CHECK(d[0] == doctest::Approx(0.25).epsilon(1e-14));  // step -1
    CHECK(d[1] == doctest::Approx(0.50).epsilon(1e-14));  // step 0
    CHECK(d[2] == doctest::Approx(0.25).epsilon(1e-14));  // step +1
  }
  // Mixed agrees: the pin sum contributes a constant factor q.
  const auto mm = mixed_marginal(PeriodicLaw::all_ones(2), tree, p);
  for (size_t r = 0; r < m.prob.size(); ++r)
    CHECK(m.prob[r] == doctest::Approx(mm.prob[r]).epsilon(1e-14));
}

TEST_CASE("depth-1 star tables match the independent brute force") {
  const ModelParams p(2, 7.0);
  const PeriodicLaw law(2, {1.0, 4.0});
  const auto tree = FiniteSubtree::build(2, 1);
  for (int s : {0, 1}) {
    const auto m = pinned_marginal(law, tree, s, p);
    const auto want = star_table(law, 3, 7.0, s);
    REQUIRE(m.prob.size() == want.size());
    for (size_t r = 0; r < want.size(); ++r)
      CHECK(m.prob[r] == doctest::Approx(want[r]).epsilon(1e-13));
  }
  const auto mixed = mixed_marginal(law, tree, p);
  const auto want = star_table(law, 3, 7.0, std::nullopt);
  for (size_t r = 0; r < want.size(); ++r)
    CHECK(mixed.prob[r] == doctest::Approx(want[r]).epsilon(1e-13));
}

TEST_CASE("all-zero configuration weight for a q=2 law and s=0") {
  // Weight of zeta = (0,0,0) is theta^3 l(0)^3; with l(0)=1 the
  // unnormalized mass is theta^3, so its probability is theta^3 / Z with
  // Z = (theta l(0) + 2 l(1))^3 for the pinned star.
  const double theta = 6.0, y = 3.0;
  const PeriodicLaw law(2, {1.0, y});
  const auto tree = FiniteSubtree::build(2, 1);
  const auto m = pinned_marginal(law, tree, 0, ModelParams(2, theta));
  const double z = std::pow(theta + 2.0 * y, 3);
  CHECK(m.probability({0, 0, 0}) == doctest::Approx(theta * theta * theta / z).epsilon(1e-13));
}

TEST_CASE("pin shift equals law shift") {
  const ModelParams p(2, 9.0);
  const PeriodicLaw law(3, {1.0, 2.0, 5.0});
  const PeriodicLaw shifted(3, {2.0, 5.0, 1.0});  // l'(i) = l(i+1)
  const auto tree = FiniteSubtree::build(2, 1);
  const auto a = pinned_marginal(law, tree, 1, p);
  const auto b = pinned_marginal(shifted, tree, 0, p);
  for (size_t r = 0; r < a.prob.size(); ++r)
    CHECK(a.prob[r] == doctest::Approx(b.prob[r]).epsilon(1e-13));
}

TEST_CASE("consistency: exact branches are consistent, perturbed laws are not") {
  const auto t1 = FiniteSubtree::build(2, 1);
  const auto t2 = FiniteSubtree::build(2, 2);

  const ModelParams p7(2, 7.0);
  const auto diag = branches::p2_solve_diagonal(p7);
  REQUIRE(diag.has_value());
  CHECK(check_consistency(diag->law, t1, t2, p7, 0) < 1e-12);
  CHECK(check_consistency(diag->law, t1, t2, p7, std::nullopt) < 1e-12);

  const auto off = branches::p2_solve_offdiagonal(p7);
  CHECK(check_consistency(off[0].law, t1, t2, p7, 1) < 1e-12);

  const ModelParams p10(2, 10.0);
  const auto c3 = branches::p3_solve(p10);
  for (const auto& b : c3) CHECK(check_consistency(b.law, t1, t2, p10, 0) < 1e-12);

  const ModelParams p8(2, 8.0);
  for (const auto& b : branches::p4_census(p8))
    CHECK(check_consistency(b.law, t1, t2, p8, std::nullopt) < 1e-12);

  PeriodicLaw bad = diag->law;
  bad.values[1] += 0.1;
  CHECK(check_consistency(bad, t1, t2, p7, 0) > 1e-6);
}

TEST_CASE("all-ones law is trivially consistent") {
  const auto t1 = FiniteSubtree::build(2, 1);
  const auto t2 = FiniteSubtree::build(2, 2);
  CHECK(check_consistency(PeriodicLaw::all_ones(2), t1, t2, ModelParams(2, 3.0), 0) < 1e-12);
}

TEST_CASE("height-shift invariance of the mixed measure") {
  // Any orbit member yields the identical mixed table; this is the
  // finite-volume form of the cyclic-shift identification.
  const ModelParams p(2, 10.0);
  const auto cs = branches::p3_solve(p);
  const auto* boundary = [&]() -> const branches::SolutionBranch* {
    for (const auto& b : cs)
      if (b.tag == branches::CaseTag::XEq1) return &b;
    return nullptr;
  }();
  REQUIRE(boundary != nullptr);
  const auto tree = FiniteSubtree::build(2, 2);
  const auto base = mixed_marginal(boundary->law, tree, p);
  for (const auto& member : cyclic_shift_orbit(boundary->law)) {
    const auto other = mixed_marginal(member, tree, p);
    for (size_t r = 0; r < base.prob.size(); ++r)
      CHECK(std::fabs(base.prob[r] - other.prob[r]) < 1e-12);
  }
}

TEST_CASE("sign-flip symmetry holds iff the law is palindromic") {
  const ModelParams p(2, 8.0);
  const auto tree = FiniteSubtree::build(2, 1);
  // Palindromic: (1, x, 1, x) -> symmetric edge distribution.
  const auto sym = branches::p4_solve_symmetric(p);
  const auto msym = pinned_marginal(sym.back().law, tree, 0, p);
  for (const auto& d : edge_gradient_distribution(msym))
    CHECK(std::fabs(d[0] - d[2]) < 1e-12);
  // Non-palindromic: (1, x3, 1, y3) with x3 != y3.
  const auto asym = branches::p4_solve_asymmetric(p);
  const auto masym = pinned_marginal(asym.front().law, tree, 0, p);
  const auto dist = edge_gradient_distribution(masym);
  CHECK(std::fabs(dist[0][0] - dist[0][2]) > 1e-6);
}

TEST_CASE("probability table sums to one") {
  const ModelParams p(2, 7.0);
  const auto tree = FiniteSubtree::build(2, 2);
  const auto off = branches::p2_solve_offdiagonal(p);
  const auto m = mixed_marginal(off[1].law, tree, p);
  double sum = 0.0;
  for (double v : m.prob) sum += v;
  CHECK(std::fabs(sum - 1.0) < 1e-12);
}

TEST_CASE("enumeration cap raises a size error") {
  const auto big = FiniteSubtree::build(2, 3);  // 21 edges, 3^21 configs
  CHECK_THROWS_AS(
      pinned_marginal(PeriodicLaw::all_ones(2), big, 0, ModelParams(2, 2.0)),
      size_error);
}

TEST_CASE("pin class bounds and nesting are validated") {
  const auto t1 = FiniteSubtree::build(2, 1);
  const auto t2 = FiniteSubtree::build(2, 2);
  CHECK_THROWS_AS(pinned_marginal(PeriodicLaw::all_ones(2), t1, 2, ModelParams(2, 2.0)),
                  domain_error);
  CHECK_THROWS_AS(check_consistency(PeriodicLaw::all_ones(2), t2, t1, ModelParams(2, 2.0), 0),
                  domain_error);
  const auto half = FiniteSubtree::build(2, 1, false);
  CHECK_THROWS_AS(check_consistency(PeriodicLaw::all_ones(2), half, t2, ModelParams(2, 2.0), 0),
                  domain_error);
}

TEST_CASE("marginal JSON is stable and parseable") {
  const ModelParams p(2, 7.0);
  const auto tree = FiniteSubtree::build(2, 1);
  const auto m = pinned_marginal(PeriodicLaw(2, {1.0, 4.0}), tree, 1, p);
  const std::string s = to_json(m);
  CHECK(s == to_json(m));  // byte-stable
  const auto j = nlohmann::json::parse(s);
  CHECK(j["q"] == 2);
  CHECK(j["theta"] == 7.0);
  CHECK(j["pin"] == 1);
  CHECK(j["law"].size() == 2);
  CHECK(j["edges"].size() == 3);
  REQUIRE(j["table"].size() == 27);
  double sum = 0.0;
  for (const auto& row : j["table"]) sum += row["p"].get<double>();
  CHECK(std::fabs(sum - 1.0) < 1e-12);
  // Round-trip at 17 significant digits reproduces the doubles exactly.
  CHECK(j["table"][0]["p"].get<double>() == m.prob[0]);
  const auto mm = mixed_marginal(PeriodicLaw(2, {1.0, 4.0}), tree, p);
  CHECK(nlohmann::json::parse(to_json(mm))["pin"].is_null());
}
