#include "ggm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ggm::measure {

namespace {

std::int64_t pow3(int n) {
  std::int64_t r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}

/// Kahan-compensated accumulator. The consistency gate sits at 1e-12 on
/// tables with up to 3^15 entries; plain summation drift would eat it.
struct KahanSum {
  double s = 0.0;
  double c = 0.0;
  void add(double v) {
    const double y = v - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

void require_enumerable(const FiniteSubtree& tree, std::int64_t cap) {
  std::int64_t size = 1;
  for (int e = 0; e < tree.edge_count(); ++e) {
    size *= 3;
    if (size > cap) {
      throw size_error("marginal enumeration would exceed the cap of " +
                       std::to_string(cap) + " configurations (3^" +
                       std::to_string(tree.edge_count()) +
                       "); reduce the subtree depth");
    }
  }
}

/// Weights of all configurations; `law_factor` maps the vector of
/// root-to-boundary path sums to the boundary law product (pinned or
/// mixed). Products are taken in log space for deep trees.
std::vector<double> enumerate_weights(const PeriodicLaw& law, const FiniteSubtree& tree,
                                      const ModelParams& params, std::optional<int> pin) {
  const int ecount = tree.edge_count();
  const std::int64_t total = pow3(ecount);
  const bool log_space = tree.depth > 3;
  const double theta = params.theta;

  std::vector<double> weights(static_cast<size_t>(total));
  std::vector<int> zeta(static_cast<size_t>(ecount));
  std::vector<int> height(static_cast<size_t>(tree.vertex_count()));

  for (std::int64_t r = 0; r < total; ++r) {
    std::int64_t d = r;
    int zeros = 0;
    for (int e = 0; e < ecount; ++e) {
      const int step = static_cast<int>(d % 3) - 1;
      zeta[static_cast<size_t>(e)] = step;
      if (step == 0) ++zeros;
      d /= 3;
    }
    height[0] = 0;
    for (int e = 0; e < ecount; ++e)
      height[static_cast<size_t>(tree.edges[static_cast<size_t>(e)].child)] =
          height[static_cast<size_t>(tree.edges[static_cast<size_t>(e)].parent)] +
          zeta[static_cast<size_t>(e)];

    auto boundary_product = [&](int s) {
      double p = 1.0;
      for (int y : tree.boundary) p *= law.at_class(s + height[static_cast<size_t>(y)]);
      return p;
    };
    auto boundary_log = [&](int s) {
      double p = 0.0;
      for (int y : tree.boundary)
        p += std::log(law.at_class(s + height[static_cast<size_t>(y)]));
      return p;
    };

    double w;
    if (!log_space) {
      const double kernel = std::pow(theta, zeros);  // off-diagonal factors are 1
      double lawf;
      if (pin) {
        lawf = boundary_product(*pin);
      } else {
        lawf = 0.0;
        for (int s = 0; s < law.q; ++s) lawf += boundary_product(s);
      }
      w = kernel * lawf;
    } else {
      const double log_kernel = zeros * std::log(theta);
      double lawf;
      if (pin) {
        lawf = std::exp(boundary_log(*pin) + log_kernel);
      } else {
        lawf = 0.0;
        for (int s = 0; s < law.q; ++s) lawf += std::exp(boundary_log(s) + log_kernel);
      }
      w = lawf;
    }
    if (!std::isfinite(w)) throw numeric_error("marginal weight overflowed");
    weights[static_cast<size_t>(r)] = w;
  }
  return weights;
}

GradientMarginal normalize(const PeriodicLaw& law, const FiniteSubtree& tree,
                           const ModelParams& params, std::optional<int> pin,
                           std::vector<double> weights) {
  KahanSum total_acc;
  for (double w : weights) total_acc.add(w);
  const double total = total_acc.value();
  if (!(total > 0.0) || !std::isfinite(total))
    throw numeric_error("marginal normalization failed");
  for (double& w : weights) w /= total;
  return GradientMarginal{law, params.theta, pin, tree, std::move(weights)};
}

void format_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

FiniteSubtree FiniteSubtree::build(int k, int depth, bool full_root) {
  if (k < 2) throw domain_error("FiniteSubtree: k must be >= 2");
  if (depth < 1) throw domain_error("FiniteSubtree: depth must be >= 1");
  FiniteSubtree t;
  t.k = k;
  t.depth = depth;
  t.full_root = full_root;
  t.vertex_depth.push_back(0);
  std::vector<int> frontier{0};
  for (int d = 1; d <= depth; ++d) {
    std::vector<int> next;
    for (int v : frontier) {
      const int children = (v == 0 && full_root) ? k + 1 : k;
      for (int c = 0; c < children; ++c) {
        const int id = t.vertex_count();
        t.vertex_depth.push_back(d);
        t.edges.push_back({v, id});
        next.push_back(id);
      }
    }
    frontier = std::move(next);
  }
  t.boundary = frontier;
  if (t.edge_count() != t.vertex_count() - 1)
    throw internal_error("FiniteSubtree: edge/vertex count mismatch");
  return t;
}

double GradientMarginal::probability(const std::vector<int>& zeta) const {
  if (static_cast<int>(zeta.size()) != tree.edge_count())
    throw domain_error("probability: configuration size mismatch");
  std::int64_t r = 0;
  for (size_t e = zeta.size(); e-- > 0;) {
    const int digit = zeta[e] + 1;
    if (digit < 0 || digit > 2) throw domain_error("probability: steps must be in {-1,0,1}");
    r = r * 3 + digit;
  }
  return prob[static_cast<size_t>(r)];
}

GradientMarginal pinned_marginal(const PeriodicLaw& law, const FiniteSubtree& tree, int s,
                                 const ModelParams& params, std::int64_t enumeration_cap) {
  if (s < 0 || s >= law.q) throw domain_error("pinned_marginal: pin class out of range");
  require_enumerable(tree, enumeration_cap);
  return normalize(law, tree, params, s, enumerate_weights(law, tree, params, s));
}

GradientMarginal mixed_marginal(const PeriodicLaw& law, const FiniteSubtree& tree,
                                const ModelParams& params, std::int64_t enumeration_cap) {
  require_enumerable(tree, enumeration_cap);
  return normalize(law, tree, params, std::nullopt,
                   enumerate_weights(law, tree, params, std::nullopt));
}

double check_consistency(const PeriodicLaw& law, const FiniteSubtree& tree_small,
                         const FiniteSubtree& tree_large, const ModelParams& params,
                         std::optional<int> pin, std::int64_t enumeration_cap) {
  if (tree_small.k != tree_large.k || tree_small.full_root != tree_large.full_root ||
      tree_small.depth > tree_large.depth)
    throw domain_error("check_consistency: trees are not nested");
  for (size_t e = 0; e < tree_small.edges.size(); ++e)
    if (tree_small.edges[e].parent != tree_large.edges[e].parent ||
        tree_small.edges[e].child != tree_large.edges[e].child)
      throw domain_error("check_consistency: small tree is not a prefix of the large one");

  const GradientMarginal big =
      pin ? pinned_marginal(law, tree_large, *pin, params, enumeration_cap)
          : mixed_marginal(law, tree_large, params, enumeration_cap);
  const GradientMarginal small =
      pin ? pinned_marginal(law, tree_small, *pin, params, enumeration_cap)
          : mixed_marginal(law, tree_small, params, enumeration_cap);

  // Small-tree edges are the low base-3 digits of the large rank.
  const std::int64_t small_size = pow3(tree_small.edge_count());
  std::vector<KahanSum> folded(static_cast<size_t>(small_size));
  for (size_t r = 0; r < big.prob.size(); ++r)
    folded[static_cast<size_t>(static_cast<std::int64_t>(r) % small_size)].add(big.prob[r]);

  double dev = 0.0;
  for (size_t r = 0; r < folded.size(); ++r)
    dev = std::fmax(dev, std::fabs(folded[r].value() - small.prob[r]));
  return dev;
}

std::vector<std::array<double, 3>> edge_gradient_distribution(const GradientMarginal& m) {
  const int ecount = m.tree.edge_count();
  std::vector<std::array<KahanSum, 3>> acc(static_cast<size_t>(ecount));
  for (size_t r = 0; r < m.prob.size(); ++r) {
    std::int64_t d = static_cast<std::int64_t>(r);
    for (int e = 0; e < ecount; ++e) {
      acc[static_cast<size_t>(e)][static_cast<size_t>(d % 3)].add(m.prob[r]);
      d /= 3;
    }
  }
  std::vector<std::array<double, 3>> dist(static_cast<size_t>(ecount));
  for (size_t e = 0; e < acc.size(); ++e)
    for (int i = 0; i < 3; ++i) dist[e][static_cast<size_t>(i)] = acc[e][static_cast<size_t>(i)].value();
  return dist;
}

std::string to_json(const GradientMarginal& m) {
  std::string out;
  out += "{\"edges\": [";
  for (size_t e = 0; e < m.tree.edges.size(); ++e) {
    if (e) out += ", ";
    out += "[" + std::to_string(m.tree.edges[e].parent) + ", " +
           std::to_string(m.tree.edges[e].child) + "]";
  }
  out += "], \"theta\": ";
  format_double(out, m.theta);
  out += ", \"q\": " + std::to_string(m.law.q);
  out += ", \"law\": [";
  for (size_t i = 0; i < m.law.values.size(); ++i) {
    if (i) out += ", ";
    format_double(out, m.law.values[i]);
  }
  out += "], \"pin\": ";
  out += m.pin ? std::to_string(*m.pin) : "null";
  out += ", \"table\": [";
  const int ecount = m.tree.edge_count();
  for (size_t r = 0; r < m.prob.size(); ++r) {
    if (r) out += ", ";
    out += "{\"zeta\": [";
    std::int64_t d = static_cast<std::int64_t>(r);
    for (int e = 0; e < ecount; ++e) {
      if (e) out += ", ";
      out += std::to_string(static_cast<int>(d % 3) - 1);
      d /= 3;
    }
    out += "], \"p\": ";
    format_double(out, m.prob[r]);
    out += "}";
  }
  out += "]}";
  return out;
}

}  // namespace ggm::measure
