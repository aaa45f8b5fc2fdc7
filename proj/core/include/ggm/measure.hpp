#pragma once

// Pinned and mixed gradient measures on finite rooted subtrees, built from
// a periodic boundary law, plus their consistency check. Everything here
// is exhaustive enumeration over the 3^|edges| admissible gradient
// configurations; the accuracy targets rule out sampling.
//
// Note on normalisability: q-periodic positive laws on the integers are
// never normalisable (the defining sum diverges), which is why the finite
// measures below are constructed directly from the law instead of through
// a tree-indexed Markov chain.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ggm/model.hpp"

namespace ggm::measure {

/// Default cap on the enumeration size (3^15 configurations).
inline constexpr std::int64_t kDefaultEnumerationCap = 14348907;

/// Rooted subtree of the Cayley tree: the root has k+1 children (full-tree
/// convention) or k (half-tree), every other internal vertex has k.
/// Edges are stored in breadth-first order oriented away from the root,
/// so a depth-(n-1) tree's edges are a prefix of the depth-n tree's.
struct FiniteSubtree {
  struct Edge {
    int parent;
    int child;
  };

  int k = 0;
  int depth = 0;
  bool full_root = true;
  std::vector<Edge> edges;
  std::vector<int> vertex_depth;  // indexed by vertex id, root = 0
  std::vector<int> boundary;      // vertex ids at distance `depth`

  static FiniteSubtree build(int k, int depth, bool full_root = true);

  int edge_count() const { return static_cast<int>(edges.size()); }
  int vertex_count() const { return static_cast<int>(vertex_depth.size()); }
};

/// Probability table over gradient configurations of a subtree. Config
/// rank r encodes edge steps via base-3 digits: step of edge e is
/// (r / 3^e) % 3 - 1.
struct GradientMarginal {
  PeriodicLaw law;
  double theta;
  std::optional<int> pin;  // residue class, or nullopt for the mixed measure
  FiniteSubtree tree;
  std::vector<double> prob;

  double probability(const std::vector<int>& zeta) const;
};

/// Pinned measure: weight of a configuration is the product of the kernel
/// factors over edges times the law evaluated at the pinned class plus the
/// root-to-boundary path sums, normalized.
GradientMarginal pinned_marginal(const PeriodicLaw& law, const FiniteSubtree& tree, int s,
                                 const ModelParams& params,
                                 std::int64_t enumeration_cap = kDefaultEnumerationCap);

/// Translation-invariant mixture: the law factor is summed over all pin
/// classes before normalization.
GradientMarginal mixed_marginal(const PeriodicLaw& law, const FiniteSubtree& tree,
                                const ModelParams& params,
                                std::int64_t enumeration_cap = kDefaultEnumerationCap);

/// Marginalize the larger tree's table onto the smaller tree's edges and
/// return the max absolute deviation from the directly computed table.
/// `pin` selects the pinned measure; nullopt compares the mixed ones.
/// Requires tree_small to be a root-sharing prefix of tree_large.
double check_consistency(const PeriodicLaw& law, const FiniteSubtree& tree_small,
                         const FiniteSubtree& tree_large, const ModelParams& params,
                         std::optional<int> pin,
                         std::int64_t enumeration_cap = kDefaultEnumerationCap);

/// Per-edge distribution of the gradient step, ordered (-1, 0, +1).
std::vector<std::array<double, 3>> edge_gradient_distribution(const GradientMarginal& m);

/// Serialize a marginal table. Key order and number formatting (17
/// significant digits) are fixed; byte-stable across runs.
std::string to_json(const GradientMarginal& m);

}  // namespace ggm::measure
