#pragma once

#include <cstdint>

#include "qarp/dataset.hpp"

namespace qarp {

/// The 22 data-complexity measures, every one oriented so that larger
/// values mean a harder classification problem.
struct ComplexityProfile {
  double f1 = 0, f1v = 0, f2 = 0, f3 = 0, f4 = 0;          // feature overlap
  double l1 = 0, l2 = 0, l3 = 0;                           // linearity
  double n1 = 0, n2 = 0, n3 = 0, n4 = 0, t1 = 0, lsc = 0;  // neighborhood
  double density = 0, cls_coef = 0, hubs = 0;              // network
  double t2 = 0, t3 = 0, t4 = 0;                           // dimensionality
  double c1 = 0, c2 = 0;                                   // class balance
  int n_splits_averaged = 1;

  static const std::vector<std::string>& measure_names();
  std::vector<double> values() const;
  double by_name(const std::string& name) const;
  /// Bounds check: unit-interval measures in [0,1], L1 >= 0, T2/T3 > 0,
  /// everything finite.
  void validate() const;
};

struct FeatureMeasures { double f1, f1v, f2, f3, f4; };
struct LinearityMeasures { double l1, l2, l3; };
struct NeighborhoodMeasures { double n1, n2, n3, n4, t1, lsc; };
struct NetworkMeasures { double density, cls_coef, hubs; };
struct DimensionalityMeasures { double t2, t3, t4; };
struct BalanceMeasures { double c1, c2; };

FeatureMeasures feature_measures(const Dataset& ds);
LinearityMeasures linearity_measures(const Dataset& ds);
NeighborhoodMeasures neighborhood_measures(const Dataset& ds);
NetworkMeasures network_measures(const Dataset& ds);
DimensionalityMeasures dimensionality_measures(const Dataset& ds);
BalanceMeasures balance_measures(const Dataset& ds);

/// All 22 measures of one dataset.
ComplexityProfile measures(const Dataset& ds);

/// Averages the measures over the training halves of `n_splits` random
/// splits. With n_splits = 1 and ratio = 1.0 the whole set is used as is.
ComplexityProfile profile(const Dataset& ds, int n_splits = 10, double ratio = 0.7,
                          uint64_t seed = 0);

/// Seed used for the i-th split inside profile(); exposed so the averaged
/// result can be recomputed split by split.
uint64_t profile_split_seed(uint64_t seed, int split_index);

/// Epsilon-neighborhood graph: vertices are samples, an edge joins pairs
/// whose distance (normalized by the max pairwise distance) is below eps
/// and whose classes agree (inter-class edges are pruned).
struct EpsilonGraph {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> weights;  // 1 - normalized distance
  std::vector<std::vector<int>> adjacency;
};

EpsilonGraph build_epsilon_graph(const Dataset& ds, double eps = 0.15);

Eigen::MatrixXd distance_matrix(const Eigen::MatrixXd& X);

/// Minimum-spanning-tree edges of a symmetric distance matrix (Prim,
/// lowest-index tie-break). Exposed for the oracle tests.
std::vector<std::pair<int, int>> mst_edges(const Eigen::MatrixXd& dist);

}  // namespace qarp
