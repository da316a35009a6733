#include "qarp/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "qarp/learners.hpp"
#include "qarp/rng.hpp"

namespace qarp {

namespace {

constexpr double kEnemyEps = 1e-12;   // duplicate points with different labels
constexpr uint64_t kInterpSeed = 0x1e370;  // fixed stream for L3/N4 interpolants

void require_multiclass(const Dataset& ds, const char* what) {
  if (ds.n_classes < 2)
    throw std::runtime_error(std::string(what) + ": dataset '" + ds.name +
                             "' has a single class");
}

std::vector<std::vector<int>> samples_by_class(const Dataset& ds) {
  std::vector<std::vector<int>> byc(ds.n_classes);
  for (int i = 0; i < ds.n_samples(); ++i) byc[ds.labels[i]].push_back(i);
  return byc;
}

/// Lexicographic sample order inside a class, so that randomized
/// sub-procedures do not depend on how the rows happen to be stored.
std::vector<int> canonical_order(const Eigen::MatrixXd& X, const std::vector<int>& members) {
  std::vector<int> order = members;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    for (Eigen::Index f = 0; f < X.cols(); ++f) {
      if (X(a, f) != X(b, f)) return X(a, f) < X(b, f);
    }
    return false;
  });
  return order;
}

struct PairView {
  Eigen::MatrixXd X;
  std::vector<int> y;  // 0/1
};

PairView make_pair_view(const Dataset& ds, const std::vector<int>& a,
                        const std::vector<int>& b) {
  PairView v;
  v.X.resize(a.size() + b.size(), ds.n_features());
  v.y.resize(a.size() + b.size());
  Eigen::Index r = 0;
  for (int i : a) {
    v.X.row(r) = ds.features.row(i);
    v.y[r++] = 0;
  }
  for (int i : b) {
    v.X.row(r) = ds.features.row(i);
    v.y[r++] = 1;
  }
  return v;
}

double ovo_average(const Dataset& ds, const std::function<double(const PairView&)>& fn) {
  const auto byc = samples_by_class(ds);
  double acc = 0.0;
  int pairs = 0;
  for (int a = 0; a < ds.n_classes; ++a)
    for (int b = a + 1; b < ds.n_classes; ++b) {
      acc += fn(make_pair_view(ds, byc[a], byc[b]));
      ++pairs;
    }
  return acc / pairs;
}

struct Interval {
  double lo = 0.0, hi = -1.0;  // empty unless lo <= hi
  bool empty() const { return lo > hi; }
};

/// Overlap interval of one feature between classes 0 and 1 of a pair view,
/// restricted to the samples in `active`.
Interval overlap_interval(const PairView& v, const std::vector<int>& active, int f) {
  double min0 = 0, max0 = 0, min1 = 0, max1 = 0;
  bool has0 = false, has1 = false;
  for (int i : active) {
    const double x = v.X(i, f);
    if (v.y[i] == 0) {
      min0 = has0 ? std::min(min0, x) : x;
      max0 = has0 ? std::max(max0, x) : x;
      has0 = true;
    } else {
      min1 = has1 ? std::min(min1, x) : x;
      max1 = has1 ? std::max(max1, x) : x;
      has1 = true;
    }
  }
  if (!has0 || !has1) return {};
  return {std::max(min0, min1), std::min(max0, max1)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Feature measures
// ---------------------------------------------------------------------------

FeatureMeasures feature_measures(const Dataset& ds) {
  require_multiclass(ds, "feature_measures");
  ds.validate();
  const auto byc = samples_by_class(ds);
  for (int c = 0; c < ds.n_classes; ++c)
    if (byc[c].size() < 2)
      throw std::runtime_error("feature_measures: class " + std::to_string(c) +
                               " has fewer than 2 samples");
  const int n = ds.n_samples(), m = ds.n_features();

  // F1: complemented maximum Fisher discriminant ratio across features.
  double max_ratio = 0.0;
  for (int f = 0; f < m; ++f) {
    const double mu = ds.features.col(f).mean();
    double between = 0.0, within = 0.0;
    for (int c = 0; c < ds.n_classes; ++c) {
      double mc = 0.0;
      for (int i : byc[c]) mc += ds.features(i, f);
      mc /= byc[c].size();
      between += byc[c].size() * (mc - mu) * (mc - mu);
      for (int i : byc[c]) within += (ds.features(i, f) - mc) * (ds.features(i, f) - mc);
    }
    const double r = within > 0.0 ? between / within : (between > 0.0 ? 1e18 : 0.0);
    max_ratio = std::max(max_ratio, r);
  }
  const double f1 = 1.0 / (1.0 + max_ratio);

  // F1v: directional Fisher ratio, one-vs-one.
  const double f1v = ovo_average(ds, [&](const PairView& v) {
    std::vector<int> c0, c1;
    for (size_t i = 0; i < v.y.size(); ++i)
      (v.y[i] == 0 ? c0 : c1).push_back(static_cast<int>(i));
    Eigen::VectorXd mu0 = Eigen::VectorXd::Zero(m), mu1 = Eigen::VectorXd::Zero(m);
    for (int i : c0) mu0 += v.X.row(i).transpose();
    for (int i : c1) mu1 += v.X.row(i).transpose();
    mu0 /= c0.size();
    mu1 /= c1.size();
    Eigen::MatrixXd s0 = Eigen::MatrixXd::Zero(m, m), s1 = Eigen::MatrixXd::Zero(m, m);
    for (int i : c0) {
      const Eigen::VectorXd d = v.X.row(i).transpose() - mu0;
      s0 += d * d.transpose();
    }
    for (int i : c1) {
      const Eigen::VectorXd d = v.X.row(i).transpose() - mu1;
      s1 += d * d.transpose();
    }
    const double p0 = static_cast<double>(c0.size()) / v.y.size();
    const double p1 = static_cast<double>(c1.size()) / v.y.size();
    const Eigen::MatrixXd W = p0 * (s0 / c0.size()) + p1 * (s1 / c1.size());
    const Eigen::VectorXd diff = mu0 - mu1;
    const Eigen::VectorXd d =
        W.completeOrthogonalDecomposition().pseudoInverse() * diff;
    const double denom = d.dot(W * d);
    const double numer = d.dot(diff) * d.dot(diff);  // d^T B d with B = diff diff^T
    const double ratio = denom > 0.0 ? numer / denom : (numer > 0.0 ? 1e18 : 0.0);
    return 1.0 / (1.0 + ratio);
  });

  // F2: product over features of normalized overlap length, one-vs-one.
  const double f2 = ovo_average(ds, [&](const PairView& v) {
    std::vector<int> all(v.y.size());
    std::iota(all.begin(), all.end(), 0);
    double prod = 1.0;
    for (int f = 0; f < m; ++f) {
      double mn0 = 1e300, mx0 = -1e300, mn1 = 1e300, mx1 = -1e300;
      for (int i : all) {
        const double x = v.X(i, f);
        if (v.y[i] == 0) {
          mn0 = std::min(mn0, x);
          mx0 = std::max(mx0, x);
        } else {
          mn1 = std::min(mn1, x);
          mx1 = std::max(mx1, x);
        }
      }
      const double overlap = std::min(mx0, mx1) - std::max(mn0, mn1);
      const double range = std::max(mx0, mx1) - std::min(mn0, mn1);
      double ratio;
      if (range > 0.0)
        ratio = std::max(0.0, overlap) / range;
      else
        ratio = overlap >= 0.0 ? 1.0 : 0.0;  // all values equal
      prod *= ratio;
    }
    return prod;
  });

  // F3: complemented maximum individual feature efficiency, one-vs-one.
  const double f3 = ovo_average(ds, [&](const PairView& v) {
    std::vector<int> all(v.y.size());
    std::iota(all.begin(), all.end(), 0);
    double best = 1.0;
    for (int f = 0; f < m; ++f) {
      const Interval iv = overlap_interval(v, all, f);
      int inside = 0;
      if (!iv.empty())
        for (int i : all) inside += v.X(i, f) >= iv.lo && v.X(i, f) <= iv.hi;
      best = std::min(best, static_cast<double>(inside) / all.size());
    }
    return best;
  });

  // F4: collective feature efficiency, one-vs-one greedy elimination.
  const double f4 = ovo_average(ds, [&](const PairView& v) {
    std::vector<int> active(v.y.size());
    std::iota(active.begin(), active.end(), 0);
    std::vector<int> remaining(m);
    std::iota(remaining.begin(), remaining.end(), 0);
    while (!remaining.empty() && !active.empty()) {
      int best_f = -1;
      size_t best_inside = active.size() + 1;
      std::vector<int> best_kept;
      for (int f : remaining) {
        const Interval iv = overlap_interval(v, active, f);
        std::vector<int> kept;
        if (!iv.empty())
          for (int i : active)
            if (v.X(i, f) >= iv.lo && v.X(i, f) <= iv.hi) kept.push_back(i);
        if (kept.size() < best_inside) {
          best_inside = kept.size();
          best_f = f;
          best_kept = std::move(kept);
        }
      }
      active = std::move(best_kept);
      remaining.erase(std::find(remaining.begin(), remaining.end(), best_f));
    }
    return static_cast<double>(active.size()) / v.y.size();
  });

  (void)n;
  return {f1, f1v, f2, f3, f4};
}

// ---------------------------------------------------------------------------
// Linearity measures
// ---------------------------------------------------------------------------

namespace {

/// Same-class interpolants: one synthetic point per original sample of the
/// class, endpoints drawn over the canonical in-class order. Each class
/// seeds its own stream from its (canonically ordered) content, so the
/// result is invariant to sample order and to class relabeling.
struct Interpolants {
  Eigen::MatrixXd X;
  std::vector<int> y;
};

uint64_t content_hash(const Eigen::MatrixXd& X, const std::vector<int>& order) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (int i : order)
    for (Eigen::Index f = 0; f < X.cols(); ++f) {
      uint64_t bits;
      const double v = X(i, f);
      std::memcpy(&bits, &v, sizeof bits);
      for (int byte = 0; byte < 8; ++byte) {
        h ^= (bits >> (8 * byte)) & 0xff;
        h *= 0x100000001b3ULL;
      }
    }
  return h;
}

Interpolants make_interpolants(const Eigen::MatrixXd& X, const std::vector<int>& y,
                               int n_classes) {
  std::vector<std::vector<int>> byc(n_classes);
  for (size_t i = 0; i < y.size(); ++i) byc[y[i]].push_back(static_cast<int>(i));
  Interpolants out;
  out.X.resize(y.size(), X.cols());
  out.y.resize(y.size());
  Eigen::Index r = 0;
  std::uniform_real_distribution<double> coeff(0.0, 1.0);
  for (int c = 0; c < n_classes; ++c) {
    const auto order = canonical_order(X, byc[c]);
    const int nc = static_cast<int>(order.size());
    if (nc == 0) continue;
    auto rng = make_rng(mix_seed(kInterpSeed, {content_hash(X, order)}));
    std::uniform_int_distribution<int> pick(0, nc - 1);
    for (int k = 0; k < nc; ++k) {
      const int a = order[pick(rng)], b = order[pick(rng)];
      const double t = coeff(rng);
      out.X.row(r) = X.row(a) + t * (X.row(b) - X.row(a));
      out.y[r++] = c;
    }
  }
  return out;
}

}  // namespace

LinearityMeasures linearity_measures(const Dataset& ds) {
  require_multiclass(ds, "linearity_measures");
  ds.validate();

  double l1 = 0.0, l2 = 0.0, l3 = 0.0;
  int pairs = 0;
  const auto byc = samples_by_class(ds);
  for (int a = 0; a < ds.n_classes; ++a)
    for (int b = a + 1; b < ds.n_classes; ++b) {
      const PairView v = make_pair_view(ds, byc[a], byc[b]);
      const LinearModel model = train_linear_svm(v.X, v.y);
      if (!model.w.allFinite())
        throw std::runtime_error("linearity_measures: linear trainer diverged after 1000 iters");
      const double wn = std::max(model.w.norm(), 1e-12);

      int errors = 0;
      double dist_sum = 0.0;
      for (Eigen::Index i = 0; i < v.X.rows(); ++i) {
        const double dec = model.decision(v.X.row(i).transpose());
        if ((dec >= 0.0 ? 1 : 0) != v.y[i]) {
          ++errors;
          dist_sum += std::abs(dec) / wn;
        }
      }
      const double nd = std::min(dist_sum / v.y.size(), 1e15);
      l1 += nd / (1.0 + nd);
      l2 += static_cast<double>(errors) / v.y.size();

      const Interpolants interp = make_interpolants(v.X, v.y, 2);
      int ierr = 0;
      for (Eigen::Index i = 0; i < interp.X.rows(); ++i)
        ierr += model.predict(interp.X.row(i).transpose()) != interp.y[i];
      l3 += static_cast<double>(ierr) / interp.y.size();
      ++pairs;
    }
  return {l1 / pairs, l2 / pairs, l3 / pairs};
}

// ---------------------------------------------------------------------------
// Neighborhood measures
// ---------------------------------------------------------------------------

Eigen::MatrixXd distance_matrix(const Eigen::MatrixXd& X) {
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (X.row(i) - X.row(j)).norm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

std::vector<std::pair<int, int>> mst_edges(const Eigen::MatrixXd& dist) {
  const int n = static_cast<int>(dist.rows());
  std::vector<std::pair<int, int>> edges;
  if (n < 2) return edges;
  std::vector<char> in_tree(n, 0);
  std::vector<double> key(n, 1e300);
  std::vector<int> parent(n, -1);
  key[0] = 0.0;
  for (int step = 0; step < n; ++step) {
    int u = -1;
    for (int i = 0; i < n; ++i)
      if (!in_tree[i] && (u < 0 || key[i] < key[u])) u = i;
    in_tree[u] = 1;
    if (parent[u] >= 0) edges.emplace_back(parent[u], u);
    for (int w = 0; w < n; ++w)
      if (!in_tree[w] && dist(u, w) < key[w]) {
        key[w] = dist(u, w);
        parent[w] = u;
      }
  }
  return edges;
}

NeighborhoodMeasures neighborhood_measures(const Dataset& ds) {
  require_multiclass(ds, "neighborhood_measures");
  ds.validate();
  const auto byc = samples_by_class(ds);
  for (int c = 0; c < ds.n_classes; ++c)
    if (byc[c].size() < 2)
      throw std::runtime_error("neighborhood_measures: class " + std::to_string(c) +
                               " has fewer than 2 samples");
  const int n = ds.n_samples();
  const Eigen::MatrixXd dist = distance_matrix(ds.features);

  // N1 from the MST.
  std::vector<char> borderline(n, 0);
  for (const auto& [a, b] : mst_edges(dist))
    if (ds.labels[a] != ds.labels[b]) borderline[a] = borderline[b] = 1;
  const double n1 =
      std::accumulate(borderline.begin(), borderline.end(), 0.0) / n;

  // Nearest intra/extra neighbors; ties resolved to the lowest index by the
  // strict < scan order.
  std::vector<double> intra(n, 1e300), extra(n, 1e300);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (ds.labels[i] == ds.labels[j])
        intra[i] = std::min(intra[i], dist(i, j));
      else
        extra[i] = std::min(extra[i], dist(i, j));
    }
  double intra_sum = 0.0, extra_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    intra_sum += intra[i];
    extra_sum += extra[i];
  }
  double n2;
  if (extra_sum > 0.0) {
    const double rho = intra_sum / extra_sum;
    n2 = rho / (1.0 + rho);
  } else {
    n2 = intra_sum > 0.0 ? 1.0 : 0.0;
  }

  // N3: leave-one-out 1NN error.
  int n3_err = 0;
  for (int i = 0; i < n; ++i) {
    int nn = -1;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (nn < 0 || dist(i, j) < dist(i, nn)) nn = j;
    }
    n3_err += ds.labels[nn] != ds.labels[i];
  }
  const double n3 = static_cast<double>(n3_err) / n;

  // N4: 1NN over the original points, queried with same-class interpolants.
  const Interpolants interp = make_interpolants(ds.features, ds.labels, ds.n_classes);
  int n4_err = 0;
  for (Eigen::Index q = 0; q < interp.X.rows(); ++q) {
    int nn = 0;
    double best = (ds.features.row(0) - interp.X.row(q)).norm();
    for (int j = 1; j < n; ++j) {
      const double d = (ds.features.row(j) - interp.X.row(q)).norm();
      if (d < best) {
        best = d;
        nn = j;
      }
    }
    n4_err += ds.labels[nn] != interp.y[q];
  }
  const double n4 = static_cast<double>(n4_err) / interp.y.size();

  // T1: hyperspheres at each point with nearest-enemy radius; spheres fully
  // contained in another are absorbed. Coincident same-radius duplicates
  // keep the lowest-index sphere.
  std::vector<double> radius(n);
  for (int i = 0; i < n; ++i) radius[i] = std::max(extra[i], kEnemyEps);
  int retained = 0;
  for (int i = 0; i < n; ++i) {
    bool absorbed = false;
    for (int j = 0; j < n && !absorbed; ++j) {
      if (j == i) continue;
      if (dist(i, j) + radius[i] <= radius[j] &&
          (radius[j] > radius[i] || (dist(i, j) == 0.0 && j < i)))
        absorbed = true;
    }
    retained += !absorbed;
  }
  const double t1 = static_cast<double>(retained) / n;

  // LSC: local sets bounded by the nearest enemy.
  double ls_total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double bound = std::max(extra[i], kEnemyEps);
    for (int j = 0; j < n; ++j)
      if (j != i && dist(i, j) < bound) ls_total += 1.0;
  }
  const double lsc = 1.0 - ls_total / (static_cast<double>(n) * n);

  return {n1, n2, n3, n4, t1, lsc};
}

// ---------------------------------------------------------------------------
// Network measures
// ---------------------------------------------------------------------------

EpsilonGraph build_epsilon_graph(const Dataset& ds, double eps) {
  ds.validate();
  const int n = ds.n_samples();
  const Eigen::MatrixXd dist = distance_matrix(ds.features);
  double dmax = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) dmax = std::max(dmax, dist(i, j));

  EpsilonGraph g;
  g.n_vertices = n;
  g.adjacency.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double nd = dmax > 0.0 ? dist(i, j) / dmax : 0.0;
      if (nd < eps && ds.labels[i] == ds.labels[j]) {
        g.edges.emplace_back(i, j);
        g.weights.push_back(1.0 - nd);
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
      }
    }
  return g;
}

NetworkMeasures network_measures(const Dataset& ds) {
  if (ds.n_samples() < 3) throw std::runtime_error("network_measures: need at least 3 samples");
  const EpsilonGraph g = build_epsilon_graph(ds);
  const int n = g.n_vertices;

  if (g.edges.empty()) return {1.0, 1.0, 1.0};

  const double density =
      1.0 - 2.0 * static_cast<double>(g.edges.size()) / (static_cast<double>(n) * (n - 1));

  // Clustering coefficient with a dense adjacency lookup.
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& [a, b] : g.edges) adj[a][b] = adj[b][a] = 1;
  double coef_sum = 0.0;
  for (int v = 0; v < n; ++v) {
    const auto& nb = g.adjacency[v];
    const int k = static_cast<int>(nb.size());
    if (k < 2) continue;
    int links = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) links += adj[nb[a]][nb[b]];
    coef_sum += 2.0 * links / (static_cast<double>(k) * (k - 1));
  }
  const double cls_coef = 1.0 - coef_sum / n;

  // Hub scores: principal eigenvector of the adjacency by power iteration,
  // max-normalized.
  Eigen::VectorXd h = Eigen::VectorXd::Ones(n);
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(n);
    for (int v = 0; v < n; ++v)
      for (int u : g.adjacency[v]) next[v] += h[u];
    const double norm = next.norm();
    if (norm <= 0.0) {
      h.setZero();
      break;
    }
    next /= norm;
    if ((next - h).lpNorm<Eigen::Infinity>() < 1e-13) {
      h = next;
      break;
    }
    h = next;
  }
  h = h.cwiseAbs();
  const double hmax = h.maxCoeff();
  const double hubs = hmax > 0.0 ? 1.0 - h.sum() / (hmax * n) : 1.0;

  return {density, cls_coef, hubs};
}

// ---------------------------------------------------------------------------
// Dimensionality and balance measures
// ---------------------------------------------------------------------------

DimensionalityMeasures dimensionality_measures(const Dataset& ds) {
  ds.validate();
  const int n = ds.n_samples(), m = ds.n_features();
  if (n < 2) throw std::runtime_error("dimensionality_measures: need at least 2 samples");

  const Eigen::MatrixXd centered = ds.features.rowwise() - ds.features.colwise().mean();
  const Eigen::MatrixXd cov = centered.transpose() * centered / (n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  std::vector<double> ev(eig.eigenvalues().data(), eig.eigenvalues().data() + m);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  double total = 0.0;
  for (double& v : ev) {
    v = std::max(v, 0.0);
    total += v;
  }
  int pca_dims = 0;
  if (total > 0.0) {
    double acc = 0.0;
    for (int k = 0; k < m; ++k) {
      acc += ev[k];
      if (acc / total >= 0.95) {
        pca_dims = k + 1;
        break;
      }
    }
  }
  return {static_cast<double>(m) / n, static_cast<double>(pca_dims) / n,
          static_cast<double>(pca_dims) / m};
}

BalanceMeasures balance_measures(const Dataset& ds) {
  ds.validate();
  const int nc = ds.n_classes;
  if (nc < 2) return {1.0, 0.0};  // pinned degenerate values
  const auto counts = ds.class_counts();
  const double n = ds.n_samples();

  double entropy = 0.0;
  for (int c = 0; c < nc; ++c) {
    const double p = counts[c] / n;
    if (p > 0.0) entropy -= p * std::log(p);
  }
  const double c1 = 1.0 - entropy / std::log(static_cast<double>(nc));

  double ir = 0.0;
  for (int c = 0; c < nc; ++c) ir += counts[c] / (n - counts[c]);
  ir *= static_cast<double>(nc - 1) / nc;
  const double c2 = 1.0 - 1.0 / ir;

  return {c1, c2};
}

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

const std::vector<std::string>& ComplexityProfile::measure_names() {
  static const std::vector<std::string> names = {
      "F1", "F1v", "F2", "F3", "F4", "L1", "L2", "L3", "N1",      "N2",      "N3",
      "N4", "T1",  "LSC", "Density", "ClsCoef", "Hubs", "T2", "T3", "T4", "C1", "C2"};
  return names;
}

std::vector<double> ComplexityProfile::values() const {
  return {f1, f1v, f2, f3, f4, l1, l2, l3, n1, n2, n3,
          n4, t1, lsc, density, cls_coef, hubs, t2, t3, t4, c1, c2};
}

double ComplexityProfile::by_name(const std::string& name) const {
  const auto& names = measure_names();
  const auto vals = values();
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return vals[i];
  throw std::invalid_argument("unknown complexity measure '" + name + "'");
}

void ComplexityProfile::validate() const {
  const auto& names = measure_names();
  const auto vals = values();
  for (size_t i = 0; i < vals.size(); ++i) {
    if (!std::isfinite(vals[i]))
      throw std::runtime_error("measure " + names[i] + " is not finite");
    const std::string& nm = names[i];
    if (nm == "L1") {
      if (vals[i] < 0.0) throw std::runtime_error("L1 must be >= 0");
    } else if (nm == "T2" || nm == "T3") {
      if (vals[i] <= 0.0) throw std::runtime_error(nm + " must be > 0");
    } else if (vals[i] < -1e-12 || vals[i] > 1.0 + 1e-12) {
      throw std::runtime_error("measure " + nm + " outside [0, 1]: " + std::to_string(vals[i]));
    }
  }
}

ComplexityProfile measures(const Dataset& ds) {
  const FeatureMeasures f = feature_measures(ds);
  const LinearityMeasures l = linearity_measures(ds);
  const NeighborhoodMeasures nb = neighborhood_measures(ds);
  const NetworkMeasures nw = network_measures(ds);
  const DimensionalityMeasures dim = dimensionality_measures(ds);
  const BalanceMeasures bal = balance_measures(ds);
  ComplexityProfile p;
  p.f1 = f.f1;
  p.f1v = f.f1v;
  p.f2 = f.f2;
  p.f3 = f.f3;
  p.f4 = f.f4;
  p.l1 = l.l1;
  p.l2 = l.l2;
  p.l3 = l.l3;
  p.n1 = nb.n1;
  p.n2 = nb.n2;
  p.n3 = nb.n3;
  p.n4 = nb.n4;
  p.t1 = nb.t1;
  p.lsc = nb.lsc;
  p.density = nw.density;
  p.cls_coef = nw.cls_coef;
  p.hubs = nw.hubs;
  p.t2 = dim.t2;
  p.t3 = dim.t3;
  p.t4 = dim.t4;
  p.c1 = bal.c1;
  p.c2 = bal.c2;
  p.n_splits_averaged = 1;
  return p;
}

uint64_t profile_split_seed(uint64_t seed, int split_index) {
  return mix_seed(seed, {0xc01, static_cast<uint64_t>(split_index)});
}

ComplexityProfile profile(const Dataset& ds, int n_splits, double ratio, uint64_t seed) {
  if (n_splits < 1) throw std::invalid_argument("profile: n_splits must be >= 1");
  if (n_splits == 1 && ratio >= 1.0) return measures(ds);

  std::vector<ComplexityProfile> parts;
  parts.reserve(n_splits);
  for (int s = 0; s < n_splits; ++s) {
    try {
      const SplitPair sp = split(ds, ratio, profile_split_seed(seed, s));
      parts.push_back(measures(sp.train));
    } catch (const std::exception& e) {
      throw std::runtime_error("profile: split " + std::to_string(s) + ": " + e.what());
    }
  }
  ComplexityProfile avg;
  auto acc = std::vector<double>(ComplexityProfile::measure_names().size(), 0.0);
  for (const auto& p : parts) {
    const auto vals = p.values();
    for (size_t i = 0; i < vals.size(); ++i) acc[i] += vals[i];
  }
  for (double& v : acc) v /= n_splits;
  avg.f1 = acc[0];
  avg.f1v = acc[1];
  avg.f2 = acc[2];
  avg.f3 = acc[3];
  avg.f4 = acc[4];
  avg.l1 = acc[5];
  avg.l2 = acc[6];
  avg.l3 = acc[7];
  avg.n1 = acc[8];
  avg.n2 = acc[9];
  avg.n3 = acc[10];
  avg.n4 = acc[11];
  avg.t1 = acc[12];
  avg.lsc = acc[13];
  avg.density = acc[14];
  avg.cls_coef = acc[15];
  avg.hubs = acc[16];
  avg.t2 = acc[17];
  avg.t3 = acc[18];
  avg.t4 = acc[19];
  avg.c1 = acc[20];
  avg.c2 = acc[21];
  avg.n_splits_averaged = n_splits;
  return avg;
}

}  // namespace qarp
