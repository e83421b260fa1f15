#include "ptopo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ptopo {

namespace {

bool on_diagonal(const DiagramPoint& p) { return p.x == p.y; }

// cost of matching two points, already raised to the q-th power
double cost_q(const DiagramPoint& a, const DiagramPoint& b, double q) {
  if (on_diagonal(a) && on_diagonal(b)) return 0.0;
  return std::pow(std::abs(b.x - a.x), q) + std::pow(std::abs(b.y - a.y), q);
}

double diagonal_cost_q(const DiagramPoint& a, double q) {
  const double half = std::abs(a.y - a.x) / 2.0;
  return 2.0 * std::pow(half, q);
}

// exact min-cost perfect matching on a dense square matrix
// (Hungarian algorithm with potentials, O(n^3))
double assignment_cost(const std::vector<std::vector<double>>& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 0.0;
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  double cost = 0;
  for (int j = 1; j <= n; ++j) cost += a[p[j] - 1][j - 1];
  return cost;
}

bool points_less(const DiagramPoint& a, const DiagramPoint& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

bool canonical_before(const std::vector<DiagramPoint>& a,
                      const std::vector<DiagramPoint>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  auto sa = a, sb = b;
  std::sort(sa.begin(), sa.end(), points_less);
  std::sort(sb.begin(), sb.end(), points_less);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i].x != sb[i].x) return sa[i].x < sb[i].x;
    if (sa[i].y != sb[i].y) return sa[i].y < sb[i].y;
  }
  return false;
}

}  // namespace

std::vector<DiagramPoint> diagram_points(const PersistenceDiagram& d) {
  std::vector<DiagramPoint> out;
  out.reserve(d.pairs.size());
  for (const PersistencePair& p : d.pairs)
    out.push_back(DiagramPoint{p.birth_value, p.death_value});
  return out;
}

double pointwise_distance(const DiagramPoint& a, const DiagramPoint& b,
                          double q) {
  if (q <= 0) throw std::invalid_argument("q must be positive");
  return std::pow(cost_q(a, b, q), 1.0 / q);
}

double wasserstein(const std::vector<DiagramPoint>& d1,
                   const std::vector<DiagramPoint>& d2, double q) {
  if (q <= 0) throw std::invalid_argument("q must be positive");
  // argument order does not change the optimum; canonicalize it so the
  // computed value is bitwise symmetric
  const std::vector<DiagramPoint>* a = &d1;
  const std::vector<DiagramPoint>* b = &d2;
  if (canonical_before(*b, *a)) std::swap(a, b);

  const int n1 = static_cast<int>(a->size());
  const int n2 = static_cast<int>(b->size());
  const int n = n1 + n2;
  if (n == 0) return 0.0;
  if (n > 20000)
    throw std::invalid_argument("diagrams too large for the exact solver");

  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n1; ++i) {
    const double diag = diagonal_cost_q((*a)[i], q);
    for (int j = 0; j < n2; ++j) cost[i][j] = cost_q((*a)[i], (*b)[j], q);
    for (int j = n2; j < n; ++j) cost[i][j] = diag;
  }
  for (int i = n1; i < n; ++i) {
    for (int j = 0; j < n2; ++j) cost[i][j] = diagonal_cost_q((*b)[j], q);
    // ghost-to-ghost entries stay zero
  }
  return std::pow(assignment_cost(cost), 1.0 / q);
}

double wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                   double q) {
  return wasserstein(diagram_points(d1), diagram_points(d2), q);
}

double normalized_distance(const PersistenceDiagram& final_diagram,
                           const PersistenceDiagram& level_diagram) {
  if (final_diagram.pairs.empty())
    throw std::invalid_argument("final diagram must not be empty");
  const auto fp = diagram_points(final_diagram);
  const auto lp = diagram_points(level_diagram);
  const double denom = wasserstein(fp, {}, 2.0);
  const double num = wasserstein(fp, lp, 2.0);
  if (denom == 0.0) {
    if (num == 0.0) return 0.0;
    throw std::runtime_error("normalization undefined: final diagram is diagonal");
  }
  return num / denom;
}

SignificantPairIndicators significant_pair_indicators(
    const PersistenceDiagram& final_diagram,
    const PersistenceDiagram& level_diagram, double threshold) {
  SignificantPairIndicators out;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const PersistencePair& p : final_diagram.pairs) {
    lo = std::min(lo, p.birth_value);
    hi = std::max(hi, p.death_value);
  }
  const double range = hi - lo;
  if (final_diagram.pairs.empty() || !(range > 0)) return out;

  std::vector<double> final_sig;
  for (const PersistencePair& p : final_diagram.pairs)
    if (p.persistence() / range > threshold)
      final_sig.push_back(p.persistence());
  out.n_significant = static_cast<int>(final_sig.size());
  if (out.n_significant == 0) return out;
  out.defined = true;

  std::vector<double> level_pers;
  for (const PersistencePair& p : level_diagram.pairs)
    level_pers.push_back(p.persistence());
  std::sort(level_pers.begin(), level_pers.end(), std::greater<>());
  if (static_cast<int>(level_pers.size()) > out.n_significant)
    level_pers.resize(out.n_significant);

  double captured_sum = 0;
  for (double pers : level_pers) {
    if (pers / range > threshold) {
      ++out.n_captured;
      captured_sum += pers;
    }
  }
  out.ratio = static_cast<double>(out.n_captured) / out.n_significant;
  if (out.n_captured > 0) {
    double final_sum = 0;
    for (double pers : final_sig) final_sum += pers;
    out.avg_persistence_ratio = (captured_sum / out.n_captured) /
                                (final_sum / out.n_significant);
    out.avg_defined = true;
  }
  return out;
}

}  // namespace ptopo
