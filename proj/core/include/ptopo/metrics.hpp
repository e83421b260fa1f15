#pragma once

#include <vector>

#include "ptopo/persistence.hpp"

namespace ptopo {

struct DiagramPoint {
  double x = 0, y = 0;  // (birth, death)
};

std::vector<DiagramPoint> diagram_points(const PersistenceDiagram& d);

/// d_q(a, b) = (|xb-xa|^q + |yb-ya|^q)^(1/q); zero when both points lie
/// exactly on the diagonal.
double pointwise_distance(const DiagramPoint& a, const DiagramPoint& b,
                          double q);

/// Exact Lq-Wasserstein distance: optimal assignment where every point may
/// match a point of the other diagram or its own diagonal projection.
double wasserstein(const std::vector<DiagramPoint>& d1,
                   const std::vector<DiagramPoint>& d2, double q);

double wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                   double q);

/// W2(final, level) / W2(final, empty); runs from 1 to 0 over a hierarchy.
double normalized_distance(const PersistenceDiagram& final_diagram,
                           const PersistenceDiagram& level_diagram);

struct SignificantPairIndicators {
  int n_significant = 0;       // significant pairs of the final diagram
  int n_captured = 0;          // of the level's top pairs, still significant
  double ratio = 0;            // n_captured / n_significant
  double avg_persistence_ratio = 0;
  bool defined = false;        // n_significant > 0
  bool avg_defined = false;    // n_captured > 0
};

/// Relative persistence is measured against the final diagram's global
/// range. threshold defaults to 0.1.
SignificantPairIndicators significant_pair_indicators(
    const PersistenceDiagram& final_diagram,
    const PersistenceDiagram& level_diagram, double threshold = 0.1);

struct ConvergenceRow {
  int level = 0;
  double elapsed_ms = 0;
  double normalized_w2 = 0;
  double sig_ratio = 0;
  double avg_persistence_ratio = 0;
  bool sig_defined = false;
};

}  // namespace ptopo
