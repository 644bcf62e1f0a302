#pragma once

// Brute-force classical reference used as an independent oracle against the
// quantum-side procedures, plus a generator of randomized finite group
// actions (small permutation groups acting on up to 8 points).

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cqg/examples.hpp"

namespace oracle {

/// Orbits of a permutation action by breadth-first search over x → g·x.
inline std::vector<std::vector<int>> classical_orbits(
    const std::vector<std::vector<int>>& action, int points) {
  std::vector<std::vector<int>> orbits;
  std::vector<bool> seen(points, false);
  for (int start = 0; start < points; ++start) {
    if (seen[start]) continue;
    std::vector<int> orbit{start};
    seen[start] = true;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const auto& perm : action) {
        int y = perm[orbit[head]];
        if (!seen[y]) {
          seen[y] = true;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  std::sort(orbits.begin(), orbits.end());
  return orbits;
}

inline bool classical_transitive(const std::vector<std::vector<int>>& action,
                                 int points) {
  return classical_orbits(action, points).size() == 1;
}

/// Extreme invariant probability measures of a classical action: the uniform
/// measures on the orbits (classical ergodic decomposition).
inline Eigen::MatrixXd classical_vertices(
    const std::vector<std::vector<int>>& action, int points) {
  auto orbits = classical_orbits(action, points);
  Eigen::MatrixXd vertices =
      Eigen::MatrixXd::Zero(static_cast<int>(orbits.size()), points);
  for (std::size_t b = 0; b < orbits.size(); ++b) {
    for (int p : orbits[b]) {
      vertices(static_cast<int>(b), p) = 1.0 / orbits[b].size();
    }
  }
  return vertices;
}

/// Sorts vertex rows lexicographically so vertex sets compare entrywise.
inline Eigen::MatrixXd sorted_rows(const Eigen::MatrixXd& m) {
  std::vector<int> order(m.rows());
  for (int i = 0; i < m.rows(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    for (int c = 0; c < m.cols(); ++c) {
      const double da = m(a, c), db = m(b, c);
      if (std::abs(da - db) > 1e-10) return da < db;
    }
    return false;
  });
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) out.row(i) = m.row(order[i]);
  return out;
}

struct RandomClassicalAction {
  cqg::PermutationGroup group;
  int points;
};

/// A random permutation group of order ≤ max_order acting on 2..max_points
/// points, generated by one or two short cycles (retry until the closure
/// respects the cap).
inline RandomClassicalAction random_classical_action(std::mt19937_64& rng,
                                                     int max_points = 8,
                                                     int max_order = 24) {
  for (int attempt = 0;; ++attempt) {
    const int n = 2 + static_cast<int>(rng() % (max_points - 1));
    const int gen_count = (attempt > 40) ? 1 : 1 + static_cast<int>(rng() % 2);
    std::vector<std::vector<int>> gens;
    for (int g = 0; g < gen_count; ++g) {
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      const int len = 2 + static_cast<int>(rng() % 3);
      std::vector<int> pts(n);
      for (int i = 0; i < n; ++i) pts[i] = i;
      std::shuffle(pts.begin(), pts.end(), rng);
      const int cycle = std::min(len, n);
      for (int i = 0; i < cycle; ++i) {
        perm[pts[i]] = pts[(i + 1) % cycle];
      }
      gens.push_back(std::move(perm));
    }
    try {
      cqg::PermutationGroup group = cqg::permutation_group(n, gens, max_order);
      return RandomClassicalAction{std::move(group), n};
    } catch (const cqg::PreconditionError&) {
      // closure exceeded the cap; draw again
    }
  }
}

}  // namespace oracle
