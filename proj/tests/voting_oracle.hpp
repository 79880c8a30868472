#pragma once

// Brute-force reference for segment voting on scores drawn from the grid
// k/16, so every sum and mean is exact and ties are genuine.

#include <algorithm>
#include <random>
#include <vector>

#include "foveal/labels.hpp"
#include "foveal/voting.hpp"

namespace oracle {

struct GridFrames {
  std::vector<std::vector<int>> pose, hh, ho;  // [frame][class] numerators over 16
};

inline GridFrames random_grid(std::mt19937& rng, int frames, int pose, int hh, int ho) {
  std::uniform_int_distribution<int> k(0, 16);
  const auto table = [&](int n) {
    std::vector<std::vector<int>> t(frames, std::vector<int>(n));
    for (auto& row : t)
      for (int& v : row) v = k(rng);
    return t;
  };
  return {table(pose), table(hh), table(ho)};
}

inline std::vector<foveal::ScoreVector> to_scores(const GridFrames& g) {
  std::vector<foveal::ScoreVector> out;
  for (std::size_t f = 0; f < g.pose.size(); ++f) {
    const auto v = [](const std::vector<int>& row) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(row.size()));
      for (std::size_t i = 0; i < row.size(); ++i) x(static_cast<Eigen::Index>(i)) = row[i] / 16.0;
      return x;
    };
    out.push_back({v(g.pose[f]), v(g.hh[f]), v(g.ho[f])});
  }
  return out;
}

inline std::vector<int> counts(const std::vector<std::vector<int>>& head, double threshold) {
  std::vector<int> c(head.front().size(), 0);
  for (const auto& row : head)
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] / 16.0 > threshold) ++c[j];
  return c;
}

inline std::vector<int> ranked_head(const std::vector<std::vector<int>>& head, double threshold) {
  const std::vector<int> votes = counts(head, threshold);
  std::vector<int> sums(votes.size(), 0);
  for (const auto& row : head)
    for (std::size_t j = 0; j < row.size(); ++j) sums[j] += row[j];
  // Repeated selection of the best remaining class.
  std::vector<bool> taken(votes.size(), false);
  std::vector<int> out;
  for (int pick = 0; pick < 3; ++pick) {
    int best = -1;
    for (int j = 0; j < static_cast<int>(votes.size()); ++j) {
      if (taken[j] || votes[j] == 0) continue;
      if (best < 0 || votes[j] > votes[best] || (votes[j] == votes[best] && sums[j] > sums[best])) best = j;
    }
    if (best < 0) break;
    taken[best] = true;
    out.push_back(best);
  }
  return out;
}

inline foveal::SegmentPrediction aggregate(const GridFrames& g, double threshold) {
  std::vector<int> table(g.pose.front().size(), 0);
  for (const auto& row : g.pose) {
    int arg = 0;
    for (int j = 1; j < static_cast<int>(row.size()); ++j)
      if (row[j] > row[arg]) arg = j;
    ++table[arg];
  }
  int pose = 0;
  for (int j = 1; j < static_cast<int>(table.size()); ++j)
    if (table[j] > table[pose]) pose = j;
  return {pose, ranked_head(g.hh, threshold), ranked_head(g.ho, threshold)};
}

}  // namespace oracle
