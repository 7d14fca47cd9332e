#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "tetra/numkit.hpp"

namespace tetra {

/// An operator triple on a graded space: a base block followed by repeated
/// fiber blocks (H + N defect copies for dilations, N symbol copies for
/// truncated Hardy models). Identities involving adjoints hold only on
/// levels below the truncation edge; edge_note records which.
struct GradedTriple {
  CMatrix T1, T2, T3;
  std::vector<Eigen::Index> level_dims;
  int levels = 0;  // truncation depth parameter N as requested by the caller
  std::string edge_note;
  ToleranceProfile tol;

  Eigen::Index total_dim() const {
    return std::accumulate(level_dims.begin(), level_dims.end(),
                           Eigen::Index{0});
  }

  /// Sum of level_dims[0 .. upto_level] (inclusive); -1 gives 0.
  Eigen::Index dim_through_level(int upto_level) const {
    Eigen::Index s = 0;
    for (int l = 0; l <= upto_level && l < static_cast<int>(level_dims.size()); ++l)
      s += level_dims[l];
    return s;
  }

  /// Inclusion of the first (max_level + 1) levels: total_dim x m selection
  /// with m = dim_through_level(max_level).
  CMatrix interior_embed(int max_level) const {
    const Eigen::Index m = dim_through_level(max_level);
    CMatrix e = CMatrix::Zero(total_dim(), m);
    e.topLeftCorner(m, m).setIdentity();
    return e;
  }
};

}  // namespace tetra
