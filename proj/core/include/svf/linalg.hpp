#pragma once

#include <Eigen/Dense>

namespace svf {

// Ambient dimension is 2k+2 with k <= 3, so every vector and matrix in the
// library fits in fixed stack storage of size 8.
inline constexpr int kMaxAmbientDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor,
                          kMaxAmbientDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                          Eigen::ColMajor, kMaxAmbientDim, kMaxAmbientDim>;

}  // namespace svf
