#pragma once

#include <Eigen/Dense>

namespace ig {

/// Quadrature for the Haar probability measure sigma on S^{n-1}.
/// Integrates every polynomial of degree <= exactness_degree exactly.
struct SphereQuadrature {
  int ambient_dim = 0;
  Eigen::MatrixXd nodes;    // N x n, unit rows
  Eigen::VectorXd weights;  // positive, sum to 1
  int exactness_degree = 0;

  long size() const { return nodes.rows(); }
};

/// Gauss nodes/weights for the weight (1-x^2)^alpha on [-1,1] (Golub-Welsch).
/// Weights sum to the zeroth moment of the weight function.
void gauss_gegenbauer(int q, double alpha, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

/// Product-angle Gauss rule on S^{n-1}, exact to target_degree. n >= 2.
SphereQuadrature build_quadrature(int n, int target_degree);

}  // namespace ig
