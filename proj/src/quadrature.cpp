#include "igeom/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace ig {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

void gauss_gegenbauer(int q, double alpha, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  if (q < 1) throw std::invalid_argument("gauss_gegenbauer: q must be >= 1");
  if (alpha <= -1.0) throw std::invalid_argument("gauss_gegenbauer: alpha must be > -1");
  // Jacobi matrix for the symmetric weight: zero diagonal,
  // beta_k^2 = k(k+2a) / ((2k+2a+1)(2k+2a-1)), except beta_1^2 = 1/(3+2a).
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(q);
  Eigen::VectorXd sub(q > 1 ? q - 1 : 0);
  for (int k = 1; k < q; ++k) {
    double b2;
    if (k == 1)
      b2 = 1.0 / (3.0 + 2.0 * alpha);
    else
      b2 = k * (k + 2.0 * alpha) / ((2.0 * k + 2.0 * alpha + 1.0) * (2.0 * k + 2.0 * alpha - 1.0));
    sub(k - 1) = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub);
  const double mu0 = std::sqrt(kPi) * std::exp(std::lgamma(alpha + 1.0) - std::lgamma(alpha + 1.5));
  nodes = es.eigenvalues();
  weights.resize(q);
  for (int i = 0; i < q; ++i) {
    const double v = es.eigenvectors()(0, i);
    weights(i) = mu0 * v * v;
  }
}

SphereQuadrature build_quadrature(int n, int target_degree) {
  if (n < 2) throw std::invalid_argument("build_quadrature: n must be >= 2");
  if (target_degree < 0) throw std::invalid_argument("build_quadrature: negative degree");
  const int q = target_degree / 2 + 1;

  SphereQuadrature rule;
  rule.ambient_dim = n;
  rule.exactness_degree = std::max(target_degree, 2 * q - 1);

  if (n == 2) {
    const int m = 2 * q;  // equally spaced, antipodally symmetric
    rule.nodes.resize(m, 2);
    rule.weights = Eigen::VectorXd::Constant(m, 1.0 / m);
    for (int i = 0; i < m; ++i) {
      const double a = 2.0 * kPi * i / m;
      rule.nodes(i, 0) = std::cos(a);
      rule.nodes(i, 1) = std::sin(a);
    }
    return rule;
  }

  const SphereQuadrature sub = build_quadrature(n - 1, target_degree);
  Eigen::VectorXd u, wu;
  gauss_gegenbauer(q, 0.5 * (n - 3), u, wu);

  const long ns = sub.size();
  rule.nodes.resize(q * ns, n);
  rule.weights.resize(q * ns);
  long at = 0;
  for (int i = 0; i < q; ++i) {
    const double c = u(i);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (long j = 0; j < ns; ++j, ++at) {
      rule.nodes(at, 0) = c;
      rule.nodes.row(at).tail(n - 1) = s * sub.nodes.row(j);
      rule.weights(at) = wu(i) * sub.weights(j);
    }
  }
  rule.weights /= rule.weights.sum();
  return rule;
}

}  // namespace ig
