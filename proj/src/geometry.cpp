#include "igeom/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace ig {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double sphere_area(int m) {
  if (m < 0) throw std::invalid_argument("sphere_area: m must be >= 0");
  return 2.0 * std::pow(kPi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

double grassmann_volume(int a, int b) {
  if (b < 0 || a < 0 || b > a)
    throw std::invalid_argument("grassmann_volume: need 0 <= b <= a");
  double v = 1.0;
  for (int i = 0; i < b; ++i) v *= sphere_area(a - 1 - i) / sphere_area(b - 1 - i);
  return v;
}

double ball_volume(int m) {
  if (m < 0) throw std::invalid_argument("ball_volume: m must be >= 0");
  if (m == 0) return 1.0;
  return sphere_area(m - 1) / m;
}

Subspace::Subspace(int ambient_dim, Eigen::MatrixXd frame)
    : n_(ambient_dim), frame_(std::move(frame)) {
  if (n_ < 1) throw std::invalid_argument("Subspace: ambient_dim must be >= 1");
  if (frame_.rows() != n_ || frame_.cols() > n_)
    throw std::invalid_argument("Subspace: frame shape inconsistent with ambient_dim");
  if (frame_.cols() > 0) {
    const Eigen::MatrixXd gram = frame_.transpose() * frame_;
    const double defect =
        (gram - Eigen::MatrixXd::Identity(frame_.cols(), frame_.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-10) throw std::invalid_argument("Subspace: frame is not orthonormal");
  }
}

Subspace Subspace::full(int n) { return Subspace(n, Eigen::MatrixXd::Identity(n, n)); }

Subspace Subspace::zero(int n) { return Subspace(n, Eigen::MatrixXd(n, 0)); }

Subspace Subspace::span(const Eigen::VectorXd& v) {
  const double norm = v.norm();
  if (norm < 1e-14) throw std::invalid_argument("Subspace::span: zero vector");
  Eigen::MatrixXd f(v.size(), 1);
  f.col(0) = v / norm;
  return Subspace(static_cast<int>(v.size()), std::move(f));
}

Eigen::VectorXd Subspace::project(const Eigen::VectorXd& x) const {
  if (dim() == 0) return Eigen::VectorXd::Zero(n_);
  return frame_ * (frame_.transpose() * x);
}

bool Subspace::contains(const Subspace& other, double tol) const {
  for (int c = 0; c < other.dim(); ++c) {
    const Eigen::VectorXd v = other.frame().col(c);
    if ((v - project(v)).norm() > tol) return false;
  }
  return true;
}

bool orthonormalize(Eigen::MatrixXd& cols, double tol) {
  const int m = static_cast<int>(cols.cols());
  for (int j = 0; j < m; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) cols.col(j) -= cols.col(i).dot(cols.col(j)) * cols.col(i);
    }
    const double norm = cols.col(j).norm();
    if (norm < tol) return false;
    cols.col(j) /= norm;
  }
  return true;
}

Subspace haar_subspace(int n, int m, RngStream& rng) {
  if (m < 0 || m > n) throw std::invalid_argument("haar_subspace: need 0 <= m <= n");
  if (m == 0) return Subspace::zero(n);
  while (true) {
    Eigen::MatrixXd g(n, m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < n; ++i) g(i, j) = rng.gaussian();
    // Degenerate draws are measure zero; redraw preserves the Haar law.
    if (orthonormalize(g, 1e-7)) return Subspace(n, std::move(g));
  }
}

Subspace haar_in_fiber(const Subspace& F, int m, RngStream& rng) {
  const int n = F.ambient_dim();
  if (m < F.dim() || m > n)
    throw std::invalid_argument("haar_in_fiber: need dim F <= m <= n");
  if (m == F.dim()) return F;
  while (true) {
    Eigen::MatrixXd g(n, m);
    g.leftCols(F.dim()) = F.frame();
    for (int j = F.dim(); j < m; ++j) {
      Eigen::VectorXd v(n);
      for (int i = 0; i < n; ++i) v(i) = rng.gaussian();
      g.col(j) = v - F.project(v);
    }
    if (orthonormalize(g, 1e-7)) return Subspace(n, std::move(g));
  }
}

Eigen::MatrixXd haar_rotation(int n, RngStream& rng) {
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

Subspace perp(const Subspace& E) {
  const int n = E.ambient_dim();
  const int m = E.dim();
  if (m == 0) return Subspace::full(n);
  if (m == n) return Subspace::zero(n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(E.frame());
  const Eigen::MatrixXd q = qr.householderQ();
  return Subspace(n, q.rightCols(n - m));
}

Eigen::VectorXd principal_angles(const Subspace& E, const Subspace& F) {
  const int d = std::min(E.dim(), F.dim());
  if (d == 0) return Eigen::VectorXd(0);
  const Eigen::MatrixXd m = E.frame().transpose() * F.frame();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  Eigen::VectorXd s = svd.singularValues().head(d);
  Eigen::VectorXd angles(d);
  for (int i = 0; i < d; ++i) angles(d - 1 - i) = std::acos(std::min(1.0, std::max(-1.0, s(i))));
  return angles;
}

double subspace_distance(const Subspace& E, const Subspace& F) {
  if (E.dim() != F.dim())
    throw std::invalid_argument("subspace_distance: dimensions differ");
  if (E.dim() == 0) return 0.0;
  const Eigen::MatrixXd m = E.frame().transpose() * F.frame();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const double smin = svd.singularValues().minCoeff();
  return std::sqrt(std::max(0.0, 1.0 - std::min(1.0, smin) * std::min(1.0, smin)));
}

bool subspace_equal(const Subspace& E, const Subspace& F, double tol) {
  if (E.dim() != F.dim() || E.ambient_dim() != F.ambient_dim()) return false;
  return subspace_distance(E, F) <= tol;
}

double parallelepiped_volume(const std::vector<Eigen::VectorXd>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("parallelepiped_volume: empty list");
  const int m = static_cast<int>(vectors.size());
  Eigen::MatrixXd gram(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) gram(i, j) = gram(j, i) = vectors[i].dot(vectors[j]);
  const double det = gram.determinant();
  return det > 0.0 ? std::sqrt(det) : 0.0;
}

double omega(const std::vector<Subspace>& subspaces) {
  if (subspaces.empty()) throw std::invalid_argument("omega: empty list");
  const int n = subspaces.front().ambient_dim();
  int total = 0;
  for (const auto& e : subspaces) {
    if (e.ambient_dim() != n) throw std::invalid_argument("omega: mixed ambient dims");
    total += e.codim();
  }
  if (total > n)
    throw std::invalid_argument("omega: codimensions over-fill the ambient space");
  Eigen::MatrixXd stacked(n, total);
  int at = 0;
  for (const auto& e : subspaces) {
    const Subspace p = perp(e);
    stacked.middleCols(at, p.dim()) = p.frame();
    at += p.dim();
  }
  Eigen::MatrixXd gram = stacked.transpose() * stacked;
  const double det = gram.determinant();
  return det > 0.0 ? std::min(1.0, std::sqrt(det)) : 0.0;
}

}  // namespace ig
