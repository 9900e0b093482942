#pragma once

#include <Eigen/Dense>
#include <vector>

#include "igeom/rng.hpp"

namespace ig {

/// Volume of the unit sphere S^m (so |S^0| = 2, |S^1| = 2*pi).
double sphere_area(int m);

/// Volume of the Grassmann manifold G(a,b) as the quotient product of
/// sphere volumes; |G(a,0)| = |G(a,a)| = 1.
double grassmann_volume(int a, int b);

/// Volume of the unit ball D_m; ball_volume(0) = 1.
double ball_volume(int m);

/// Linear subspace of R^n carried as an orthonormal frame (columns).
class Subspace {
 public:
  Subspace(int ambient_dim, Eigen::MatrixXd frame);

  static Subspace full(int n);
  static Subspace zero(int n);
  static Subspace span(const Eigen::VectorXd& v);

  int ambient_dim() const { return n_; }
  int dim() const { return static_cast<int>(frame_.cols()); }
  int codim() const { return n_ - dim(); }
  const Eigen::MatrixXd& frame() const { return frame_; }

  Eigen::VectorXd project(const Eigen::VectorXd& x) const;
  bool contains(const Subspace& other, double tol = 1e-10) const;

 private:
  int n_;
  Eigen::MatrixXd frame_;  // n x m, orthonormal columns
};

/// Modified Gram-Schmidt with one reorthogonalization pass. Returns false if
/// the columns are numerically dependent (residual below tol).
bool orthonormalize(Eigen::MatrixXd& cols, double tol = 1e-12);

/// Haar-distributed m-dimensional subspace of R^n.
Subspace haar_subspace(int n, int m, RngStream& rng);

/// Haar-distributed E with F contained in E, dim E = m.
Subspace haar_in_fiber(const Subspace& F, int m, RngStream& rng);

/// Haar-distributed orthogonal matrix (QR of a Gaussian with sign fix).
Eigen::MatrixXd haar_rotation(int n, RngStream& rng);

/// Orthogonal complement.
Subspace perp(const Subspace& E);

/// Principal angles between two subspaces, ascending, length min(dim, dim).
Eigen::VectorXd principal_angles(const Subspace& E, const Subspace& F);

/// sin of the largest principal gap; 0 iff the subspaces coincide.
/// Requires equal dimensions.
double subspace_distance(const Subspace& E, const Subspace& F);

bool subspace_equal(const Subspace& E, const Subspace& F, double tol = 1e-9);

/// sqrt of the Gram determinant of the given vectors (0 for dependent sets).
double parallelepiped_volume(const std::vector<Eigen::VectorXd>& vectors);

/// Volume of the parallelepiped spanned by unit volume elements of
/// E_1^perp, ..., E_r^perp. Requires sum of codimensions <= n.
double omega(const std::vector<Subspace>& subspaces);

}  // namespace ig
