#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "igeom/geometry.hpp"
#include "igeom/harmonics.hpp"
#include "igeom/quadrature.hpp"

namespace ig {

/// Centrally symmetric star body given by its radial function rho > 0.
/// Composites keep a lazy expression tree, so radial products and powers of
/// ellipsoids evaluate exactly. Ellipsoids carry their SPD matrix A with
/// rho(theta) = <A theta, theta>^{-1/2}.
class StarBody {
 public:
  int ambient_dim() const { return n_; }
  double radial(const Eigen::VectorXd& theta) const { return eval_(theta); }

  /// SPD matrix when this body is (exactly) an ellipsoid.
  const std::optional<Eigen::MatrixXd>& ellipsoid_matrix() const { return ellipsoid_; }

  EvenFunction radial_function() const;
  EvenFunction radial_power(double e) const;

  static StarBody ball(int n, double radius = 1.0);
  static StarBody ellipsoid(const Eigen::MatrixXd& a);
  static StarBody ellipsoid_axes(const Eigen::VectorXd& semi_axes);
  /// l_p unit ball, p in (0, inf]; optional semi-axes scale each coordinate.
  static StarBody lp_ball(int n, double p, const Eigen::VectorXd& semi_axes = Eigen::VectorXd());
  static StarBody from_function(int n, std::function<double(const Eigen::VectorXd&)> rho);

  friend StarBody k_radial_sum(const StarBody& a, const StarBody& b, int k);
  friend StarBody radial_product_power(const StarBody& k1, int p1, const StarBody& k2, int p2);
  friend StarBody linear_image(const StarBody& k, const Eigen::MatrixXd& t);
  friend StarBody central_section(const StarBody& k, const Subspace& h);

 private:
  StarBody(int n, std::function<double(const Eigen::VectorXd&)> eval,
           std::optional<Eigen::MatrixXd> ellipsoid = std::nullopt)
      : n_(n), eval_(std::move(eval)), ellipsoid_(std::move(ellipsoid)) {}

  int n_ = 0;
  std::function<double(const Eigen::VectorXd&)> eval_;
  std::optional<Eigen::MatrixXd> ellipsoid_;
};

/// rho_L^k = rho_a^k + rho_b^k.
StarBody k_radial_sum(const StarBody& a, const StarBody& b, int k);

/// rho_L^{p1+p2} = rho_{k1}^{p1} rho_{k2}^{p2}; requires p1 + p2 <= n - 1.
StarBody radial_product_power(const StarBody& k1, int p1, const StarBody& k2, int p2);

/// rho_{TK}(theta) = rho_K(T^{-1}theta / |T^{-1}theta|) / |T^{-1}theta|.
StarBody linear_image(const StarBody& k, const Eigen::MatrixXd& t);

/// Body in dim(H) with the radial function of K restricted to S cap H,
/// read in H's frame coordinates.
StarBody central_section(const StarBody& k, const Subspace& h);

/// Vol(L cap E) = Vol(D_m) * R_m(rho_L^m)(E), m = dim E.
double section_volume(const StarBody& l, const Subspace& e, const SphereQuadrature& q);
double section_volume(const StarBody& l, const Subspace& e);

/// Intersection body: rho_K(theta) = Vol(L cap theta^perp).
StarBody intersection_body_of(const StarBody& l, int section_degree = 24);

/// sup over the grid rows of |rho_a - rho_b| (a lower bound of the true sup).
double radial_distance(const StarBody& a, const StarBody& b, const Eigen::MatrixXd& grid);

/// Grinberg-Zhang approximant to sigma_F: ellipsoid with semi-axis 1 along F
/// and eps along F^perp, plus the mass normalization Z = integral of rho^k.
std::pair<StarBody, double> gz_approximant(const Subspace& f, double eps, int k,
                                           const SphereQuadrature& q);

}  // namespace ig
