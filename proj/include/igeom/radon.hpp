#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "igeom/fourier.hpp"
#include "igeom/geometry.hpp"
#include "igeom/harmonics.hpp"
#include "igeom/quadrature.hpp"
#include "igeom/rng.hpp"

namespace ig {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

/// Continuous function on G(n, m); the rule must be frame-invariant.
struct GrassmannFunction {
  int ambient_dim = 0;
  int subspace_dim = 0;
  std::function<double(const Subspace&)> fn;

  double operator()(const Subspace& e) const { return fn(e); }
};

/// Discrete measure on G(n, m) given as a weighted subspace list.
struct GrassmannMeasure {
  int ambient_dim = 0;
  int subspace_dim = 0;
  std::vector<std::pair<Subspace, double>> atoms;
  bool non_negative = false;

  double total_mass() const;
};

/// Uniform direction on the unit sphere of a subspace.
Eigen::VectorXd uniform_direction(const Subspace& E, RngStream& rng);

/// R_m(f)(E): mean of f over S^{n-1} cap E. For dim E >= 2 the rule q must
/// be a quadrature on S^{m-1}; for dim E = 1 it is ignored.
double radon_transform(const EvenFunction& f, const Subspace& E, const SphereQuadrature& q);
double radon_transform(const EvenFunction& f, const Subspace& E);

/// R_m^*(g)(theta): Monte Carlo mean of g over the fiber of m-subspaces
/// through theta, with standard error.
McEstimate radon_dual(const GrassmannFunction& g, const Eigen::VectorXd& theta, long samples,
                      RngStream& rng);

/// Exact pairing <R_m^*(mu), f> = sum_j w_j R_m(f)(E_j) for a discrete mu.
double pair_dual_discrete(const GrassmannMeasure& mu, const EvenFunction& f,
                          const SphereQuadrature& q);

GrassmannFunction perp_transport(const GrassmannFunction& g);
GrassmannMeasure perp_transport(const GrassmannMeasure& mu);

/// Relative residual of the wedge identity at H in G(n, n-k):
/// R_{n-k}(E_{-k}^ f)(H) = c(n,k) R_k(f)(H^perp).
double wedge_radon_residual(const EvenSpectrum& f, int k, const Subspace& H,
                            const HarmonicAnalyzer& an);

struct DualWedgePoint {
  Eigen::VectorXd theta;
  double lhs = 0.0;       // E_{-m}^(R_{n-m}^* g) at theta
  double rhs = 0.0;       // c(n,m) R_m^*(g^perp) at theta
  double std_error = 0.0; // combined
  double z = 0.0;
};

struct DualWedgeResult {
  std::vector<DualWedgePoint> points;
  double max_z = 0.0;
  double max_rel_deviation = 0.0;
  bool inconclusive = false;  // MC error dominates the working scale
  long fiber_samples = 0;
};

/// Checks E_{-m}^(f) = c(n,m) R_m^*(g^perp) for f = R_{n-m}^*(g), by MC
/// reconstruction of f on the analyzer's quadrature grid.
DualWedgeResult dual_wedge_residual(const GrassmannFunction& g, int m,
                                    const Eigen::MatrixXd& test_dirs, long samples,
                                    RngStream& rng, const HarmonicAnalyzer& an,
                                    int batches = 10);

/// V_k(g)(E) for V_k = I o R_{n-k} o R_k^*: nested Monte Carlo estimate.
McEstimate v_apply(int k, const GrassmannFunction& g, const Subspace& E, long samples,
                   RngStream& rng);

}  // namespace ig
