#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

#include "igeom/quadrature.hpp"
#include "igeom/rng.hpp"

namespace ig {

/// dim H_j(n), the space of spherical harmonics of degree j on S^{n-1}.
int dim_harmonic(int n, int j);

/// Normalized Gegenbauer C~_j(t) with C~_j(1) = 1; for n = 2 this is the
/// Chebyshev polynomial T_j. Zonal reproducing kernel of H_j is
/// dim_harmonic(n,j) * C~_j(<u,theta>).
double zonal_kernel(int n, int j, double t);

/// C~_0..C~_L at t, written to out[0..L].
void zonal_kernel_all(int n, int L, double t, double* out);

/// Monomial coefficients of C~_j (degree-ascending, length j+1).
Eigen::VectorXd zonal_coefficients(int n, int j);

/// Even function on the sphere given by an evaluation rule.
struct EvenFunction {
  int ambient_dim = 0;
  std::function<double(const Eigen::VectorXd&)> fn;

  double operator()(const Eigen::VectorXd& x) const { return fn(x); }
};

EvenFunction constant_function(int n, double c);

/// Coefficients of an even function in harmonic-degree blocks up to L.
struct EvenSpectrum {
  int ambient_dim = 0;
  int max_degree = 0;                   // even
  std::vector<Eigen::VectorXd> blocks;  // index j/2, length dim_harmonic(n, j)

  int block_count() const { return static_cast<int>(blocks.size()); }
  double block_norm(int j) const { return blocks[j / 2].norm(); }
  double l2_norm() const;
};

struct AnalysisResult {
  EvenSpectrum spectrum;
  double residual_l2 = 0.0;      // || f - synth(analyze(f)) ||_2 on the nodes
  double evenness_defect = 0.0;  // max |f(x) - f(-x)| over sampled antipodes
};

/// Orthonormal basis of H_j spanned by zonal kernels at generic centers,
/// obtained by pivoted Cholesky of the closed-form kernel Gram matrix.
struct ZonalBasis {
  int ambient_dim = 0;
  int degree = 0;
  Eigen::MatrixXd centers;    // d x n
  Eigen::MatrixXd transform;  // d x d, psi_i = sum_r transform(r,i) C~_j(<y_r,.>)
};

ZonalBasis build_zonal_basis(int n, int j, RngStream& rng);

/// Analysis/synthesis workspace for even functions on S^{n-1}, band limit L.
/// Owns the quadrature (exact to quad_degree >= 2L) and per-degree bases.
/// With sos_degree >= 0 it also carries bases for every degree <= sos_degree
/// (both parities), used by the membership moment-matrix certificate.
class HarmonicAnalyzer {
 public:
  HarmonicAnalyzer(int n, int L, int quad_degree = -1, int sos_degree = -1,
                   std::uint64_t basis_seed = 0xB5);

  int ambient_dim() const { return n_; }
  int max_degree() const { return L_; }
  int sos_degree() const { return sos_degree_; }
  const SphereQuadrature& quadrature() const { return quad_; }
  const ZonalBasis& basis(int j) const;

  AnalysisResult analyze(const EvenFunction& f) const;
  /// Same, for values already evaluated on the quadrature nodes.
  AnalysisResult analyze_values(const Eigen::VectorXd& node_values) const;

  EvenFunction synthesize(const EvenSpectrum& s) const;
  /// Evaluate a spectrum at the given points (rows).
  Eigen::VectorXd evaluate(const EvenSpectrum& s, const Eigen::MatrixXd& points) const;
  /// Evaluate a spectrum on the quadrature nodes.
  Eigen::VectorXd node_values(const EvenSpectrum& s) const;

  /// <f, g> on L^2(sigma) computed by quadrature.
  double inner_product(const EvenFunction& f, const EvenFunction& g) const;

  /// Gram-type matrix G_ab = sum_i w_i v_i psi_a(x_i) psi_b(x_i) over the
  /// orthonormal harmonic basis of all degrees <= sos_degree (both parities).
  Eigen::MatrixXd moment_matrix(const Eigen::VectorXd& v) const;

 private:
  int n_;
  int L_;
  int sos_degree_;
  SphereQuadrature quad_;
  std::vector<ZonalBasis> even_bases_;          // index j/2, degrees 0,2,..,L
  std::vector<ZonalBasis> sos_bases_;           // degrees 0..sos_degree
  Eigen::MatrixXd antipodal_probes_;            // directions for evenness check

  Eigen::VectorXd kernel_moments(int j, const Eigen::VectorXd& weighted_values) const;
};

/// Random band-limited even spectrum with unit L^2 norm (test helper).
EvenSpectrum random_spectrum(int n, int L, RngStream& rng);

}  // namespace ig
