#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <string>

#include "igeom/harmonics.hpp"
#include "igeom/report.hpp"
#include "igeom/rng.hpp"
#include "igeom/starbody.hpp"

namespace ig {

enum class Membership { positive, negative, inconclusive };

const char* to_string(Membership m);

struct MembershipVerdict {
  Membership verdict = Membership::inconclusive;
  /// Certified minimum of the transform (raw route) or the smallest moment
  /// matrix eigenvalue (sos route).
  double margin = 0.0;
  double truncation_bound = 0.0;
  std::optional<Eigen::VectorXd> witness;  // present for negative verdicts
  int k = 0;
  int L = 0;
  std::uint64_t seed = 0;
  std::string route;  // "raw" or "sos"
  double lambda_min = std::numeric_limits<double>::quiet_NaN();
};

struct IkOptions {
  int quad_degree = -1;  // default 2L
  std::uint64_t seed = 0xA11CEULL;
  int grid_extra = 2048;        // random directions added to the min scan
  bool enable_sos = true;       // moment-matrix certificate when raw is inconclusive
  double tail_ratio_cap = 0.9;  // geometric extrapolation refuses above this
  /// Optional shared workspace; must match (n, L) and carry sos bases when
  /// enable_sos is set. Ownership stays with the caller.
  const HarmonicAnalyzer* analyzer = nullptr;
};

/// Tests K in I_k^n: analyze rho_K^k, apply the E_{-k}^ multipliers, and
/// certify the sign of the transform. Positive/negative verdicts come with a
/// margin clear of the truncation bound; otherwise a moment-matrix
/// (sum-of-squares) certificate is attempted for non-membership.
MembershipVerdict i_k_test(const StarBody& k_body, int k, int L, const IkOptions& opt = {});

struct BPFeasibility {
  double residual = 0.0;  // ||A w - c|| / ||c|| in the harmonic-coefficient norm
  Eigen::VectorXd weights;
  int dictionary_size = 0;  // number of matched coefficients
  int node_count = 0;
  bool converged = false;
  std::uint64_t seed = 0;
};

/// Non-negative least-squares feasibility probe for K in BP_k^n:
/// matches the harmonic coefficients of rho_K^k against R_{n-k}-moment
/// columns of Haar-sampled subspaces E_j in G(n, n-k).
BPFeasibility bp_k_test(const StarBody& k_body, int k, int L, int node_count, RngStream& rng,
                        const HarmonicAnalyzer* analyzer = nullptr);

/// min ||A x - b|| s.t. x >= 0 by cyclic coordinate descent on the normal
/// equations; relative stopping tolerance and sweep cap.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double rel_tol,
                     int max_sweeps, bool* converged);

/// Builds the radial-product body of (K1, k1) x (K2, k2) and verifies the
/// structure-theorem consequences at level k1 + k2.
VerificationReport structure_product_check(const StarBody& k1_body, int k1,
                                           const StarBody& k2_body, int k2, int L,
                                           const IkOptions& opt = {});

/// Random k-radial sum of `ellipsoid_count` ellipsoids (Haar rotations,
/// log-uniform semi-axes in [1/3, 3]).
StarBody bp_sample(int n, int k, int ellipsoid_count, RngStream& rng);

/// Mean of a degree-j zonal kernel over S^{n-1} cap E as a function of
/// alpha = |P_E u|:  R_m(C~_j(<u,.>))(E) = W(alpha). Returns the polynomial's
/// even coefficients c with W(alpha) = sum_i c_i alpha^{2i}.
Eigen::VectorXd radon_zonal_polynomial(int n, int j, int m);

}  // namespace ig
