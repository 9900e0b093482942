#include <doctest.h>

#include <cmath>

#include "igeom/fourier.hpp"
#include "igeom/membership.hpp"
#include "igeom/radon.hpp"
#include "oracles.hpp"

using namespace ig;

TEST_CASE("radon_zonal_polynomial matches section means") {
  RngStream rng(41);
  const int n = 5;
  for (const auto& [j, m] : std::vector<std::pair<int, int>>{{0, 3}, {2, 3}, {4, 2}, {6, 4}}) {
    const Eigen::VectorXd coeff = radon_zonal_polynomial(n, j, m);
    const Subspace e = haar_subspace(n, m, rng);
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) u(i) = rng.gaussian();
    u.normalize();
    const double alpha2 = e.project(u).squaredNorm();
    double poly = 0.0, pw = 1.0;
    for (long i = 0; i < coeff.size(); ++i, pw *= alpha2) poly += coeff(i) * pw;
    const EvenFunction zf{n, [&u, j, n](const Eigen::VectorXd& x) {
                            return zonal_kernel(n, j, u.dot(x));
                          }};
    const double direct = m >= 2 ? radon_transform(zf, e, build_quadrature(m, 2 * j + 4))
                                 : radon_transform(zf, e);
    CHECK(poly == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("nnls solves small problems") {
  // unconstrained optimum already non-negative
  Eigen::MatrixXd a(4, 3);
  a << 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 1;
  Eigen::VectorXd xtrue(3);
  xtrue << 0.5, 0.0, 2.0;
  bool conv = false;
  const Eigen::VectorXd x = nnls(a, a * xtrue, 1e-12, 1000, &conv);
  CHECK(conv);
  CHECK((x - xtrue).norm() < 1e-9);

  // active constraint: brute-force check over sign patterns for a 2-col case
  Eigen::MatrixXd b(3, 2);
  b << 1, 1, 1, -1, 0.5, 2;
  Eigen::VectorXd rhs(3);
  rhs << -1.0, 1.0, -0.5;
  const Eigen::VectorXd xc = nnls(b, rhs, 1e-12, 1000, &conv);
  CHECK(conv);
  CHECK(xc.minCoeff() >= 0.0);
  // the constrained optimum keeps only the second column active here
  Eigen::VectorXd best = Eigen::VectorXd::Zero(2);
  double best_val = rhs.squaredNorm();
  for (int grid1 = 0; grid1 <= 400; ++grid1)
    for (int grid2 = 0; grid2 <= 400; ++grid2) {
      Eigen::VectorXd cand(2);
      cand << grid1 * 0.005, grid2 * 0.005;
      const double val = (b * cand - rhs).squaredNorm();
      if (val < best_val) {
        best_val = val;
        best = cand;
      }
    }
  CHECK((b * xc - rhs).squaredNorm() <= best_val + 1e-9);
}

TEST_CASE("i_k_test: unit ball is positive with margin c(n,k)") {
  const int n = 4, L = 6;
  HarmonicAnalyzer an(n, L, 2 * L, L / 2);
  IkOptions opt;
  opt.analyzer = &an;
  for (const int k : {1, 2, 3}) {
    const MembershipVerdict v = i_k_test(StarBody::ball(n), k, L, opt);
    CHECK(v.verdict == Membership::positive);
    CHECK(v.route == "raw");
    CHECK(v.margin == doctest::Approx(c_constant(n, k)).epsilon(1e-12));
  }
}

TEST_CASE("i_k_test: ellipsoids are positive") {
  const int n = 4, L = 8;
  HarmonicAnalyzer an(n, L, 2 * L, L / 2);
  IkOptions opt;
  opt.analyzer = &an;
  RngStream rng(51);
  for (int trial = 0; trial < 3; ++trial) {
    const StarBody e = bp_sample(n, 1, 1, rng);
    for (const int k : {1, 2}) {
      const MembershipVerdict v = i_k_test(e, k, L, opt);
      CHECK(v.verdict == Membership::positive);
      CHECK(v.margin > 0.0);
    }
  }
}

TEST_CASE("i_k_test: band-limited non-member is negative with oracle value") {
  // rho^k = 1 + beta (<theta,u>^2 - 1/n) transforms exactly to
  // c(n,k) + beta c_2^{(-k)} (<theta,u>^2 - 1/n); beta chosen to dip below 0.
  const int n = 4, k = 1, L = 6;
  const double beta = 0.6;
  const Eigen::VectorXd u = Eigen::VectorXd::Unit(n, 0);
  const StarBody body = StarBody::from_function(n, [u, beta, k](const Eigen::VectorXd& x) {
    const double q2 = u.dot(x) * u.dot(x) - 0.25;
    return std::pow(1.0 + beta * q2, 1.0 / k);
  });
  const MembershipVerdict v = i_k_test(body, k, L);
  CHECK(v.verdict == Membership::negative);
  REQUIRE(v.witness.has_value());
  const double expected_min = c_constant(n, k) + beta * multiplier(n, k, 2) * (1.0 - 0.25);
  CHECK(v.margin == doctest::Approx(expected_min).epsilon(1e-6));
  // the witness should align with +-u
  CHECK(std::abs(u.dot(*v.witness)) > 0.99);
}

TEST_CASE("i_k_test matches the ellipsoid transform oracle margin") {
  const int n = 4, k = 1, L = 10;
  const Eigen::VectorXd axes = (Eigen::VectorXd(4) << 1.0, 1.25, 0.8, 1.1).finished();
  const StarBody ell = StarBody::ellipsoid_axes(axes);
  const MembershipVerdict v = i_k_test(ell, k, L);
  CHECK(v.verdict == Membership::positive);
  // oracle: min over the sphere of c(n,k) det(A)^{-1/2} <A^{-1}xi,xi>^{-(n-k)/2}
  const Eigen::MatrixXd a = *ell.ellipsoid_matrix();
  const double det_factor = 1.0 / std::sqrt(a.determinant());
  const double amax = axes.maxCoeff();
  const double oracle_min = c_constant(n, k) * det_factor * std::pow(amax * amax, -0.5 * (n - k));
  CHECK(v.margin == doctest::Approx(oracle_min).epsilon(1e-4));
}

TEST_CASE("bp_k_test: unit ball and synthesized bodies are feasible") {
  const int n = 4, k = 1, L = 6;
  HarmonicAnalyzer an(n, L);
  RngStream rng(61);

  const BPFeasibility ball = bp_k_test(StarBody::ball(n), k, L, 200, rng, &an);
  CHECK(ball.converged);
  CHECK(ball.residual <= 1e-8);

  // body with rho^k = R_{n-k}^*(g) for smooth zonal g >= 0, via the exact
  // fiber-average of |P_E u|^2: alpha^2 + (1 - alpha^2)(m-1)/(n-1)
  const Eigen::VectorXd u = Eigen::VectorXd::Unit(n, 1);
  const int m = n - k;
  const StarBody synth = StarBody::from_function(n, [u, m, n, k](const Eigen::VectorXd& x) {
    const double a2 = u.dot(x) * u.dot(x);
    const double fathom = 1.0 + a2 + (1.0 - a2) * (m - 1.0) / (n - 1.0);
    return std::pow(fathom, 1.0 / k);
  });
  RngStream rng2(62);
  const BPFeasibility fit = bp_k_test(synth, k, L, 600, rng2, &an);
  CHECK(fit.converged);
  CHECK(fit.residual <= 1e-6);
  CHECK(fit.weights.minCoeff() >= 0.0);
}

TEST_CASE("bp_sample bodies pass i_k and are BP-feasible") {
  const int n = 5, L = 8;
  HarmonicAnalyzer an(n, L, 2 * L, L / 2);
  IkOptions opt;
  opt.analyzer = &an;
  RngStream rng(71);
  for (const int k : {1, 2}) {
    for (int trial = 0; trial < 3; ++trial) {
      const StarBody body = bp_sample(n, k, 2, rng);
      CHECK(i_k_test(body, k, L, opt).verdict == Membership::positive);
    }
  }
  RngStream rng2(72);
  const StarBody body = bp_sample(n, 1, 2, rng2);
  const BPFeasibility fit = bp_k_test(body, 1, L, 1500, rng2, &an);
  CHECK(fit.converged);
  CHECK(fit.residual <= 1e-5);
}

TEST_CASE("structure: products, ball path, divisibility, sections") {
  const int n = 5, L = 8;
  HarmonicAnalyzer an(n, L, 2 * L, L / 2);
  IkOptions opt;
  opt.analyzer = &an;
  RngStream rng(81);

  SUBCASE("product of two random ellipsoids is positive at k = 2") {
    const StarBody e1 = bp_sample(n, 1, 1, rng);
    const StarBody e2 = bp_sample(n, 1, 1, rng);
    const VerificationReport rep = structure_product_check(e1, 1, e2, 1, L, opt);
    CHECK(rep.all_pass());
  }

  SUBCASE("ball path: rho_K^{k/l} stays in the class for l > k") {
    const StarBody e1 = bp_sample(n, 1, 1, rng);
    const StarBody embed = radial_product_power(e1, 1, StarBody::ball(n), 2);
    CHECK(i_k_test(embed, 3, L, opt).verdict == Membership::positive);
  }

  SUBCASE("divisibility: i_1 bodies pass i_2 and i_4") {
    const StarBody e1 = bp_sample(n, 1, 1, rng);
    CHECK(i_k_test(e1, 1, L, opt).verdict == Membership::positive);
    CHECK(i_k_test(e1, 2, L, opt).verdict == Membership::positive);
    CHECK(i_k_test(e1, 4, L, opt).verdict == Membership::positive);
  }

  SUBCASE("central section of the product body passes in its dimension") {
    const StarBody e1 = bp_sample(n, 1, 1, rng);
    const StarBody e2 = bp_sample(n, 1, 1, rng);
    const StarBody product = radial_product_power(e1, 1, e2, 1);
    const Subspace h = haar_subspace(n, 4, rng);
    HarmonicAnalyzer an4(4, L, 2 * L, L / 2);
    IkOptions opt4;
    opt4.analyzer = &an4;
    CHECK(i_k_test(central_section(product, h), 2, L, opt4).verdict == Membership::positive);
  }

  SUBCASE("k = n-1 accepts mildly perturbed star bodies") {
    RngStream prng(83);
    HarmonicAnalyzer an_small(n, 4);
    EvenSpectrum bump = random_spectrum(n, 4, prng);
    const EvenFunction wig = an_small.synthesize(bump);
    const StarBody body = StarBody::from_function(n, [wig](const Eigen::VectorXd& x) {
      return 1.0 + 0.12 * wig.fn(x);
    });
    CHECK(i_k_test(body, n - 1, L, opt).verdict == Membership::positive);
  }
}

TEST_CASE("SL(n) images preserve the i_k verdict") {
  const int n = 4, L = 8;
  HarmonicAnalyzer an(n, L, 2 * L, L / 2);
  IkOptions opt;
  opt.analyzer = &an;
  RngStream rng(91);
  for (int trial = 0; trial < 3; ++trial) {
    const StarBody body = bp_sample(n, 1, 1, rng);
    Eigen::MatrixXd t = haar_rotation(n, rng);
    Eigen::VectorXd scales(n);
    for (int j = 0; j < n; ++j) scales(j) = std::exp(0.5 * (rng.uniform() - 0.5));
    scales /= std::pow(scales.prod(), 1.0 / n);
    t *= scales.asDiagonal();
    CHECK(std::abs(t.determinant()) == doctest::Approx(1.0).epsilon(1e-10));
    const MembershipVerdict before = i_k_test(body, 1, L, opt);
    const MembershipVerdict after = i_k_test(linear_image(body, t), 1, L, opt);
    CHECK(before.verdict == after.verdict);
  }
}

TEST_CASE("ellipsoid-corollary harness: product bodies are BP-feasible at level l") {
  // rho_L = rho_E1 rho_E2 (k = 2 ellipsoids); the body rho_M = rho_L^{1/l}
  // passes bp at level l for k <= l <= n-1
  const int n = 5, L = 6;
  HarmonicAnalyzer an(n, L);
  RngStream rng(95);
  const StarBody e1 = bp_sample(n, 1, 1, rng);
  const StarBody e2 = bp_sample(n, 1, 1, rng);
  for (const int l : {2, 3}) {
    const StarBody m_body = StarBody::from_function(n, [e1, e2, l](const Eigen::VectorXd& x) {
      return std::pow(e1.radial(x) * e2.radial(x), 1.0 / l);
    });
    RngStream nrng(96 + l);
    const BPFeasibility fit = bp_k_test(m_body, l, L, 2000, nrng, &an);
    CHECK(fit.converged);
    CHECK(fit.residual <= 1e-4);
  }
}
