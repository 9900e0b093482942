#include <doctest.h>

#include <cmath>

#include "igeom/radon.hpp"
#include "oracles.hpp"

using namespace ig;

TEST_CASE("radon_transform basics") {
  RngStream rng(3);
  const int n = 4, m = 2;
  const Subspace e = haar_subspace(n, m, rng);
  const SphereQuadrature q = build_quadrature(m, 16);

  CHECK(radon_transform(constant_function(n, 1.0), e, q) == doctest::Approx(1.0).epsilon(1e-13));

  // <theta,u>^2 with u in E averages to 1/m over the section sphere
  const Eigen::VectorXd u_in = e.frame().col(0);
  const EvenFunction f_in{n, [u_in](const Eigen::VectorXd& x) {
                            const double t = u_in.dot(x);
                            return t * t;
                          }};
  CHECK(radon_transform(f_in, e, q) == doctest::Approx(1.0 / m).epsilon(1e-12));

  // and to 0 when u is orthogonal to E
  const Eigen::VectorXd u_out = perp(e).frame().col(0);
  const EvenFunction f_out{n, [u_out](const Eigen::VectorXd& x) {
                             const double t = u_out.dot(x);
                             return t * t;
                           }};
  CHECK(radon_transform(f_out, e, q) < 1e-13);

  CHECK_THROWS_AS(radon_transform(f_in, Subspace::zero(n), q), std::invalid_argument);
}

TEST_CASE("radon_dual: constants are exact and duality holds") {
  RngStream rng(5);
  const int n = 4, m = 2;
  GrassmannFunction one{n, m, [](const Subspace&) { return 1.0; }};
  const Eigen::VectorXd theta = Eigen::VectorXd::Unit(n, 0);
  const McEstimate c = radon_dual(one, theta, 200, rng);
  CHECK(c.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.std_error == doctest::Approx(0.0).epsilon(1e-14));

  // duality <R_m^* g, f>_S = <g, R_m f>_G within 3 combined standard errors
  HarmonicAnalyzer an(n, 6);
  const EvenFunction f = an.synthesize(random_spectrum(n, 6, rng));
  const Eigen::VectorXd u = Eigen::VectorXd::Unit(n, 1);
  GrassmannFunction g{n, m, [u](const Subspace& e) {
                        const double t = e.project(u).squaredNorm();
                        return 1.0 + 0.5 * t;
                      }};
  const SphereQuadrature section = build_quadrature(m, 12);
  const int batches = 24;
  const int per = 256;
  Eigen::VectorXd lhs_b(batches), rhs_b(batches);
  for (int b = 0; b < batches; ++b) {
    RngStream brng = rng.substream(b);
    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < per; ++i) {
      Eigen::VectorXd x(n);
      for (int j = 0; j < n; ++j) x(j) = brng.gaussian();
      x.normalize();
      lhs += f.fn(x) * g.fn(haar_in_fiber(Subspace::span(x), m, brng));
      rhs += g.fn(haar_subspace(n, m, brng)) *
             radon_transform(f, haar_subspace(n, m, brng), section);
    }
    lhs_b(b) = lhs / per;
    rhs_b(b) = rhs / per;
  }
  const double lm = lhs_b.mean(), rm = rhs_b.mean();
  const double se = std::sqrt((lhs_b.array() - lm).square().sum() / (batches - 1) / batches +
                              (rhs_b.array() - rm).square().sum() / (batches - 1) / batches);
  CHECK(std::abs(lm - rm) < 3.0 * se);
}

TEST_CASE("radon_dual zonal rotation covariance") {
  // for zonal g(E) = |P_E u|^2, R_m^* g(theta) depends only on <theta,u>^2
  RngStream rng(9);
  const int n = 4, m = 2;
  const Eigen::VectorXd u = Eigen::VectorXd::Unit(n, 0);
  GrassmannFunction g{n, m, [u](const Subspace& e) { return e.project(u).squaredNorm(); }};
  const double c = 0.4;
  Eigen::VectorXd t1(n), t2(n);
  t1 << c, std::sqrt(1 - c * c), 0, 0;
  t2 << c, 0, std::sqrt(0.5 * (1 - c * c)), std::sqrt(0.5 * (1 - c * c));
  const McEstimate a = radon_dual(g, t1, 40000, rng);
  const McEstimate b = radon_dual(g, t2, 40000, rng);
  CHECK(std::abs(a.value - b.value) < 3.0 * std::hypot(a.std_error, b.std_error));

  // closed form: alpha^2 + (1 - alpha^2)(m-1)/(n-1)
  const double expect = c * c + (1 - c * c) * (m - 1.0) / (n - 1.0);
  CHECK(std::abs(a.value - expect) < 3.0 * a.std_error + 1e-12);
}

TEST_CASE("pair_dual_discrete") {
  RngStream rng(13);
  const int n = 4, m = 2;
  const SphereQuadrature q = build_quadrature(m, 12);
  GrassmannMeasure mu;
  mu.ambient_dim = n;
  mu.subspace_dim = m;
  mu.atoms.emplace_back(haar_subspace(n, m, rng), 1.0);
  CHECK(pair_dual_discrete(mu, constant_function(n, 1.0), q) == doctest::Approx(1.0));

  // zero-weight atoms change nothing
  GrassmannMeasure mu2 = mu;
  mu2.atoms.emplace_back(haar_subspace(n, m, rng), 0.0);
  HarmonicAnalyzer an(n, 6);
  const EvenFunction f = an.synthesize(random_spectrum(n, 6, rng));
  CHECK(pair_dual_discrete(mu, f, q) == doctest::Approx(pair_dual_discrete(mu2, f, q)));

  // 64 Haar atoms with uniform weights approximate the Haar average of R_m f
  GrassmannMeasure haar64;
  haar64.ambient_dim = n;
  haar64.subspace_dim = m;
  Eigen::VectorXd vals(64);
  for (int i = 0; i < 64; ++i) {
    const Subspace e = haar_subspace(n, m, rng);
    vals(i) = radon_transform(f, e, q);
    haar64.atoms.emplace_back(e, 1.0 / 64);
  }
  const double pairing = pair_dual_discrete(haar64, f, q);
  // Haar average of R_m f equals the mean of f
  double mean_f = 0.0;
  for (long i = 0; i < an.quadrature().size(); ++i)
    mean_f += an.quadrature().weights(i) * f.fn(an.quadrature().nodes.row(i).transpose());
  const double se = std::sqrt((vals.array() - vals.mean()).square().sum() / 63.0 / 64.0);
  CHECK(std::abs(pairing - mean_f) < 3.0 * se);
}

TEST_CASE("perp_transport is an involution") {
  RngStream rng(17);
  const int n = 5, m = 2;
  const Eigen::VectorXd u = Eigen::VectorXd::Unit(n, 2);
  GrassmannFunction g{n, m, [u](const Subspace& e) { return 2.0 + e.project(u).squaredNorm(); }};
  const GrassmannFunction gp = perp_transport(g);
  CHECK(gp.subspace_dim == n - m);
  const GrassmannFunction gpp = perp_transport(gp);
  const Subspace e = haar_subspace(n, m, rng);
  CHECK(gpp.fn(e) == doctest::Approx(g.fn(e)).epsilon(1e-12));

  GrassmannFunction one{n, m, [](const Subspace&) { return 3.5; }};
  CHECK(perp_transport(one).fn(haar_subspace(n, n - m, rng)) == doctest::Approx(3.5));

  GrassmannMeasure mu;
  mu.ambient_dim = n;
  mu.subspace_dim = m;
  mu.atoms.emplace_back(haar_subspace(n, m, rng), 0.7);
  const GrassmannMeasure mup = perp_transport(mu);
  CHECK(mup.subspace_dim == n - m);
  CHECK(mup.atoms[0].second == 0.7);
  CHECK(subspace_equal(mup.atoms[0].first, perp(mu.atoms[0].first)));
}

TEST_CASE("wedge identity residual") {
  RngStream rng(23);

  SUBCASE("constant function is exact") {
    const int n = 4, k = 2;
    HarmonicAnalyzer an(n, 8);
    EvenSpectrum one;
    one.ambient_dim = n;
    one.max_degree = 8;
    one.blocks.resize(5);
    one.blocks[0] = Eigen::VectorXd::Ones(1);
    for (int j = 2; j <= 8; j += 2) one.blocks[j / 2] = Eigen::VectorXd::Zero(dim_harmonic(n, j));
    const Subspace h = haar_subspace(n, n - k, rng);
    CHECK(wedge_radon_residual(one, k, h, an) < 1e-10);
  }

  SUBCASE("random band-limited functions, n=3, k=1") {
    const int n = 3, k = 1;
    HarmonicAnalyzer an(n, 8);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const EvenSpectrum s = random_spectrum(n, 8, rng);
      const Subspace h = haar_subspace(n, n - k, rng);
      worst = std::max(worst, wedge_radon_residual(s, k, h, an));
    }
    CHECK(worst < 1e-6);
  }

  SUBCASE("degree-2 harmonic, n=4, k=2") {
    const int n = 4, k = 2;
    HarmonicAnalyzer an(n, 6);
    EvenSpectrum s = random_spectrum(n, 6, rng);
    s.blocks[0].setZero();
    s.blocks[2].setZero();
    s.blocks[3].setZero();
    const Subspace h = haar_subspace(n, n - k, rng);
    CHECK(wedge_radon_residual(s, k, h, an) < 1e-6);
  }
}

TEST_CASE("dual wedge identity via MC reconstruction") {
  RngStream rng(29);
  const int n = 4, m = 1;
  HarmonicAnalyzer an(n, 6);
  const Eigen::VectorXd u = Eigen::VectorXd::Unit(n, 0);
  GrassmannFunction g{n, n - m, [u](const Subspace& e) {
                        const double t = e.project(u).squaredNorm();
                        return 1.0 + t;
                      }};
  Eigen::MatrixXd dirs(6, n);
  RngStream drng(7);
  for (int r = 0; r < dirs.rows(); ++r) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = drng.gaussian();
    dirs.row(r) = v.normalized().transpose();
  }
  const DualWedgeResult res = dual_wedge_residual(g, m, dirs, 60000, rng, an);
  CHECK(res.max_z < 3.0);
  CHECK(!res.points.empty());

  // g = 1: both sides are the constant c(n,m)
  GrassmannFunction one{n, n - m, [](const Subspace&) { return 1.0; }};
  const DualWedgeResult rc = dual_wedge_residual(one, m, dirs, 20000, rng, an);
  CHECK(rc.max_z < 3.0);
  for (const auto& pt : rc.points)
    CHECK(pt.rhs == doctest::Approx(c_constant(n, m)).epsilon(1e-12));
}

TEST_CASE("v_apply") {
  RngStream rng(31);
  const int n = 4, k = 2;

  GrassmannFunction one{n, k, [](const Subspace&) { return 1.0; }};
  const McEstimate c = v_apply(k, one, haar_subspace(n, k, rng), 100, rng);
  CHECK(c.value == doctest::Approx(1.0).epsilon(1e-14));

  // k = 1: V_1 is the classical spherical Radon transform
  HarmonicAnalyzer an(n, 6);
  const EvenFunction f = an.synthesize(random_spectrum(n, 6, rng));
  GrassmannFunction gf{n, 1, [f](const Subspace& e) { return f.fn(e.frame().col(0)); }};
  const Eigen::VectorXd theta = Eigen::VectorXd::Unit(n, 1);
  const McEstimate v1 = v_apply(1, gf, Subspace::span(theta), 60000, rng);
  const double classical =
      radon_transform(f, perp(Subspace::span(theta)), build_quadrature(n - 1, 12));
  CHECK(std::abs(v1.value - classical) < 3.0 * v1.std_error + 1e-12);
}
