#include <doctest.h>

#include <cmath>

#include "igeom/fourier.hpp"
#include "igeom/starbody.hpp"
#include "oracles.hpp"

using namespace ig;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("c_constant closed form") {
  CHECK(c_constant(4, 2) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));
  CHECK(c_constant(3, 1) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(c_constant(5, 1.7) * c_constant(5, 5 - 1.7) ==
        doctest::Approx(std::pow(2.0 * kPi, 5)).epsilon(1e-13));
  CHECK_THROWS_AS(c_constant(4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(c_constant(4, 4.0), std::invalid_argument);
}

TEST_CASE("multiplier values, signs, and the product identity") {
  CHECK(multiplier(5, 2.3, 0) == doctest::Approx(c_constant(5, 2.3)).epsilon(1e-14));
  CHECK(multiplier(3, 1, 2) == doctest::Approx(-8.0 * kPi).epsilon(1e-13));
  CHECK(multiplier(3, 1, 2) < 0.0);
  CHECK(multiplier(3, 1, 2) * multiplier(3, 2, 2) ==
        doctest::Approx(std::pow(2.0 * kPi, 3)).epsilon(1e-13));
  CHECK_THROWS_AS(multiplier(4, 1.0, 3), std::invalid_argument);

  // signs alternate with k/2
  for (int k = 0; k <= 12; k += 2) {
    const double v = multiplier(6, 2.5, k);
    CHECK(((k / 2) % 2 == 0 ? v > 0 : v < 0));
  }

  // product identity across a grid
  for (int n = 2; n <= 8; ++n) {
    const double target = std::pow(2.0 * kPi, n);
    for (int ip = 1; ip <= 7; ++ip) {
      const double p = n * ip / 8.0;
      for (int k = 0; k <= 16; k += 2) {
        CHECK(std::abs(multiplier(n, p, k) * multiplier(n, n - p, k) - target) / target < 1e-10);
      }
    }
  }
}

TEST_CASE("multiplier agrees with the Hecke-identity oracle") {
  RngStream rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng.next_u64() % 6);
    const int k = 2 * static_cast<int>(rng.next_u64() % 9);
    const double p = 0.05 * n + 0.9 * n * rng.uniform();
    const double lib = multiplier(n, p, k);
    const double orc = oracle::hecke_multiplier(n, p, k);
    CHECK(std::abs(lib - orc) / std::abs(orc) < 1e-8);
  }
}

TEST_CASE("fourier_extend: eigenspace action and double transform") {
  const int n = 4, L = 8;
  HarmonicAnalyzer an(n, L);
  RngStream rng(11);
  const EvenSpectrum s = random_spectrum(n, L, rng);

  SUBCASE("constant maps to c(n,p)") {
    EvenSpectrum one;
    one.ambient_dim = n;
    one.max_degree = 0;
    one.blocks = {Eigen::VectorXd::Ones(1)};
    const EvenSpectrum t = fourier_extend(one, 1.5);
    CHECK(t.blocks[0](0) == doctest::Approx(c_constant(n, 1.5)).epsilon(1e-13));
  }

  SUBCASE("pure degree-2 spectrum scales by the multiplier") {
    EvenSpectrum s2 = s;
    s2.blocks[0].setZero();
    s2.blocks[2].setZero();
    s2.blocks[3].setZero();
    s2.blocks[4].setZero();
    const EvenSpectrum t = fourier_extend(s2, 2.5);
    CHECK((t.blocks[1] - multiplier(n, 2.5, 2) * s2.blocks[1]).norm() < 1e-12);
  }

  SUBCASE("double transform is (2 pi)^n times the identity") {
    const double p = 1.3;
    const EvenSpectrum twice = fourier_extend(fourier_extend(s, p), n - p);
    const double scale = std::pow(2.0 * kPi, n);
    for (int j = 0; j <= L; j += 2)
      CHECK((twice.blocks[j / 2] - scale * s.blocks[j / 2]).norm() / scale < 1e-10);
  }
}

TEST_CASE("ellipsoid transform closed form") {
  // E_{-k}^(rho_E^k) = c(n,k) det(A)^{-1/2} <A^{-1} xi, xi>^{-(n-k)/2}
  const int n = 4, L = 12, k = 2;
  HarmonicAnalyzer an(n, L);
  RngStream rng(77);
  Eigen::MatrixXd m = Eigen::MatrixXd::Random(n, n);
  Eigen::MatrixXd a = 0.5 * (m + m.transpose()) * 0.15 + Eigen::MatrixXd::Identity(n, n);
  const StarBody body = StarBody::ellipsoid(a);
  const EvenSpectrum s = an.analyze(body.radial_power(k)).spectrum;
  const EvenSpectrum t = fourier_extend(s, k);
  const Eigen::MatrixXd ainv = a.inverse();
  const double det_factor = 1.0 / std::sqrt(a.determinant());
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd xi(n);
    for (int i = 0; i < n; ++i) xi(i) = rng.gaussian();
    xi.normalize();
    Eigen::MatrixXd pt(1, n);
    pt.row(0) = xi.transpose();
    const double lib = an.evaluate(t, pt)(0);
    const double orc =
        c_constant(n, k) * det_factor * std::pow(xi.dot(ainv * xi), -0.5 * (n - k));
    CHECK(lib == doctest::Approx(orc).epsilon(5e-6));
  }
}

TEST_CASE("parseval residual") {
  const int n = 4, L = 8;
  HarmonicAnalyzer an(n, L);
  RngStream rng(5);

  CHECK(parseval_residual(constant_function(n, 1.0), constant_function(n, 1.0), 1.2, an) < 1e-12);

  // f a single harmonic of degree >= 2, g = 1: both sides vanish
  EvenSpectrum s = random_spectrum(n, L, rng);
  s.blocks[0].setZero();
  s.blocks[1].setZero();
  s.blocks[3].setZero();
  s.blocks[4].setZero();
  const EvenFunction h4 = an.synthesize(s);
  const double lhs_f = an.inner_product(an.synthesize(fourier_extend(an.analyze(h4).spectrum, 1.5)),
                                        constant_function(n, c_constant(n, 4 - 1.5)));
  CHECK(std::abs(lhs_f) < 1e-9);

  for (int trial = 0; trial < 10; ++trial) {
    const EvenFunction f = an.synthesize(random_spectrum(n, L, rng));
    const EvenFunction g = an.synthesize(random_spectrum(n, L, rng));
    CHECK(parseval_residual(f, g, 1.5, an) < 1e-8);
  }
}

TEST_CASE("self-adjointness of the spherical transform") {
  const int n = 3, L = 8;
  HarmonicAnalyzer an(n, L);
  RngStream rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const EvenFunction f = an.synthesize(random_spectrum(n, L, rng));
    const EvenFunction g = an.synthesize(random_spectrum(n, L, rng));
    const double p = 1.4;
    const EvenFunction tf = an.synthesize(fourier_extend(an.analyze(f).spectrum, p));
    const EvenFunction tg = an.synthesize(fourier_extend(an.analyze(g).spectrum, p));
    CHECK(std::abs(an.inner_product(tf, g) - an.inner_product(f, tg)) < 1e-8);
  }
}
