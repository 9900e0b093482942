#include "igeom/fourier.hpp"

#include <cmath>
#include <stdexcept>

namespace ig {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kGuard = 1e-6;  // Lemma constants blow up at p in {0, n}

void check_p(int n, double p) {
  if (n < 2) throw std::invalid_argument("homogeneous degree: n must be >= 2");
  if (!(p > kGuard && p < n - kGuard))
    throw std::invalid_argument("homogeneous degree p must lie in (0, n) with 1e-6 guard band");
}
}  // namespace

double c_constant(int n, double p) {
  check_p(n, p);
  const double lg = std::lgamma(0.5 * (n - p)) - std::lgamma(0.5 * p);
  return std::pow(kPi, 0.5 * n) * std::exp((n - p) * std::log(2.0) + lg);
}

double multiplier(int n, double p, int k) {
  check_p(n, p);
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("multiplier: k must be even >= 0");
  const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
  const double lg = std::lgamma(0.5 * (k + n - p)) - std::lgamma(0.5 * (k + p));
  return sign * std::pow(kPi, 0.5 * n) * std::exp((n - p) * std::log(2.0) + lg);
}

MultiplierTable make_multiplier_table(int n, double p, int L) {
  MultiplierTable t;
  t.ambient_dim = n;
  t.degree_p = p;
  t.values.resize(L / 2 + 1);
  for (int k = 0; k <= L; k += 2) t.values(k / 2) = multiplier(n, p, k);
  return t;
}

EvenSpectrum fourier_extend(const EvenSpectrum& s, double p) {
  EvenSpectrum out = s;
  for (int j = 0; j <= s.max_degree; j += 2)
    out.blocks[j / 2] *= multiplier(s.ambient_dim, p, j);
  return out;
}

double parseval_residual(const EvenFunction& f, const EvenFunction& g, double p,
                         const HarmonicAnalyzer& an) {
  const int n = an.ambient_dim();
  const EvenSpectrum sf = an.analyze(f).spectrum;
  const EvenSpectrum sg = an.analyze(g).spectrum;
  const Eigen::VectorXd lhs_f = an.node_values(fourier_extend(sf, p));
  const Eigen::VectorXd lhs_g = an.node_values(fourier_extend(sg, n - p));
  const double lhs = an.quadrature().weights.dot(lhs_f.cwiseProduct(lhs_g));

  const long N = an.quadrature().size();
  double fg = 0.0;
  for (long i = 0; i < N; ++i) {
    const Eigen::VectorXd x = an.quadrature().nodes.row(i).transpose();
    fg += an.quadrature().weights(i) * f.fn(x) * g.fn(x);
  }
  const double scale = std::pow(2.0 * kPi, n);
  return std::abs(lhs - scale * fg) / (scale * std::abs(fg) + 1e-300);
}

}  // namespace ig
