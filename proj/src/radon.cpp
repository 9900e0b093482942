#include "igeom/radon.hpp"

#include <cmath>
#include <stdexcept>

namespace ig {

double GrassmannMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& [e, w] : atoms) s += w;
  return s;
}

Eigen::VectorXd uniform_direction(const Subspace& E, RngStream& rng) {
  const int m = E.dim();
  if (m < 1) throw std::invalid_argument("uniform_direction: zero subspace");
  while (true) {
    Eigen::VectorXd g(m);
    for (int i = 0; i < m; ++i) g(i) = rng.gaussian();
    const double norm = g.norm();
    if (norm > 1e-12) return E.frame() * (g / norm);
  }
}

double radon_transform(const EvenFunction& f, const Subspace& E, const SphereQuadrature& q) {
  const int m = E.dim();
  if (m < 1) throw std::invalid_argument("radon_transform: dim E must be >= 1");
  if (m == 1) return 0.5 * (f.fn(E.frame().col(0)) + f.fn(-E.frame().col(0)));
  if (q.ambient_dim != m)
    throw std::invalid_argument("radon_transform: quadrature dimension mismatch");
  double acc = 0.0;
  for (long i = 0; i < q.size(); ++i)
    acc += q.weights(i) * f.fn(E.frame() * q.nodes.row(i).transpose());
  return acc;
}

double radon_transform(const EvenFunction& f, const Subspace& E) {
  if (E.dim() == 1) return radon_transform(f, E, SphereQuadrature{});
  return radon_transform(f, E, build_quadrature(E.dim(), 24));
}

McEstimate radon_dual(const GrassmannFunction& g, const Eigen::VectorXd& theta, long samples,
                      RngStream& rng) {
  if (samples < 1) throw std::invalid_argument("radon_dual: samples must be >= 1");
  const Subspace line = Subspace::span(theta);
  double sum = 0.0, sumsq = 0.0;
  for (long s = 0; s < samples; ++s) {
    const double v = g.fn(haar_in_fiber(line, g.subspace_dim, rng));
    sum += v;
    sumsq += v * v;
  }
  McEstimate est;
  est.samples = samples;
  est.value = sum / samples;
  const double var = std::max(0.0, sumsq / samples - est.value * est.value);
  est.std_error = samples > 1 ? std::sqrt(var / (samples - 1)) : 0.0;
  return est;
}

double pair_dual_discrete(const GrassmannMeasure& mu, const EvenFunction& f,
                          const SphereQuadrature& q) {
  double acc = 0.0;
  for (const auto& [e, w] : mu.atoms) {
    if (w == 0.0) continue;
    acc += w * radon_transform(f, e, q);
  }
  return acc;
}

GrassmannFunction perp_transport(const GrassmannFunction& g) {
  const int n = g.ambient_dim;
  auto inner = g.fn;
  return GrassmannFunction{n, n - g.subspace_dim,
                           [inner](const Subspace& e) { return inner(perp(e)); }};
}

GrassmannMeasure perp_transport(const GrassmannMeasure& mu) {
  GrassmannMeasure out;
  out.ambient_dim = mu.ambient_dim;
  out.subspace_dim = mu.ambient_dim - mu.subspace_dim;
  out.non_negative = mu.non_negative;
  out.atoms.reserve(mu.atoms.size());
  for (const auto& [e, w] : mu.atoms) out.atoms.emplace_back(perp(e), w);
  return out;
}

double wedge_radon_residual(const EvenSpectrum& f, int k, const Subspace& H,
                            const HarmonicAnalyzer& an) {
  const int n = f.ambient_dim;
  if (k < 1 || k > n - 1) throw std::invalid_argument("wedge_radon_residual: need 1 <= k <= n-1");
  if (H.dim() != n - k)
    throw std::invalid_argument("wedge_radon_residual: H must have dim n-k");
  const EvenFunction fs = an.synthesize(f);
  const EvenFunction ts = an.synthesize(fourier_extend(f, static_cast<double>(k)));

  const int L = f.max_degree;
  const auto section_rule = [&](int m) { return build_quadrature(m, L + 2); };

  double lhs, rhs;
  if (n - k == 1)
    lhs = radon_transform(ts, H);
  else
    lhs = radon_transform(ts, H, section_rule(n - k));
  const Subspace hp = perp(H);
  if (k == 1)
    rhs = c_constant(n, k) * radon_transform(fs, hp);
  else
    rhs = c_constant(n, k) * radon_transform(fs, hp, section_rule(k));

  const double floor = 1e-12 * c_constant(n, k) * (1.0 + f.l2_norm());
  return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + floor);
}

DualWedgeResult dual_wedge_residual(const GrassmannFunction& g, int m,
                                    const Eigen::MatrixXd& test_dirs, long samples,
                                    RngStream& rng, const HarmonicAnalyzer& an,
                                    int batches) {
  const int n = g.ambient_dim;
  if (m < 1 || m > n - 1) throw std::invalid_argument("dual_wedge_residual: need 1 <= m <= n-1");
  if (g.subspace_dim != n - m)
    throw std::invalid_argument("dual_wedge_residual: g must live on G(n, n-m)");
  if (batches < 2) throw std::invalid_argument("dual_wedge_residual: need >= 2 batches");

  const long N = an.quadrature().size();
  const long per_node = std::max<long>(1, samples / (batches * N));
  const long t_count = test_dirs.rows();
  const MultiplierTable table = make_multiplier_table(n, m, an.max_degree());
  const double cnm = c_constant(n, m);

  Eigen::MatrixXd lhs_b(batches, t_count);
  Eigen::MatrixXd rhs_b(batches, t_count);
  long used = 0;
  for (int b = 0; b < batches; ++b) {
    RngStream brng = rng.substream(1000 + b);
    Eigen::VectorXd fhat(N);
    for (long i = 0; i < N; ++i) {
      const Subspace line = Subspace::span(an.quadrature().nodes.row(i).transpose());
      double acc = 0.0;
      for (long s = 0; s < per_node; ++s) acc += g.fn(haar_in_fiber(line, n - m, brng));
      fhat(i) = acc / per_node;
    }
    used += per_node * N;
    EvenSpectrum spec = an.analyze_values(fhat).spectrum;
    for (int j = 0; j <= spec.max_degree; j += 2) spec.blocks[j / 2] *= table.at(j);
    lhs_b.row(b) = an.evaluate(spec, test_dirs).transpose();

    const GrassmannFunction gperp = perp_transport(g);
    const long rhs_samples = std::max<long>(64, samples / (batches * t_count));
    for (long t = 0; t < t_count; ++t) {
      const Subspace line = Subspace::span(test_dirs.row(t).transpose());
      double acc = 0.0;
      for (long s = 0; s < rhs_samples; ++s) acc += gperp.fn(haar_in_fiber(line, m, brng));
      rhs_b(b, t) = cnm * acc / rhs_samples;
    }
  }

  DualWedgeResult res;
  res.fiber_samples = used;
  double scale = 0.0;
  for (long t = 0; t < t_count; ++t) {
    DualWedgePoint pt;
    pt.theta = test_dirs.row(t).transpose();
    pt.lhs = lhs_b.col(t).mean();
    pt.rhs = rhs_b.col(t).mean();
    const double var_l = (lhs_b.col(t).array() - pt.lhs).square().sum() / (batches - 1);
    const double var_r = (rhs_b.col(t).array() - pt.rhs).square().sum() / (batches - 1);
    pt.std_error = std::sqrt((var_l + var_r) / batches);
    pt.z = std::abs(pt.lhs - pt.rhs) / (pt.std_error + 1e-300);
    scale = std::max(scale, std::max(std::abs(pt.lhs), std::abs(pt.rhs)));
    res.points.push_back(std::move(pt));
  }
  for (const auto& pt : res.points) {
    res.max_z = std::max(res.max_z, pt.z);
    res.max_rel_deviation =
        std::max(res.max_rel_deviation, std::abs(pt.lhs - pt.rhs) / (scale + 1e-300));
    if (pt.std_error > 0.1 * (scale + 1e-300)) res.inconclusive = true;
  }
  return res;
}

McEstimate v_apply(int k, const GrassmannFunction& g, const Subspace& E, long samples,
                   RngStream& rng) {
  const int n = g.ambient_dim;
  if (k < 1 || k > n - 1) throw std::invalid_argument("v_apply: need 1 <= k <= n-1");
  if (g.subspace_dim != k || E.dim() != k)
    throw std::invalid_argument("v_apply: g and E must live on G(n,k)");
  const Subspace ep = perp(E);
  double sum = 0.0, sumsq = 0.0;
  for (long s = 0; s < samples; ++s) {
    const Eigen::VectorXd theta = uniform_direction(ep, rng);
    const double v = g.fn(haar_in_fiber(Subspace::span(theta), k, rng));
    sum += v;
    sumsq += v * v;
  }
  McEstimate est;
  est.samples = samples;
  est.value = sum / samples;
  const double var = std::max(0.0, sumsq / samples - est.value * est.value);
  est.std_error = samples > 1 ? std::sqrt(var / (samples - 1)) : 0.0;
  return est;
}

}  // namespace ig
