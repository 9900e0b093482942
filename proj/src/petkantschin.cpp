#include "igeom/petkantschin.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ig {

void validate(const PetkantschinConfig& cfg) {
  const int n = cfg.ambient_dim;
  if (n < 2) throw std::invalid_argument("petkantschin: n must be >= 2");
  if (cfg.pole.ambient_dim() != n) throw std::invalid_argument("petkantschin: pole dim mismatch");
  if (cfg.codims.empty()) throw std::invalid_argument("petkantschin: empty codimension list");
  int l = 0;
  for (const int k : cfg.codims) {
    if (k < 1) throw std::invalid_argument("petkantschin: codimensions must be >= 1");
    l += k;
  }
  if (l > n - cfg.pole.dim())
    throw std::invalid_argument("petkantschin: sum of codimensions exceeds n - d");
  if (!cfg.integrand) throw std::invalid_argument("petkantschin: missing integrand");
  if (cfg.samples < cfg.batches || cfg.batches < 2)
    throw std::invalid_argument("petkantschin: need samples >= batches >= 2");
}

double delta_constant(int n, const std::vector<int>& k_list, int l, int d) {
  const int sum = std::accumulate(k_list.begin(), k_list.end(), 0);
  if (sum != l) throw std::invalid_argument("delta_constant: sum of k_list differs from l");
  if (l > n - d || d < 0) throw std::invalid_argument("delta_constant: invalid (l, d)");
  double c = grassmann_volume(n - d, n - d - l);
  for (const int k : k_list) c *= grassmann_volume(l, l - k) / grassmann_volume(n - d, n - d - k);
  return c;
}

namespace {

McEstimate batched(const PetkantschinConfig& cfg,
                   const std::function<double(RngStream&)>& draw) {
  const int b = cfg.batches;
  const long per = cfg.samples / b;
  RngStream root(cfg.seed, 0x9E7);
  Eigen::VectorXd means(b);
  for (int i = 0; i < b; ++i) {
    RngStream rng = root.substream(i);
    double acc = 0.0;
    for (long s = 0; s < per; ++s) acc += draw(rng);
    means(i) = acc / per;
  }
  McEstimate est;
  est.samples = per * b;
  est.value = means.mean();
  est.std_error = std::sqrt((means.array() - est.value).square().sum() / (b - 1) / b);
  return est;
}

}  // namespace

McEstimate lhs_estimate(const PetkantschinConfig& cfg) {
  validate(cfg);
  const int n = cfg.ambient_dim;
  return batched(cfg, [&cfg, n](RngStream& rng) {
    std::vector<Subspace> es;
    es.reserve(cfg.codims.size());
    for (const int k : cfg.codims) es.push_back(haar_in_fiber(cfg.pole, n - k, rng));
    return cfg.integrand(es);
  });
}

McEstimate rhs_estimate(const PetkantschinConfig& cfg) {
  validate(cfg);
  const int n = cfg.ambient_dim;
  const int d = cfg.pole.dim();
  const int l = std::accumulate(cfg.codims.begin(), cfg.codims.end(), 0);
  const double c = delta_constant(n, cfg.codims, l, d);
  const int expo = n - d - l;
  return batched(cfg, [&cfg, n, l, c, expo](RngStream& rng) {
    const Subspace f = haar_in_fiber(cfg.pole, n - l, rng);
    std::vector<Subspace> es;
    es.reserve(cfg.codims.size());
    for (const int k : cfg.codims) es.push_back(haar_in_fiber(f, n - k, rng));
    const double om = omega(es);
    if (om <= 0.0) return 0.0;  // measure-zero configurations contribute nothing
    return cfg.integrand(es) * c * std::pow(om, expo);
  });
}

PetkCheck verify(const PetkantschinConfig& cfg) {
  PetkCheck out;
  out.lhs = lhs_estimate(cfg);
  PetkantschinConfig rhs_cfg = cfg;
  rhs_cfg.seed = cfg.seed ^ 0x5EEDF00DULL;  // independent sampling streams
  out.rhs = rhs_estimate(rhs_cfg);
  const double se = std::hypot(out.lhs.std_error, out.rhs.std_error);
  out.z = std::abs(out.lhs.value - out.rhs.value) / (se + 1e-300);
  out.pass = out.z < 3.0;
  return out;
}

}  // namespace ig
