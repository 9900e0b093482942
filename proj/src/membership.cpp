#include "igeom/membership.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "igeom/fourier.hpp"
#include "igeom/version.hpp"

namespace ig {

const char* to_string(Membership m) {
  switch (m) {
    case Membership::positive: return "positive";
    case Membership::negative: return "negative";
    default: return "inconclusive";
  }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PipelineRun {
  EvenSpectrum transformed;
  double margin_raw = 0.0;
  Eigen::VectorXd argmin_dir;
  double bound = kInf;
  double lambda_min = std::numeric_limits<double>::quiet_NaN();
  double lambda_max = std::numeric_limits<double>::quiet_NaN();
};

// Geometric extrapolation of the sup-scale tail terms |c_j| sqrt(dim) ||f_j||.
double tail_bound(const Eigen::VectorXd& terms, double ratio_cap, double scale) {
  const int nb = static_cast<int>(terms.size());
  const double floor = 1e-13 * std::max(scale, 1.0);
  int last = nb - 1;
  // window of trailing terms
  const int lo = std::max(1, nb - 4);
  double maxw = 0.0;
  for (int i = lo; i <= last; ++i) maxw = std::max(maxw, terms(i));
  if (maxw <= floor) return floor;  // spectrum effectively band-limited
  double logsum = 0.0;
  int count = 0;
  for (int i = std::max(lo, 1); i < last; ++i) {
    const double a = std::max(terms(i), floor);
    const double b = std::max(terms(i + 1), floor);
    logsum += std::log(b / a);
    ++count;
  }
  if (count == 0) return kInf;
  const double r = std::exp(logsum / count);
  if (!(r < ratio_cap)) return kInf;
  return std::max(terms(last), floor) * r / (1.0 - r) + floor;
}

PipelineRun run_pipeline(const StarBody& body, int k, int L, const HarmonicAnalyzer& an,
                         const IkOptions& opt, bool with_sos) {
  PipelineRun run;
  const int n = body.ambient_dim();
  const AnalysisResult ar = an.analyze(body.radial_power(k));

  const MultiplierTable table = make_multiplier_table(n, k, L);
  run.transformed = ar.spectrum;
  Eigen::VectorXd terms(L / 2 + 1);
  for (int j = 0; j <= L; j += 2) {
    run.transformed.blocks[j / 2] *= table.at(j);
    terms(j / 2) =
        std::abs(table.at(j)) * ar.spectrum.block_norm(j) * std::sqrt(dim_harmonic(n, j));
  }

  // min scan over the quadrature nodes plus extra random directions
  RngStream grid_rng(opt.seed, 0x6121D);
  Eigen::MatrixXd extra(opt.grid_extra, n);
  for (int r = 0; r < opt.grid_extra; ++r) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = grid_rng.gaussian();
    extra.row(r) = v.normalized();
  }
  const Eigen::VectorXd on_nodes = an.node_values(run.transformed);
  const Eigen::VectorXd on_extra = an.evaluate(run.transformed, extra);
  int idx_n = 0, idx_e = 0;
  const double min_nodes = on_nodes.minCoeff(&idx_n);
  const double min_extra =
      opt.grid_extra > 0 ? on_extra.minCoeff(&idx_e) : kInf;
  if (min_nodes <= min_extra) {
    run.margin_raw = min_nodes;
    run.argmin_dir = an.quadrature().nodes.row(idx_n).transpose();
  } else {
    run.margin_raw = min_extra;
    run.argmin_dir = extra.row(idx_e).transpose();
  }

  run.bound = tail_bound(terms, opt.tail_ratio_cap, terms(0));

  if (with_sos) {
    const Eigen::MatrixXd g = an.moment_matrix(an.node_values(run.transformed));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    run.lambda_min = es.eigenvalues().minCoeff();
    run.lambda_max = es.eigenvalues().maxCoeff();
  }
  return run;
}

}  // namespace

Eigen::VectorXd radon_zonal_polynomial(int n, int j, int m) {
  if (j % 2 != 0) throw std::invalid_argument("radon_zonal_polynomial: j must be even");
  if (m < 1) throw std::invalid_argument("radon_zonal_polynomial: m must be >= 1");
  const Eigen::VectorXd gamma = zonal_coefficients(n, j);
  Eigen::VectorXd coeff(j / 2 + 1);
  double mu = 1.0;  // mean of t^i over S^{m-1}: mu_i = mu_{i-2} (i-1)/(m+i-2)
  coeff(0) = gamma(0);
  for (int i = 2; i <= j; i += 2) {
    mu *= m == 1 ? 1.0 : static_cast<double>(i - 1) / (m + i - 2);
    coeff(i / 2) = gamma(i) * mu;
  }
  return coeff;
}

MembershipVerdict i_k_test(const StarBody& k_body, int k, int L, const IkOptions& opt) {
  const int n = k_body.ambient_dim();
  if (k < 1 || k > n - 1) throw std::invalid_argument("i_k_test: need 1 <= k <= n-1");
  if (L < 2 || L % 2 != 0) throw std::invalid_argument("i_k_test: L must be even >= 2");

  const int quad_degree = opt.quad_degree > 0 ? opt.quad_degree : 2 * L;
  const int sos_degree = opt.enable_sos ? L / 2 : -1;

  std::unique_ptr<HarmonicAnalyzer> owned;
  const HarmonicAnalyzer* an = opt.analyzer;
  if (an != nullptr) {
    if (an->ambient_dim() != n || an->max_degree() != L ||
        (opt.enable_sos && an->sos_degree() < L / 2))
      throw std::invalid_argument("i_k_test: shared analyzer mismatch");
  } else {
    owned = std::make_unique<HarmonicAnalyzer>(n, L, quad_degree, sos_degree);
    an = owned.get();
  }

  MembershipVerdict out;
  out.k = k;
  out.L = L;
  out.seed = opt.seed;

  const PipelineRun run = run_pipeline(k_body, k, L, *an, opt, false);
  if (std::isfinite(run.bound) && run.margin_raw > run.bound) {
    out.verdict = Membership::positive;
    out.route = "raw";
    out.margin = run.margin_raw;
    out.truncation_bound = run.bound;
    return out;
  }
  if (std::isfinite(run.bound) && run.margin_raw < -run.bound) {
    out.verdict = Membership::negative;
    out.route = "raw";
    out.margin = run.margin_raw;
    out.truncation_bound = run.bound;
    out.witness = run.argmin_dir;
    return out;
  }

  if (opt.enable_sos) {
    // Moment-matrix certificate: pairings <transform, psi_a psi_b> are exact
    // for degrees <= L/2, so lambda_min < 0 certifies non-membership up to
    // quadrature error; require agreement across two quadrature resolutions.
    IkOptions sub = opt;
    sub.analyzer = nullptr;
    PipelineRun coarse = run;
    {
      const Eigen::MatrixXd g = an->moment_matrix(an->node_values(run.transformed));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
      coarse.lambda_min = es.eigenvalues().minCoeff();
      coarse.lambda_max = es.eigenvalues().maxCoeff();
    }
    HarmonicAnalyzer finer(n, L, quad_degree + 6, L / 2);
    const PipelineRun fine = run_pipeline(k_body, k, L, finer, sub, true);

    const double scale = std::abs(coarse.lambda_max) + c_constant(n, k);
    const double guard = 1e-7 * scale;
    const bool stable =
        std::abs(coarse.lambda_min - fine.lambda_min) <= 0.25 * std::abs(coarse.lambda_min);
    out.lambda_min = coarse.lambda_min;
    out.route = "sos";
    out.truncation_bound = guard;
    out.margin = coarse.lambda_min;
    if (coarse.lambda_min < -guard && fine.lambda_min < -guard && stable) {
      out.verdict = Membership::negative;
      out.witness = run.argmin_dir;
      return out;
    }
  }

  out.verdict = Membership::inconclusive;
  out.route = opt.enable_sos ? "sos" : "raw";
  out.margin = run.margin_raw;
  out.truncation_bound = run.bound;
  return out;
}

BPFeasibility bp_k_test(const StarBody& k_body, int k, int L, int node_count, RngStream& rng,
                        const HarmonicAnalyzer* analyzer) {
  const int n = k_body.ambient_dim();
  if (k < 1 || k > n - 1) throw std::invalid_argument("bp_k_test: need 1 <= k <= n-1");
  if (node_count < 1) throw std::invalid_argument("bp_k_test: node_count must be >= 1");

  std::unique_ptr<HarmonicAnalyzer> owned;
  const HarmonicAnalyzer* an = analyzer;
  if (an != nullptr) {
    if (an->ambient_dim() != n || an->max_degree() != L)
      throw std::invalid_argument("bp_k_test: shared analyzer mismatch");
  } else {
    owned = std::make_unique<HarmonicAnalyzer>(n, L, 2 * L);
    an = owned.get();
  }

  const EvenSpectrum spec = an->analyze(k_body.radial_power(k)).spectrum;
  long dict = 0;
  for (int j = 0; j <= L; j += 2) dict += spec.blocks[j / 2].size();
  Eigen::VectorXd target(dict);
  {
    long at = 0;
    for (int j = 0; j <= L; j += 2) {
      target.segment(at, spec.blocks[j / 2].size()) = spec.blocks[j / 2];
      at += spec.blocks[j / 2].size();
    }
  }

  // Columns: harmonic moments of the section measure of each sampled
  // subspace; R_{n-k} of a zonal kernel is a polynomial in |P_E y|.
  std::vector<Eigen::VectorXd> polys(L / 2 + 1);
  for (int j = 0; j <= L; j += 2) polys[j / 2] = radon_zonal_polynomial(n, j, n - k);

  Eigen::MatrixXd a(dict, node_count);
  for (int c = 0; c < node_count; ++c) {
    const Subspace e = haar_subspace(n, n - k, rng);
    long at = 0;
    for (int j = 0; j <= L; j += 2) {
      const ZonalBasis& basis = an->basis(j);
      const long d = basis.centers.rows();
      Eigen::VectorXd w(d);
      for (long r = 0; r < d; ++r) {
        const double alpha2 =
            (e.frame().transpose() * basis.centers.row(r).transpose()).squaredNorm();
        const Eigen::VectorXd& p = polys[j / 2];
        double acc = 0.0, pw = 1.0;
        for (long i = 0; i < p.size(); ++i, pw *= alpha2) acc += p(i) * pw;
        w(r) = acc;
      }
      a.block(at, c, basis.transform.cols(), 1) = basis.transform.transpose() * w;
      at += basis.transform.cols();
    }
  }

  BPFeasibility out;
  out.node_count = node_count;
  out.dictionary_size = static_cast<int>(dict);
  out.seed = rng.seed();
  bool converged = false;
  out.weights = nnls(a, target, 1e-10, 600, &converged);
  out.converged = converged;
  out.residual = (a * out.weights - target).norm() / (target.norm() + 1e-300);
  return out;
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double rel_tol,
                     int max_sweeps, bool* converged) {
  const long cols = a.cols();
  const Eigen::MatrixXd ata = a.transpose() * a;
  const Eigen::VectorXd atb = a.transpose() * b;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(cols);
  Eigen::VectorXd grad = atb;  // atb - ata x
  const double scale = atb.cwiseAbs().maxCoeff() + 1e-300;
  if (converged) *converged = false;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double change = 0.0;
    for (long i = 0; i < cols; ++i) {
      const double d = ata(i, i);
      if (d <= 0.0) continue;
      const double xi = std::max(0.0, x(i) + grad(i) / d);
      const double delta = xi - x(i);
      if (delta != 0.0) {
        grad.noalias() -= delta * ata.col(i);
        x(i) = xi;
        change = std::max(change, std::abs(delta) * std::sqrt(d));
      }
    }
    if (change <= rel_tol * scale) {
      if (converged) *converged = true;
      break;
    }
  }
  return x;
}

VerificationReport structure_product_check(const StarBody& k1_body, int k1,
                                           const StarBody& k2_body, int k2, int L,
                                           const IkOptions& opt) {
  const int n = k1_body.ambient_dim();
  if (k1 + k2 > n - 1)
    throw std::invalid_argument("structure_product_check: need k1 + k2 <= n - 1");

  VerificationReport rep;
  rep.suite = "structure_product";
  rep.artifact_version = IGEOM_VERSION;
  rep.seed = opt.seed;
  rep.parameters = {{"n", std::to_string(n)},
                    {"k1", std::to_string(k1)},
                    {"k2", std::to_string(k2)},
                    {"L", std::to_string(L)}};

  auto record = [&](const std::string& name, const MembershipVerdict& v) {
    CheckRecord rec;
    rec.name = name;
    rec.estimate = v.margin;
    rec.standard_error = 0.0;
    rec.tolerance = v.truncation_bound;
    rec.verdict = v.verdict == Membership::positive
                      ? Verdict::pass
                      : (v.verdict == Membership::negative ? Verdict::fail
                                                           : Verdict::inconclusive);
    rep.add(std::move(rec));
  };

  const MembershipVerdict v1 = i_k_test(k1_body, k1, L, opt);
  record("factor1_i_" + std::to_string(k1), v1);
  const MembershipVerdict v2 = i_k_test(k2_body, k2, L, opt);
  record("factor2_i_" + std::to_string(k2), v2);
  if (v1.verdict != Membership::positive || v2.verdict != Membership::positive) {
    CheckRecord rec;
    rec.name = "product_i_" + std::to_string(k1 + k2);
    rec.verdict = Verdict::inconclusive;  // preconditions not established
    rep.add(std::move(rec));
    return rep;
  }
  const StarBody product = radial_product_power(k1_body, k1, k2_body, k2);
  const MembershipVerdict vp = i_k_test(product, k1 + k2, L, opt);
  record("product_i_" + std::to_string(k1 + k2), vp);
  return rep;
}

StarBody bp_sample(int n, int k, int ellipsoid_count, RngStream& rng) {
  if (ellipsoid_count < 1) throw std::invalid_argument("bp_sample: count must be >= 1");
  auto draw = [&]() {
    Eigen::VectorXd axes(n);
    const double lo = std::log(1.0 / 3.0), hi = std::log(3.0);
    for (int i = 0; i < n; ++i) axes(i) = std::exp(lo + (hi - lo) * rng.uniform());
    const Eigen::MatrixXd u = haar_rotation(n, rng);
    const Eigen::MatrixXd a =
        u * axes.array().square().inverse().matrix().asDiagonal() * u.transpose();
    return StarBody::ellipsoid(0.5 * (a + a.transpose()));
  };
  StarBody body = draw();
  for (int i = 1; i < ellipsoid_count; ++i) body = k_radial_sum(body, draw(), k);
  return body;
}

}  // namespace ig
