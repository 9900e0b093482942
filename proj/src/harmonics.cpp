#include "igeom/harmonics.hpp"

#include <cmath>
#include <stdexcept>

namespace ig {

namespace {

constexpr long kChunk = 2048;

// In-place three-term recurrence on an array of t-values: given work buffers
// prev (C~_{j-2}) and cur (C~_{j-1}), advance to degree j.
// C~_j = (2(j+lam-1) t C~_{j-1} - (j-1) C~_{j-2}) / (j + 2 lam - 1)
void zonal_step(int j, double lam, const Eigen::ArrayXXd& t, Eigen::ArrayXXd& prev,
                Eigen::ArrayXXd& cur) {
  const double a = 2.0 * (j + lam - 1.0) / (j + 2.0 * lam - 1.0);
  const double b = (j - 1.0) / (j + 2.0 * lam - 1.0);
  prev = a * t * cur - b * prev;
  prev.swap(cur);
}

// C~_j applied elementwise to a matrix of inner products.
Eigen::ArrayXXd zonal_matrix(int n, int j, const Eigen::ArrayXXd& t) {
  if (j == 0) return Eigen::ArrayXXd::Ones(t.rows(), t.cols());
  if (j == 1) return t;
  const double lam = 0.5 * (n - 2);
  Eigen::ArrayXXd prev = Eigen::ArrayXXd::Ones(t.rows(), t.cols());
  Eigen::ArrayXXd cur = t;
  for (int d = 2; d <= j; ++d) zonal_step(d, lam, t, prev, cur);
  return cur;
}

}  // namespace

int dim_harmonic(int n, int j) {
  if (n < 2 || j < 0) throw std::invalid_argument("dim_harmonic: need n >= 2, j >= 0");
  if (j == 0) return 1;
  if (j == 1) return n;
  // C(n+j-1, j) - C(n+j-3, j-2), computed multiplicatively
  auto binom = [](int a, int b) {
    double r = 1.0;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  return static_cast<int>(std::llround(binom(n + j - 1, j) - binom(n + j - 3, j - 2)));
}

double zonal_kernel(int n, int j, double t) {
  double buf[2];
  if (j == 0) return 1.0;
  if (j == 1) return t;
  const double lam = 0.5 * (n - 2);
  buf[0] = 1.0;
  buf[1] = t;
  for (int d = 2; d <= j; ++d) {
    const double a = 2.0 * (d + lam - 1.0) / (d + 2.0 * lam - 1.0);
    const double b = (d - 1.0) / (d + 2.0 * lam - 1.0);
    const double next = a * t * buf[1] - b * buf[0];
    buf[0] = buf[1];
    buf[1] = next;
  }
  return buf[1];
}

void zonal_kernel_all(int n, int L, double t, double* out) {
  out[0] = 1.0;
  if (L == 0) return;
  out[1] = t;
  const double lam = 0.5 * (n - 2);
  for (int d = 2; d <= L; ++d) {
    const double a = 2.0 * (d + lam - 1.0) / (d + 2.0 * lam - 1.0);
    const double b = (d - 1.0) / (d + 2.0 * lam - 1.0);
    out[d] = a * t * out[d - 1] - b * out[d - 2];
  }
}

Eigen::VectorXd zonal_coefficients(int n, int j) {
  std::vector<Eigen::VectorXd> c(j + 1);
  c[0] = Eigen::VectorXd::Ones(1);
  if (j >= 1) {
    c[1] = Eigen::VectorXd::Zero(2);
    c[1](1) = 1.0;
  }
  const double lam = 0.5 * (n - 2);
  for (int d = 2; d <= j; ++d) {
    const double a = 2.0 * (d + lam - 1.0) / (d + 2.0 * lam - 1.0);
    const double b = (d - 1.0) / (d + 2.0 * lam - 1.0);
    c[d] = Eigen::VectorXd::Zero(d + 1);
    c[d].tail(d) += a * c[d - 1];
    c[d].head(d - 1) -= b * c[d - 2];
  }
  return c[j];
}

EvenFunction constant_function(int n, double c) {
  return EvenFunction{n, [c](const Eigen::VectorXd&) { return c; }};
}

double EvenSpectrum::l2_norm() const {
  double s = 0.0;
  for (const auto& b : blocks) s += b.squaredNorm();
  return std::sqrt(s);
}

ZonalBasis build_zonal_basis(int n, int j, RngStream& rng) {
  ZonalBasis basis;
  basis.ambient_dim = n;
  basis.degree = j;
  const int d = dim_harmonic(n, j);
  if (j == 0) {
    basis.centers = Eigen::MatrixXd::Zero(1, n);
    basis.centers(0, 0) = 1.0;
    basis.transform = Eigen::MatrixXd::Ones(1, 1);
    return basis;
  }

  int pool_factor = 3;
  for (int attempt = 0; attempt < 4; ++attempt, pool_factor *= 2) {
    const int m = pool_factor * d;
    Eigen::MatrixXd pool(m, n);
    for (int r = 0; r < m; ++r) {
      Eigen::VectorXd v(n);
      for (int i = 0; i < n; ++i) v(i) = rng.gaussian();
      pool.row(r) = v.normalized();
    }
    // Gram of the kernels K_r = C~_j(<y_r, .>):  <K_r, K_s> = C~_j(<y_r,y_s>)/N_j
    Eigen::MatrixXd gram(m, m);
    {
      const Eigen::MatrixXd dots = pool * pool.transpose();
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s)
          gram(r, s) = zonal_kernel(n, j, std::clamp(dots(r, s), -1.0, 1.0)) / d;
    }
    // Pivoted Cholesky, selecting d well-conditioned centers.
    Eigen::MatrixXd lmat = Eigen::MatrixXd::Zero(m, d);
    Eigen::VectorXd diag = gram.diagonal();
    std::vector<int> sel;
    sel.reserve(d);
    bool ok = true;
    for (int c = 0; c < d; ++c) {
      int p = 0;
      diag.maxCoeff(&p);
      if (diag(p) < 1e-12 / d) {
        ok = false;
        break;
      }
      const double piv = std::sqrt(diag(p));
      Eigen::VectorXd col = gram.col(p);
      if (c > 0) col -= lmat.leftCols(c) * lmat.row(p).head(c).transpose();
      col /= piv;
      lmat.col(c) = col;
      diag -= col.cwiseAbs2();
      diag(p) = -1.0;  // never reselect
      sel.push_back(p);
    }
    if (!ok) continue;

    basis.centers.resize(d, n);
    Eigen::MatrixXd lsel(d, d);
    for (int c = 0; c < d; ++c) {
      basis.centers.row(c) = pool.row(sel[c]);
      lsel.row(c) = lmat.row(sel[c]);
    }
    // psi = K * L^{-T} restricted to the selected centers
    basis.transform = lsel.triangularView<Eigen::Lower>()
                          .solve(Eigen::MatrixXd::Identity(d, d))
                          .transpose();
    return basis;
  }
  throw std::runtime_error("build_zonal_basis: degenerate center pool");
}

HarmonicAnalyzer::HarmonicAnalyzer(int n, int L, int quad_degree, int sos_degree,
                                   std::uint64_t basis_seed)
    : n_(n), L_(L), sos_degree_(sos_degree) {
  if (L < 0 || L % 2 != 0) throw std::invalid_argument("HarmonicAnalyzer: L must be even >= 0");
  if (quad_degree < 0) quad_degree = 2 * L;
  if (quad_degree < 2 * L)
    throw std::invalid_argument("HarmonicAnalyzer: quadrature under-resolved (need >= 2L)");
  quad_ = build_quadrature(n, quad_degree);

  RngStream rng(basis_seed, 0x9A);
  even_bases_.reserve(L / 2 + 1);
  for (int j = 0; j <= L; j += 2) even_bases_.push_back(build_zonal_basis(n, j, rng));
  if (sos_degree_ >= 0) {
    if (2 * sos_degree_ > quad_degree)
      throw std::invalid_argument("HarmonicAnalyzer: sos_degree exceeds quadrature");
    sos_bases_.reserve(sos_degree_ + 1);
    for (int j = 0; j <= sos_degree_; ++j) {
      if (j % 2 == 0 && j <= L) {
        sos_bases_.push_back(even_bases_[j / 2]);
      } else {
        sos_bases_.push_back(build_zonal_basis(n, j, rng));
      }
    }
  }

  RngStream probe_rng(basis_seed, 0x77);
  antipodal_probes_.resize(64, n);
  for (int r = 0; r < antipodal_probes_.rows(); ++r) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = probe_rng.gaussian();
    antipodal_probes_.row(r) = v.normalized();
  }
}

const ZonalBasis& HarmonicAnalyzer::basis(int j) const {
  if (j % 2 == 0 && j <= L_) return even_bases_[j / 2];
  if (sos_degree_ >= 0 && j <= sos_degree_) return sos_bases_[j];
  throw std::out_of_range("HarmonicAnalyzer::basis: degree not built");
}

Eigen::VectorXd HarmonicAnalyzer::kernel_moments(int j, const Eigen::VectorXd& wv) const {
  const ZonalBasis& b = basis(j);
  const long d = b.centers.rows();
  Eigen::VectorXd moments = Eigen::VectorXd::Zero(d);
  const long N = quad_.size();
  for (long at = 0; at < N; at += kChunk) {
    const long len = std::min(kChunk, N - at);
    const Eigen::ArrayXXd t =
        (quad_.nodes.middleRows(at, len) * b.centers.transpose()).array();
    const Eigen::ArrayXXd k = zonal_matrix(n_, j, t);
    moments.noalias() += k.matrix().transpose() * wv.segment(at, len);
  }
  return moments;
}

AnalysisResult HarmonicAnalyzer::analyze(const EvenFunction& f) const {
  if (f.ambient_dim != n_)
    throw std::invalid_argument("analyze: dimension mismatch");
  const long N = quad_.size();
  Eigen::VectorXd fv(N);
  for (long i = 0; i < N; ++i) fv(i) = f.fn(quad_.nodes.row(i).transpose());
  AnalysisResult res = analyze_values(fv);
  double defect = 0.0;
  for (int r = 0; r < antipodal_probes_.rows(); ++r) {
    const Eigen::VectorXd x = antipodal_probes_.row(r).transpose();
    defect = std::max(defect, std::abs(f.fn(x) - f.fn(-x)));
  }
  res.evenness_defect = defect;
  return res;
}

AnalysisResult HarmonicAnalyzer::analyze_values(const Eigen::VectorXd& fv) const {
  if (fv.size() != quad_.size())
    throw std::invalid_argument("analyze_values: size mismatch with quadrature");
  const Eigen::VectorXd wv = quad_.weights.cwiseProduct(fv);

  AnalysisResult res;
  res.spectrum.ambient_dim = n_;
  res.spectrum.max_degree = L_;
  res.spectrum.blocks.resize(L_ / 2 + 1);
  for (int j = 0; j <= L_; j += 2) {
    const ZonalBasis& b = basis(j);
    res.spectrum.blocks[j / 2] = b.transform.transpose() * kernel_moments(j, wv);
  }
  const Eigen::VectorXd synth = node_values(res.spectrum);
  res.residual_l2 =
      std::sqrt(quad_.weights.dot((fv - synth).cwiseAbs2()));
  return res;
}

Eigen::VectorXd HarmonicAnalyzer::evaluate(const EvenSpectrum& s,
                                           const Eigen::MatrixXd& points) const {
  if (s.ambient_dim != n_ || s.max_degree > L_)
    throw std::invalid_argument("evaluate: spectrum mismatch");
  const long M = points.rows();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(M);
  for (int j = 0; j <= s.max_degree; j += 2) {
    const ZonalBasis& b = basis(j);
    const Eigen::VectorXd v = b.transform * s.blocks[j / 2];
    for (long at = 0; at < M; at += kChunk) {
      const long len = std::min(kChunk, M - at);
      const Eigen::ArrayXXd t = (points.middleRows(at, len) * b.centers.transpose()).array();
      out.segment(at, len).noalias() += zonal_matrix(n_, j, t).matrix() * v;
    }
  }
  return out;
}

Eigen::VectorXd HarmonicAnalyzer::node_values(const EvenSpectrum& s) const {
  return evaluate(s, quad_.nodes);
}

EvenFunction HarmonicAnalyzer::synthesize(const EvenSpectrum& s) const {
  struct Payload {
    int n;
    std::vector<std::pair<Eigen::MatrixXd, Eigen::VectorXd>> parts;  // centers, weights
    std::vector<int> degrees;
  };
  auto payload = std::make_shared<Payload>();
  payload->n = n_;
  for (int j = 0; j <= s.max_degree; j += 2) {
    const ZonalBasis& b = basis(j);
    payload->parts.emplace_back(b.centers, b.transform * s.blocks[j / 2]);
    payload->degrees.push_back(j);
  }
  return EvenFunction{
      n_, [payload](const Eigen::VectorXd& x) {
        double acc = 0.0;
        for (std::size_t a = 0; a < payload->parts.size(); ++a) {
          const auto& [centers, v] = payload->parts[a];
          const int j = payload->degrees[a];
          const Eigen::VectorXd t = centers * x;
          for (long r = 0; r < t.size(); ++r)
            acc += v(r) * zonal_kernel(payload->n, j, t(r));
        }
        return acc;
      }};
}

double HarmonicAnalyzer::inner_product(const EvenFunction& f, const EvenFunction& g) const {
  const long N = quad_.size();
  double acc = 0.0;
  for (long i = 0; i < N; ++i) {
    const Eigen::VectorXd x = quad_.nodes.row(i).transpose();
    acc += quad_.weights(i) * f.fn(x) * g.fn(x);
  }
  return acc;
}

Eigen::MatrixXd HarmonicAnalyzer::moment_matrix(const Eigen::VectorXd& v) const {
  if (sos_degree_ < 0)
    throw std::logic_error("moment_matrix: analyzer built without sos bases");
  if (v.size() != quad_.size())
    throw std::invalid_argument("moment_matrix: size mismatch with quadrature");

  long total = 0;
  for (int j = 0; j <= sos_degree_; ++j) total += sos_bases_[j].centers.rows();

  const Eigen::VectorXd wv = quad_.weights.cwiseProduct(v);
  Eigen::MatrixXd gk = Eigen::MatrixXd::Zero(total, total);
  const long N = quad_.size();
  Eigen::MatrixXd kernels(kChunk, total);
  for (long at = 0; at < N; at += kChunk) {
    const long len = std::min(kChunk, N - at);
    long col = 0;
    for (int j = 0; j <= sos_degree_; ++j) {
      const ZonalBasis& b = sos_bases_[j];
      const long d = b.centers.rows();
      const Eigen::ArrayXXd t =
          (quad_.nodes.middleRows(at, len) * b.centers.transpose()).array();
      kernels.block(0, col, len, d) = zonal_matrix(n_, j, t).matrix();
      col += d;
    }
    gk.noalias() += kernels.topRows(len).transpose() *
                    wv.segment(at, len).asDiagonal() * kernels.topRows(len);
  }
  // congruence with the block-diagonal orthonormalizing transform
  Eigen::MatrixXd g(total, total);
  long row = 0;
  for (int j = 0; j <= sos_degree_; ++j) {
    const long dj = sos_bases_[j].centers.rows();
    long col = 0;
    for (int j2 = 0; j2 <= sos_degree_; ++j2) {
      const long dj2 = sos_bases_[j2].centers.rows();
      g.block(row, col, dj, dj2).noalias() = sos_bases_[j].transform.transpose() *
                                             gk.block(row, col, dj, dj2) *
                                             sos_bases_[j2].transform;
      col += dj2;
    }
    row += dj;
  }
  return 0.5 * (g + g.transpose());
}

EvenSpectrum random_spectrum(int n, int L, RngStream& rng) {
  EvenSpectrum s;
  s.ambient_dim = n;
  s.max_degree = L;
  s.blocks.resize(L / 2 + 1);
  for (int j = 0; j <= L; j += 2) {
    Eigen::VectorXd b(dim_harmonic(n, j));
    for (long i = 0; i < b.size(); ++i) b(i) = rng.gaussian();
    s.blocks[j / 2] = b;
  }
  const double norm = s.l2_norm();
  for (auto& b : s.blocks) b /= norm;
  return s;
}

}  // namespace ig
