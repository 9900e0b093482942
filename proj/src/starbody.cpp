#include "igeom/starbody.hpp"

#include <cmath>
#include <stdexcept>

namespace ig {

EvenFunction StarBody::radial_function() const {
  auto eval = eval_;
  return EvenFunction{n_, eval};
}

EvenFunction StarBody::radial_power(double e) const {
  auto eval = eval_;
  return EvenFunction{n_, [eval, e](const Eigen::VectorXd& x) { return std::pow(eval(x), e); }};
}

StarBody StarBody::ball(int n, double radius) {
  if (n < 1 || radius <= 0.0) throw std::invalid_argument("StarBody::ball: bad parameters");
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) / (radius * radius);
  return StarBody(n, [radius](const Eigen::VectorXd&) { return radius; }, std::move(a));
}

StarBody StarBody::ellipsoid(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("StarBody::ellipsoid: matrix not square");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + a.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("StarBody::ellipsoid: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.eigenvalues().minCoeff() <= 1e-12)
    throw std::invalid_argument("StarBody::ellipsoid: matrix not positive definite");
  Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  return StarBody(
      n, [sym](const Eigen::VectorXd& x) { return 1.0 / std::sqrt(x.dot(sym * x)); }, sym);
}

StarBody StarBody::ellipsoid_axes(const Eigen::VectorXd& semi_axes) {
  if ((semi_axes.array() <= 0).any())
    throw std::invalid_argument("StarBody::ellipsoid_axes: axes must be positive");
  return ellipsoid(semi_axes.array().square().inverse().matrix().asDiagonal());
}

StarBody StarBody::lp_ball(int n, double p, const Eigen::VectorXd& semi_axes) {
  if (n < 1 || !(p > 0.0)) throw std::invalid_argument("StarBody::lp_ball: bad parameters");
  Eigen::VectorXd axes = semi_axes.size() == 0 ? Eigen::VectorXd::Ones(n) : semi_axes;
  if (axes.size() != n || (axes.array() <= 0).any())
    throw std::invalid_argument("StarBody::lp_ball: bad axes");
  if (std::isinf(p)) {
    return StarBody(n, [axes](const Eigen::VectorXd& x) {
      return 1.0 / (x.cwiseQuotient(axes)).cwiseAbs().maxCoeff();
    });
  }
  return StarBody(n, [axes, p](const Eigen::VectorXd& x) {
    return std::pow((x.cwiseQuotient(axes)).cwiseAbs().array().pow(p).sum(), -1.0 / p);
  });
}

StarBody StarBody::from_function(int n, std::function<double(const Eigen::VectorXd&)> rho) {
  return StarBody(n, std::move(rho));
}

StarBody k_radial_sum(const StarBody& a, const StarBody& b, int k) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("k_radial_sum: ambient dims differ");
  if (k < 1) throw std::invalid_argument("k_radial_sum: k must be >= 1");
  auto ea = a.eval_, eb = b.eval_;
  return StarBody(a.ambient_dim(), [ea, eb, k](const Eigen::VectorXd& x) {
    return std::pow(std::pow(ea(x), k) + std::pow(eb(x), k), 1.0 / k);
  });
}

StarBody radial_product_power(const StarBody& k1, int p1, const StarBody& k2, int p2) {
  if (k1.ambient_dim() != k2.ambient_dim())
    throw std::invalid_argument("radial_product_power: ambient dims differ");
  if (p1 < 1 || p2 < 1) throw std::invalid_argument("radial_product_power: powers must be >= 1");
  if (p1 + p2 > k1.ambient_dim() - 1)
    throw std::invalid_argument("radial_product_power: need p1 + p2 <= n - 1");
  auto ea = k1.eval_, eb = k2.eval_;
  const double inv = 1.0 / (p1 + p2);
  return StarBody(k1.ambient_dim(), [ea, eb, p1, p2, inv](const Eigen::VectorXd& x) {
    return std::pow(std::pow(ea(x), p1) * std::pow(eb(x), p2), inv);
  });
}

StarBody linear_image(const StarBody& k, const Eigen::MatrixXd& t) {
  const int n = k.ambient_dim();
  if (t.rows() != n || t.cols() != n) throw std::invalid_argument("linear_image: shape mismatch");
  if (std::abs(t.determinant()) <= 1e-12)
    throw std::invalid_argument("linear_image: map is singular");
  const Eigen::MatrixXd tinv = t.inverse();
  std::optional<Eigen::MatrixXd> tag;
  if (k.ellipsoid_matrix())
    tag = tinv.transpose() * (*k.ellipsoid_matrix()) * tinv;
  auto eval = k.eval_;
  return StarBody(
      n,
      [eval, tinv](const Eigen::VectorXd& x) {
        const Eigen::VectorXd y = tinv * x;
        const double norm = y.norm();
        return eval(y / norm) / norm;
      },
      std::move(tag));
}

StarBody central_section(const StarBody& k, const Subspace& h) {
  if (h.ambient_dim() != k.ambient_dim())
    throw std::invalid_argument("central_section: ambient dims differ");
  const int m = h.dim();
  if (m < 1) throw std::invalid_argument("central_section: dim H must be >= 1");
  const Eigen::MatrixXd frame = h.frame();
  std::optional<Eigen::MatrixXd> tag;
  if (k.ellipsoid_matrix())
    tag = frame.transpose() * (*k.ellipsoid_matrix()) * frame;
  auto eval = k.eval_;
  return StarBody(
      m, [eval, frame](const Eigen::VectorXd& u) { return eval(frame * u); }, std::move(tag));
}

namespace {
double section_mean_rho_m(const StarBody& l, const Subspace& e, const SphereQuadrature& q) {
  const int m = e.dim();
  if (m == 1) {
    const Eigen::VectorXd v = e.frame().col(0);
    return 0.5 * (std::pow(l.radial(v), m) + std::pow(l.radial(-v), m));
  }
  if (q.ambient_dim != m)
    throw std::invalid_argument("section_volume: quadrature dimension mismatch");
  double acc = 0.0;
  for (long i = 0; i < q.size(); ++i) {
    const Eigen::VectorXd theta = e.frame() * q.nodes.row(i).transpose();
    acc += q.weights(i) * std::pow(l.radial(theta), m);
  }
  return acc;
}
}  // namespace

double section_volume(const StarBody& l, const Subspace& e, const SphereQuadrature& q) {
  const int m = e.dim();
  if (m < 1) throw std::invalid_argument("section_volume: dim E must be >= 1");
  return ball_volume(m) * section_mean_rho_m(l, e, q);
}

double section_volume(const StarBody& l, const Subspace& e) {
  if (e.dim() == 1) return section_volume(l, e, SphereQuadrature{});
  return section_volume(l, e, build_quadrature(e.dim(), 24));
}

StarBody intersection_body_of(const StarBody& l, int section_degree) {
  const int n = l.ambient_dim();
  if (n < 2) throw std::invalid_argument("intersection_body_of: n must be >= 2");
  auto rule = std::make_shared<SphereQuadrature>();
  if (n - 1 >= 2) *rule = build_quadrature(n - 1, section_degree);
  return StarBody::from_function(n, [l, rule](const Eigen::VectorXd& theta) {
    return section_volume(l, perp(Subspace::span(theta)), *rule);
  });
}

double radial_distance(const StarBody& a, const StarBody& b, const Eigen::MatrixXd& grid) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("radial_distance: ambient dims differ");
  double d = 0.0;
  for (long i = 0; i < grid.rows(); ++i) {
    const Eigen::VectorXd theta = grid.row(i).transpose();
    d = std::max(d, std::abs(a.radial(theta) - b.radial(theta)));
  }
  return d;
}

std::pair<StarBody, double> gz_approximant(const Subspace& f, double eps, int k,
                                           const SphereQuadrature& q) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("gz_approximant: eps not in (0,1)");
  const int n = f.ambient_dim();
  if (k < 1 || f.dim() != n - k)
    throw std::invalid_argument("gz_approximant: F must have dim n-k, k >= 1");
  const Eigen::MatrixXd pf = f.frame() * f.frame().transpose();
  const Eigen::MatrixXd a =
      pf + (Eigen::MatrixXd::Identity(n, n) - pf) / (eps * eps);
  StarBody body = StarBody::ellipsoid(a);
  if (q.ambient_dim != n) throw std::invalid_argument("gz_approximant: quadrature dim mismatch");
  double z = 0.0;
  for (long i = 0; i < q.size(); ++i)
    z += q.weights(i) * std::pow(body.radial(q.nodes.row(i).transpose()), k);
  return {std::move(body), z};
}

}  // namespace ig
