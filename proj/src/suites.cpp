#include "igeom/suites.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "igeom/fourier.hpp"
#include "igeom/geometry.hpp"
#include "igeom/membership.hpp"
#include "igeom/petkantschin.hpp"
#include "igeom/radon.hpp"
#include "igeom/starbody.hpp"
#include "igeom/version.hpp"

namespace ig {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

CheckRecord make_check(const std::string& name, double estimate, double se, double tol) {
  CheckRecord rec;
  rec.name = name;
  rec.estimate = estimate;
  rec.standard_error = se;
  rec.tolerance = tol;
  rec.verdict = estimate <= tol ? Verdict::pass : Verdict::fail;
  return rec;
}

double pick_tol(const SuiteConfig& cfg, double fallback) {
  return cfg.tol > 0 ? cfg.tol : fallback;
}

Eigen::VectorXd seeded_direction(int n, RngStream& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.gaussian();
  return v.normalized();
}

void suite_constants(const SuiteConfig& cfg, VerificationReport& rep) {
  const double tol = pick_tol(cfg, 1e-12);
  std::vector<int> ns = cfg.n_list.empty() ? std::vector<int>{2, 3, 4, 5, 6, 7, 8, 9, 10}
                                           : cfg.n_list;
  for (const int n : ns) {
    double worst = 0.0;
    const double target = std::pow(2.0 * kPi, n);
    for (int i = 1; i <= 50; ++i) {
      const double p = n * i / 51.0;
      worst = std::max(worst, std::abs(c_constant(n, p) * c_constant(n, n - p) - target) / target);
    }
    rep.add(make_check("c_product_identity_n" + std::to_string(n), worst, 0.0, tol));
  }
  double worst_sym = 0.0;
  for (int a = 0; a <= 12; ++a)
    for (int b = 0; b <= a; ++b) {
      const double lhs = grassmann_volume(a, b);
      const double rhs = grassmann_volume(a, a - b);
      worst_sym = std::max(worst_sym, std::abs(lhs - rhs) / rhs);
    }
  rep.add(make_check("grassmann_volume_symmetry_a_le_12", worst_sym, 0.0, tol));
}

void suite_parseval(const SuiteConfig& cfg, VerificationReport& rep) {
  const double tol = pick_tol(cfg, 1e-6);
  std::vector<int> ns = cfg.n_list.empty() ? std::vector<int>{3, 4, 5} : cfg.n_list;
  const int L = cfg.L;
  RngStream rng(cfg.seed, 0x9A25E);
  for (const int n : ns) {
    HarmonicAnalyzer an(n, L);
    const std::vector<double> ps = {1.0, 1.5, 0.5 * n};
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const EvenFunction f = an.synthesize(random_spectrum(n, L, rng));
      const EvenFunction g = an.synthesize(random_spectrum(n, L, rng));
      const double p = ps[trial % ps.size()];
      worst = std::max(worst, parseval_residual(f, g, p, an));
    }
    rep.add(make_check("spherical_parseval_n" + std::to_string(n), worst, 0.0, tol));
  }
}

void suite_wedge(const SuiteConfig& cfg, VerificationReport& rep) {
  const double tol = pick_tol(cfg, 1e-4);
  std::vector<int> ns = cfg.n_list.empty() ? std::vector<int>{3, 4, 5} : cfg.n_list;
  std::vector<int> ks = cfg.k_list.empty() ? std::vector<int>{1, 2} : cfg.k_list;
  RngStream rng(cfg.seed, 0x3ED6E);
  for (const int n : ns) {
    HarmonicAnalyzer an(n, cfg.L);
    for (const int k : ks) {
      if (k > n - 1) continue;
      double worst = 0.0;
      for (int trial = 0; trial < 20; ++trial) {
        const EvenSpectrum s = random_spectrum(n, cfg.L, rng);
        const Subspace h = haar_subspace(n, n - k, rng);
        worst = std::max(worst, wedge_radon_residual(s, k, h, an));
      }
      rep.add(make_check("wedge_identity_n" + std::to_string(n) + "_k" + std::to_string(k),
                         worst, 0.0, tol));
    }
  }
}

void suite_dualwedge(const SuiteConfig& cfg, VerificationReport& rep) {
  const double tol = pick_tol(cfg, 3.0);
  std::vector<std::pair<int, int>> pairs;
  if (!cfg.n_list.empty() && !cfg.k_list.empty()) {
    for (const int n : cfg.n_list)
      for (const int m : cfg.k_list)
        if (m >= 1 && m <= n - 1) pairs.emplace_back(n, m);
  } else {
    pairs = {{4, 1}, {4, 2}, {5, 2}};
  }
  RngStream rng(cfg.seed, 0xD0A1);
  for (const auto& [n, m] : pairs) {
    HarmonicAnalyzer an(n, cfg.L);
    const Eigen::VectorXd u = seeded_direction(n, rng);
    GrassmannFunction g{n, n - m, [u](const Subspace& e) {
                          const double t = e.project(u).squaredNorm();
                          return 1.0 + t + 0.5 * t * t;
                        }};
    Eigen::MatrixXd dirs(8, n);
    for (int r = 0; r < dirs.rows(); ++r) dirs.row(r) = seeded_direction(n, rng).transpose();
    const DualWedgeResult res = dual_wedge_residual(g, m, dirs, cfg.samples, rng, an);
    CheckRecord rec;
    rec.name = "dual_wedge_n" + std::to_string(n) + "_m" + std::to_string(m);
    rec.estimate = res.max_z;
    rec.standard_error = 1.0;
    rec.tolerance = tol;
    rec.verdict = res.inconclusive ? Verdict::inconclusive
                                   : (res.max_z < tol ? Verdict::pass : Verdict::fail);
    rep.add(std::move(rec));
  }
}

void suite_vk(const SuiteConfig& cfg, VerificationReport& rep) {
  const double tol = pick_tol(cfg, 3.0);
  std::vector<int> ns = cfg.n_list.empty() ? std::vector<int>{4, 5} : cfg.n_list;
  std::vector<int> ks = cfg.k_list.empty() ? std::vector<int>{1, 2} : cfg.k_list;
  RngStream rng(cfg.seed, 0x7C);
  for (const int n : ns) {
    for (const int k : ks) {
      if (k > n - 1) continue;
      const Eigen::VectorXd u = seeded_direction(n, rng);
      const Eigen::VectorXd v = seeded_direction(n, rng);
      GrassmannFunction f{n, k, [u](const Subspace& e) {
                            const double t = e.project(u).squaredNorm();
                            return 1.0 + 2.0 * t;
                          }};
      GrassmannFunction g{n, k, [v](const Subspace& e) {
                            const double t = e.project(v).squaredNorm();
                            return 1.0 - t + t * t;
                          }};
      // <V_k f, g> vs <f, V_k g> over Haar outer atoms
      const int outer = 200;
      const long inner = std::max<long>(16, cfg.samples / (2 * outer));
      Eigen::VectorXd tvals(outer), uvals(outer);
      for (int i = 0; i < outer; ++i) {
        const Subspace e1 = haar_subspace(n, k, rng);
        const Subspace e2 = haar_subspace(n, k, rng);
        tvals(i) = v_apply(k, f, e1, inner, rng).value * g.fn(e1);
        uvals(i) = f.fn(e2) * v_apply(k, g, e2, inner, rng).value;
      }
      const double dt = tvals.mean() - uvals.mean();
      const double se = std::sqrt((tvals.array() - tvals.mean()).square().sum() / (outer - 1) / outer +
                                  (uvals.array() - uvals.mean()).square().sum() / (outer - 1) / outer);
      CheckRecord rec;
      rec.name = "vk_self_adjoint_n" + std::to_string(n) + "_k" + std::to_string(k);
      rec.estimate = std::abs(dt) / (se + 1e-300);
      rec.standard_error = 1.0;
      rec.tolerance = tol;
      rec.verdict = rec.estimate < tol ? Verdict::pass : Verdict::fail;
      rep.add(std::move(rec));

      // V_{n-k} = I o V_k o I at sampled subspaces
      GrassmannFunction gnk{n, n - k, [u](const Subspace& e) {
                              const double t = e.project(u).squaredNorm();
                              return 1.0 + t;
                            }};
      const GrassmannFunction gk = perp_transport(gnk);  // on G(n,k)
      double worst_z = 0.0;
      const long per = std::max<long>(64, cfg.samples / 40);
      for (int i = 0; i < 20; ++i) {
        const Subspace e = haar_subspace(n, n - k, rng);
        const McEstimate lhs = v_apply(n - k, gnk, e, per, rng);
        const McEstimate rhs = v_apply(k, gk, perp(e), per, rng);
        const double se2 = std::hypot(lhs.std_error, rhs.std_error);
        worst_z = std::max(worst_z, std::abs(lhs.value - rhs.value) / (se2 + 1e-300));
      }
      CheckRecord rec2;
      rec2.name = "vk_involution_n" + std::to_string(n) + "_k" + std::to_string(k);
      rec2.estimate = worst_z;
      rec2.standard_error = 1.0;
      rec2.tolerance = tol;
      rec2.verdict = worst_z < tol ? Verdict::pass : Verdict::fail;
      rep.add(std::move(rec2));
    }
  }
}

void suite_petkantschin(const SuiteConfig& cfg, VerificationReport& rep) {
  const double tol = pick_tol(cfg, 3.0);
  struct Layout {
    int n, d;
    std::vector<int> ks;
  };
  const std::vector<Layout> layouts = {
      {3, 0, {1, 1}}, {4, 0, {1, 1}}, {4, 1, {1, 1}}, {5, 0, {1, 2}}, {5, 1, {1, 1, 1}}};
  for (std::size_t li = 0; li < layouts.size(); ++li) {
    const auto& lay = layouts[li];
    Eigen::MatrixXd pole_frame(lay.n, lay.d);
    for (int c = 0; c < lay.d; ++c) pole_frame.col(c) = Eigen::VectorXd::Unit(lay.n, c);
    Eigen::VectorXd u = Eigen::VectorXd::LinSpaced(lay.n, 1.0, lay.n).normalized();

    for (const bool product : {false, true}) {
      PetkantschinConfig pc;
      pc.ambient_dim = lay.n;
      pc.pole = Subspace(lay.n, pole_frame);
      pc.codims = lay.ks;
      pc.samples = cfg.samples;
      pc.batches = 100;
      pc.seed = cfg.seed + 13 * li + (product ? 7 : 0);
      if (product) {
        pc.integrand = [u](const std::vector<Subspace>& es) {
          double acc = 1.0;
          for (const auto& e : es) acc *= 1.0 + e.project(u).squaredNorm();
          return acc;
        };
      } else {
        pc.integrand = [](const std::vector<Subspace>&) { return 1.0; };
      }
      const PetkCheck chk = verify(pc);
      std::string name = "petkantschin_n" + std::to_string(lay.n) + "_d" + std::to_string(lay.d) +
                         "_k";
      for (const int k : lay.ks) name += std::to_string(k);
      name += product ? "_product" : "_const";
      CheckRecord rec;
      rec.name = name;
      rec.estimate = chk.z;
      rec.standard_error = 1.0;
      rec.tolerance = tol;
      rec.verdict = chk.z < tol ? Verdict::pass : Verdict::fail;
      rep.add(std::move(rec));
    }
  }
}

void suite_membership(const SuiteConfig& cfg, VerificationReport& rep) {
  std::vector<int> ks = cfg.k_list.empty() ? std::vector<int>{1, 2} : cfg.k_list;
  const int n = cfg.n_list.empty() ? 5 : cfg.n_list.front();
  const int L = cfg.L;
  HarmonicAnalyzer an(n, L, 2 * L, L / 2);
  RngStream rng(cfg.seed, 0x3E3B);
  for (const int k : ks) {
    if (k > n - 1) continue;
    IkOptions opt;
    opt.analyzer = &an;
    opt.seed = cfg.seed;
    const MembershipVerdict ball = i_k_test(StarBody::ball(n), k, L, opt);
    const double err = std::abs(ball.margin - c_constant(n, k)) / c_constant(n, k);
    CheckRecord rec;
    rec.name = "ball_margin_n" + std::to_string(n) + "_k" + std::to_string(k);
    rec.estimate = err;
    rec.tolerance = pick_tol(cfg, 1e-12);
    rec.verdict = (ball.verdict == Membership::positive && err <= rec.tolerance)
                      ? Verdict::pass
                      : Verdict::fail;
    rep.add(std::move(rec));

    const int bodies = cfg.deep ? 50 : 10;
    int positives = 0;
    for (int i = 0; i < bodies; ++i) {
      RngStream brng = rng.substream(100 * k + i);
      const StarBody body = bp_sample(n, k, 2 + static_cast<int>(brng.next_u64() % 3), brng);
      if (i_k_test(body, k, L, opt).verdict == Membership::positive) ++positives;
    }
    CheckRecord rec2;
    rec2.name = "bp_sample_positive_n" + std::to_string(n) + "_k" + std::to_string(k);
    rec2.estimate = bodies - positives;
    rec2.tolerance = 0.0;
    rec2.verdict = positives == bodies ? Verdict::pass : Verdict::fail;
    rep.add(std::move(rec2));
  }

  if (cfg.deep) {
    const int wl = std::max(L, 14);
    const MembershipVerdict cube = i_k_test(StarBody::lp_ball(5, std::numeric_limits<double>::infinity()),
                                            1, wl, IkOptions{.seed = cfg.seed});
    CheckRecord rec;
    rec.name = "linf_ball_R5_k1_certified_negative";
    rec.estimate = cube.margin;
    rec.tolerance = -cube.truncation_bound;
    rec.verdict = cube.verdict == Membership::negative ? Verdict::pass
                  : cube.verdict == Membership::inconclusive ? Verdict::inconclusive
                                                             : Verdict::fail;
    rep.add(std::move(rec));
  }
}

void suite_structure(const SuiteConfig& cfg, VerificationReport& rep) {
  const int n = cfg.n_list.empty() ? 5 : cfg.n_list.front();
  const int L = cfg.L;
  RngStream rng(cfg.seed, 0x57A);
  HarmonicAnalyzer an(n, L, 2 * L, L / 2);
  IkOptions opt;
  opt.analyzer = &an;
  opt.seed = cfg.seed;

  const int trials = cfg.deep ? 10 : 3;
  int product_pass = 0;
  for (int i = 0; i < trials; ++i) {
    const StarBody e1 = bp_sample(n, 1, 1, rng);
    const StarBody e2 = bp_sample(n, 1, 1, rng);
    const VerificationReport sub = structure_product_check(e1, 1, e2, 1, L, opt);
    if (sub.all_pass()) ++product_pass;
  }
  CheckRecord rec;
  rec.name = "ellipsoid_product_i2";
  rec.estimate = trials - product_pass;
  rec.tolerance = 0.0;
  rec.verdict = product_pass == trials ? Verdict::pass : Verdict::fail;
  rep.add(std::move(rec));

  // SL(n) invariance of verdicts on the ellipsoid corpus
  int sl_pass = 0;
  for (int i = 0; i < trials; ++i) {
    const StarBody body = bp_sample(n, 1, 1, rng);
    Eigen::MatrixXd t = haar_rotation(n, rng);
    Eigen::VectorXd scales(n);
    for (int j = 0; j < n; ++j) scales(j) = std::exp(0.4 * (rng.uniform() - 0.5));
    scales /= std::pow(scales.prod(), 1.0 / n);  // det 1
    t = t * scales.asDiagonal();
    const MembershipVerdict before = i_k_test(body, 1, L, opt);
    const MembershipVerdict after = i_k_test(linear_image(body, t), 1, L, opt);
    if (before.verdict == after.verdict) ++sl_pass;
  }
  CheckRecord rec2;
  rec2.name = "sl_invariance_verdicts";
  rec2.estimate = trials - sl_pass;
  rec2.tolerance = 0.0;
  rec2.verdict = sl_pass == trials ? Verdict::pass : Verdict::fail;
  rep.add(std::move(rec2));

  // central sections (m > l) stay in the class, in dimension m
  const int m = n - 1;
  HarmonicAnalyzer an_m(m, L, 2 * L, L / 2);
  IkOptions opt_m;
  opt_m.analyzer = &an_m;
  opt_m.seed = cfg.seed;
  int section_pass = 0;
  for (int i = 0; i < trials; ++i) {
    const StarBody e1 = bp_sample(n, 1, 1, rng);
    const StarBody e2 = bp_sample(n, 1, 1, rng);
    const StarBody product = radial_product_power(e1, 1, e2, 1);
    const Subspace h = haar_subspace(n, m, rng);
    const MembershipVerdict v = i_k_test(central_section(product, h), 2, L, opt_m);
    if (v.verdict == Membership::positive) ++section_pass;
  }
  CheckRecord rec3;
  rec3.name = "central_section_i2_dim" + std::to_string(m);
  rec3.estimate = trials - section_pass;
  rec3.tolerance = 0.0;
  rec3.verdict = section_pass == trials ? Verdict::pass : Verdict::fail;
  rep.add(std::move(rec3));
}

}  // namespace

VerificationReport run_suite(const SuiteConfig& cfg) {
  VerificationReport rep;
  rep.suite = cfg.suite;
  rep.seed = cfg.seed;
  rep.artifact_version = IGEOM_VERSION;
  rep.parameters.emplace_back("L", std::to_string(cfg.L));
  rep.parameters.emplace_back("samples", std::to_string(cfg.samples));
  rep.parameters.emplace_back("seed", std::to_string(cfg.seed));

  if (cfg.suite == "constants") suite_constants(cfg, rep);
  else if (cfg.suite == "parseval") suite_parseval(cfg, rep);
  else if (cfg.suite == "wedge") suite_wedge(cfg, rep);
  else if (cfg.suite == "dualwedge") suite_dualwedge(cfg, rep);
  else if (cfg.suite == "vk") suite_vk(cfg, rep);
  else if (cfg.suite == "petkantschin") suite_petkantschin(cfg, rep);
  else if (cfg.suite == "membership") suite_membership(cfg, rep);
  else if (cfg.suite == "structure") suite_structure(cfg, rep);
  else throw std::invalid_argument("unknown suite: " + cfg.suite);
  return rep;
}

}  // namespace ig
