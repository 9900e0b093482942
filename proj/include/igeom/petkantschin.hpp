#pragma once

#include <functional>
#include <vector>

#include "igeom/geometry.hpp"
#include "igeom/radon.hpp"
#include "igeom/report.hpp"
#include "igeom/rng.hpp"

namespace ig {

/// Configuration for the product-Grassmannian integration identity:
/// E_i Haar in G_D(n, n-k_i) against the fibered sampling through a common
/// F in G_D(n, n-l), l = sum k_i, weighted by C * Omega^{n-d-l}.
struct PetkantschinConfig {
  int ambient_dim = 0;
  Subspace pole = Subspace::zero(1);  // D, dim d >= 0
  std::vector<int> codims;            // k_i >= 1, sum l <= n - d
  std::function<double(const std::vector<Subspace>&)> integrand;
  long samples = 100000;
  int batches = 100;
  std::uint64_t seed = 0;
};

void validate(const PetkantschinConfig& cfg);

/// Closed form C_{n,{k_i},l,d} as a quotient of Grassmannian volumes.
double delta_constant(int n, const std::vector<int>& k_list, int l, int d);

McEstimate lhs_estimate(const PetkantschinConfig& cfg);
McEstimate rhs_estimate(const PetkantschinConfig& cfg);

struct PetkCheck {
  McEstimate lhs;
  McEstimate rhs;
  double z = 0.0;
  bool pass = false;  // z < 3
};

PetkCheck verify(const PetkantschinConfig& cfg);

}  // namespace ig
