#pragma once

#include <Eigen/Dense>

#include "igeom/harmonics.hpp"

namespace ig {

/// c(n,p) = pi^{n/2} 2^{n-p} Gamma((n-p)/2) / Gamma(p/2), 0 < p < n.
/// Satisfies c(n,p) c(n,n-p) = (2 pi)^n.
double c_constant(int n, double p);

/// Eigenvalue of E_{-p}^ on H_k (k even):
/// (-1)^{k/2} pi^{n/2} 2^{n-p} Gamma((k+n-p)/2) / Gamma((k+p)/2).
/// multiplier(n,p,0) == c_constant(n,p).
double multiplier(int n, double p, int k);

struct MultiplierTable {
  int ambient_dim = 0;
  double degree_p = 0.0;
  Eigen::VectorXd values;  // index k/2, even k up to 2*(size-1)

  double at(int k) const { return values(k / 2); }
};

MultiplierTable make_multiplier_table(int n, double p, int L);

/// Blockwise action of E_{-p}^ on a band-limited spectrum.
EvenSpectrum fourier_extend(const EvenSpectrum& s, double p);

/// |<E_{-p}^ f, E_{-n+p}^ g> - (2pi)^n <f,g>| / ((2pi)^n |<f,g>| + eps),
/// all pairings by quadrature on the analyzer's rule.
double parseval_residual(const EvenFunction& f, const EvenFunction& g, double p,
                         const HarmonicAnalyzer& an);

}  // namespace ig
