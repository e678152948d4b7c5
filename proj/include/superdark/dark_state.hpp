#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "superdark/decay.hpp"
#include "superdark/errors.hpp"
#include "superdark/exciton.hpp"
#include "superdark/geometry.hpp"
#include "superdark/moments.hpp"
#include "superdark/sym_matrix.hpp"

namespace superdark {

struct DarkestResult {
  ExcitonVector state;
  double rate = 0.0;  // smallest eigenvalue of W = minimal Gamma_N/Gamma
};

// Global minimizer of the decay quadratic form over all unit vectors: the
// eigenvector of W with the smallest eigenvalue. No Hamiltonian enters
// here; whether this state is actually stationary is the tuning problem.
inline DarkestResult darkest_eigenvector(const DecayMatrix& w) {
  const EigenDecomposition eig = eigh_symmetric(w.matrix);
  double rate = eig.values.front();
  if (rate < 0.0 && rate >= -1e-10) rate = 0.0;
  return {ExcitonVector(eig.vectors.front(), w.mode), rate};
}

// Optimal scalar-mode state of a collinear array: the unit vector whose
// power moments about the rescaled positions all vanish up to order N-2,
// so the emission amplitude expansion starts at order (kr)^(N-1).
inline ExcitonVector moment_dark_state(const AtomArray& array) {
  if (!array.scalar_mode())
    throw usage_error(
        "moment_dark_state: defined for scalar chain modes; use "
        "darkest_eigenvector for generic arrays");
  return ExcitonVector(solve_moment_constraints(array.axis_coordinates()),
                       array.polarization());
}

// Closed-form optimal state of the equally spaced chain: alternating
// binomial coefficients,
//   C_j = (-1)^(j-1) binom(N-1, j-1) / sqrt(binom(2N-2, N-1)),
// computed in the log domain so every N up to 16 is exact to double
// precision. Satisfies C_j = (-1)^(N-1) C_(N-j+1) exactly.
inline ExcitonVector binomial_dark_state(
    int n, Polarization mode = Polarization::perpendicular) {
  if (n < 2 || n > 16)
    throw usage_error("binomial_dark_state: supported range is 2 <= N <= 16");
  if (mode == Polarization::vector3d)
    throw usage_error("binomial_dark_state: scalar modes only");

  std::vector<double> c(n);
  for (int j = 1; j <= n; ++j) {
    // The two lgamma terms are grouped so mirrored entries run through
    // bit-identical arithmetic and the j -> N-j+1 symmetry holds exactly.
    const double log_mag = 2.0 * std::lgamma(n) -
                           (std::lgamma(j) + std::lgamma(n - j + 1)) -
                           0.5 * std::lgamma(2.0 * n - 1.0);
    c[j - 1] = (j % 2 == 1 ? 1.0 : -1.0) * std::exp(log_mag);
  }
  return ExcitonVector(std::move(c), mode);
}

// Leading small-spacing decay rate of the binomial state of an equally
// spaced chain:
//   Gamma_N / Gamma = 3/(4N^2-1) * ((N-1)!)^2/(2N-2)! * (ka)^(2(N-1))
// times N for perpendicular excitation, times 1 for parallel.
inline double asymptotic_rate(int n, double ka, Polarization pol) {
  if (pol == Polarization::vector3d)
    throw usage_error("asymptotic_rate: scalar modes only");
  if (n < 2) throw usage_error("asymptotic_rate: need N >= 2");
  if (!(ka > 0.0)) throw usage_error("asymptotic_rate: need ka > 0");

  const double log_fact_ratio =
      2.0 * std::lgamma(n) - std::lgamma(2.0 * n - 1.0);
  const double pol_factor = pol == Polarization::perpendicular ? n : 1.0;
  return 3.0 / (4.0 * n * n - 1.0) * std::exp(log_fact_ratio) *
         std::pow(ka, 2.0 * (n - 1)) * pol_factor;
}

}  // namespace superdark
