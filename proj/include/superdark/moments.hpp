#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "superdark/errors.hpp"
#include "superdark/sym_matrix.hpp"

namespace superdark {

// Unit vector C annihilating all power moments sum_j s_j^n C_j for
// n = 0 .. N-2: the maximal number of linear constraints a unit vector of
// length N can satisfy. Coordinates are rescaled to [0, 1] first, which
// keeps the solve well conditioned up to N ~ 12.
//
// The nullspace of the (N-1) x N moment matrix is one-dimensional for
// pairwise distinct coordinates and is written down directly from the
// Lagrange basis: C_j proportional to 1 / prod_{m != j} (s_j - s_m),
// i.e. the leading interpolation coefficients, which vanish when summed
// against any polynomial of degree < N-1.
inline std::vector<double> solve_moment_constraints(
    const std::vector<double>& positions) {
  const std::size_t n = positions.size();
  if (n < 2)
    throw usage_error("solve_moment_constraints: need at least 2 positions");

  double lo = positions[0], hi = positions[0];
  for (double p : positions) {
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  const double extent = hi - lo;
  if (extent <= 0.0)
    throw singular_error("solve_moment_constraints: coincident positions");

  std::vector<double> s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = (positions[j] - lo) / extent;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::fabs(s[i] - s[j]) < 1e-14)
        throw singular_error(
            "solve_moment_constraints: duplicate positions make the system "
            "singular");

  std::vector<double> c(n);
  for (std::size_t j = 0; j < n; ++j) {
    double prod = 1.0;
    for (std::size_t m = 0; m < n; ++m)
      if (m != j) prod *= s[j] - s[m];
    c[j] = 1.0 / prod;
  }

  double norm = 0.0;
  for (double v : c) norm += v * v;
  norm = std::sqrt(norm);
  for (double& v : c) v /= norm;
  detail::fix_sign(c);
  return c;
}

}  // namespace superdark
