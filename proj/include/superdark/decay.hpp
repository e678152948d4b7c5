#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "superdark/ddouble.hpp"
#include "superdark/errors.hpp"
#include "superdark/exciton.hpp"
#include "superdark/geometry.hpp"
#include "superdark/quadrature.hpp"
#include "superdark/sym_matrix.hpp"

namespace superdark {

namespace detail {

// Far-field interference kernels for a collinear pair at dimensionless
// separation xi, normalized to 1 at xi -> 0:
//
//   parallel:       3 (sin xi - xi cos xi) / xi^3
//   perpendicular:  (3/2) (xi cos xi + (xi^2 - 1) sin xi) / xi^3
//
// Evaluated in double-double. Below xi = 4 the alternating power series is
// used: the closed forms cancel catastrophically there (the parallel
// numerator is O(xi^3) built from O(xi) terms), and the series keeps full
// dd accuracy, which the deepest subradiant rates actually need. Above
// xi = 4 the trigonometric form is assembled in dd from double sin/cos;
// the absolute error ~1e-16 is harmless at those separations because the
// associated rates are large.
inline ddouble decay_kernel_parallel_dd(double xi) {
  if (xi < 4.0) {
    const ddouble xi2 = dd_product(xi, xi);
    ddouble term(1.0);
    ddouble sum(1.0);
    for (int m = 0; m < 80; ++m) {
      // a_{m+1} = -a_m xi^2 (m+2) / ((m+1)(2m+5)(2m+4))
      term = term * xi2 * static_cast<double>(m + 2);
      term = term / static_cast<double>(-(m + 1) * (2 * m + 5) * (2 * m + 4));
      sum = sum + term;
      if (std::fabs(term.hi) < 1e-35) break;
    }
    return sum;
  }
  const ddouble s(std::sin(xi));
  const ddouble c(std::cos(xi));
  const ddouble x(xi);
  const ddouble num = (s - x * c) * 3.0;
  const double xi3 = xi * xi * xi;
  return num / xi3;
}

inline ddouble decay_kernel_perpendicular_dd(double xi) {
  if (xi < 4.0) {
    const ddouble xi2 = dd_product(xi, xi);
    ddouble term(1.0);
    ddouble sum(1.0);
    for (int m = 0; m < 80; ++m) {
      // b_{m+1} = -b_m xi^2 (m+2)^2 / ((m+1)^2 (2m+5)(2m+4))
      term = term * xi2 * static_cast<double>((m + 2) * (m + 2));
      term = term / static_cast<double>(-(m + 1) * (m + 1) * (2 * m + 5) *
                                        (2 * m + 4));
      sum = sum + term;
      if (std::fabs(term.hi) < 1e-35) break;
    }
    return sum;
  }
  const ddouble s(std::sin(xi));
  const ddouble c(std::cos(xi));
  const ddouble x(xi);
  const ddouble num = (x * c + (x * x - ddouble(1.0)) * s) * 1.5;
  const double xi3 = xi * xi * xi;
  return num / xi3;
}

inline double decay_kernel_parallel(double xi) {
  return decay_kernel_parallel_dd(xi).value();
}

inline double decay_kernel_perpendicular(double xi) {
  return decay_kernel_perpendicular_dd(xi).value();
}

// sin(xi)/xi and (xi cos xi - sin xi)/xi^3, the two radial profiles of the
// tensor kernel. The second cancels badly for small xi, hence the series
// branch.
inline double sinc_profile(double xi) { return std::sin(xi) / xi; }

inline double radial_profile_b(double xi) {
  if (xi < 1.0) {
    // sum_{k>=1} (-1)^k 2k/(2k+1)! xi^(2k-2)
    double term = -1.0 / 3.0;
    double sum = term;
    const double xi2 = xi * xi;
    for (int k = 1; k < 20; ++k) {
      // ratio t_{k+1}/t_k = -xi^2 (k+1) / (k (2k+3)(2k+2))
      term *= -xi2 * (k + 1) / (static_cast<double>(k) * (2 * k + 3) *
                                (2 * k + 2));
      sum += term;
      if (std::fabs(term) < 1e-18) break;
    }
    return sum;
  }
  return (xi * std::cos(xi) - std::sin(xi)) / (xi * xi * xi);
}

// Cartesian component of the tensor decay kernel for unit separation
// direction rhat:
//   w_ab = (3/2) [ (delta_ab - r_a r_b) sin(xi)/xi
//                + (delta_ab - 3 r_a r_b) (xi cos xi - sin xi)/xi^3 ]
// It reduces to the parallel/perpendicular kernels for rhat along or
// orthogonal to the excitation axis, and to delta_ab at xi -> 0.
inline double decay_kernel_tensor(double xi, const double rhat[3],
                                  std::size_t a, std::size_t b) {
  const double delta = a == b ? 1.0 : 0.0;
  const double rr = rhat[a] * rhat[b];
  return 1.5 * ((delta - rr) * sinc_profile(xi) +
                (delta - 3.0 * rr) * radial_profile_b(xi));
}

}  // namespace detail

// Real symmetric decay matrix W: the decay rate of a unit exciton vector C
// is Gamma_N / Gamma = C^T W C. Diagonal entries are exactly 1 (single-atom
// normalization) and the matrix is positive semidefinite.
//
// Entries are kept both as doubles (matrix) and in double-double (precise),
// because quadratic forms of strongly subradiant states need the extra
// digits.
struct DecayMatrix {
  SymMatrix matrix;
  Polarization mode;
  std::vector<ddouble> precise;  // row-major, dim x dim

  const ddouble& precise_at(std::size_t i, std::size_t j) const {
    return precise[i * matrix.dim() + j];
  }
};

namespace detail {

inline void set_precise(DecayMatrix& w, std::size_t i, std::size_t j,
                        ddouble v) {
  const std::size_t n = w.matrix.dim();
  w.precise[i * n + j] = v;
  w.precise[j * n + i] = v;
  w.matrix.set(i, j, v.value());
}

inline DecayMatrix make_decay_matrix(std::size_t dim, Polarization mode) {
  DecayMatrix w{SymMatrix(dim), mode, std::vector<ddouble>(dim * dim)};
  for (std::size_t i = 0; i < dim; ++i) set_precise(w, i, i, ddouble(1.0));
  return w;
}

}  // namespace detail

// Closed-form W for a collinear array in a scalar polarization mode.
inline DecayMatrix decay_matrix_chain(const AtomArray& array) {
  if (!array.scalar_mode())
    throw usage_error("decay_matrix_chain: requires a scalar mode");

  const auto& t = array.axis_coordinates();
  const std::size_t n = t.size();
  const bool parallel = array.polarization() == Polarization::parallel;

  DecayMatrix w = detail::make_decay_matrix(n, array.polarization());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double xi = std::fabs(t[i] - t[j]);
      const ddouble v = parallel ? detail::decay_kernel_parallel_dd(xi)
                                 : detail::decay_kernel_perpendicular_dd(xi);
      detail::set_precise(w, i, j, v);
    }
  return w;
}

// Closed-form 3N x 3N W for an arbitrary array (vector mode). Same-atom
// blocks are the identity.
inline DecayMatrix decay_matrix_tensor(const AtomArray& array) {
  const std::size_t n = array.n_atoms();
  DecayMatrix w = detail::make_decay_matrix(3 * n, Polarization::vector3d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3 r = array.positions()[i] - array.positions()[j];
      const double xi = norm(r);
      const Vec3 nh = (1.0 / xi) * r;
      const double rhat[3] = {nh.x, nh.y, nh.z};
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
          detail::set_precise(
              w, 3 * i + a, 3 * j + b,
              ddouble(detail::decay_kernel_tensor(xi, rhat, a, b)));
    }
  return w;
}

// W by direct solid-angle integration of the emission amplitude, prefactor
// 3/(8 pi). This is the independent oracle the closed forms are validated
// against; it works in every mode.
inline DecayMatrix decay_matrix_quadrature(const AtomArray& array,
                                           const SphereQuadrature& quad) {
  const double pre = 3.0 / (8.0 * std::numbers::pi);

  DecayMatrix w = detail::make_decay_matrix(
      array.scalar_mode() ? array.n_atoms() : 3 * array.n_atoms(),
      array.polarization());
  const std::size_t dim = w.matrix.dim();
  std::vector<double> acc(dim * dim, 0.0);

  if (array.scalar_mode()) {
    const auto& t = array.axis_coordinates();
    const bool parallel = array.polarization() == Polarization::parallel;
    for (const auto& node : quad.nodes) {
      const double u = std::cos(node.theta);
      const double sin2 = 1.0 - u * u;
      const double cphi = std::cos(node.phi);
      // Angular weight 1 - (k_hat . d_hat)^2 for the excitation axis.
      const double f = parallel ? sin2 : 1.0 - sin2 * cphi * cphi;
      for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i; j < t.size(); ++j)
          acc[i * dim + j] += node.weight * f * std::cos((t[i] - t[j]) * u);
    }
  } else {
    const auto& pos = array.positions();
    for (const auto& node : quad.nodes) {
      const double st = std::sin(node.theta);
      const double k[3] = {st * std::cos(node.phi), st * std::sin(node.phi),
                           std::cos(node.theta)};
      for (std::size_t i = 0; i < pos.size(); ++i)
        for (std::size_t j = i; j < pos.size(); ++j) {
          const Vec3 r = pos[i] - pos[j];
          const double phase = k[0] * r.x + k[1] * r.y + k[2] * r.z;
          const double cph = std::cos(phase);  // the odd part integrates out
          for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) {
              const double delta = a == b ? 1.0 : 0.0;
              acc[(3 * i + a) * dim + (3 * j + b)] +=
                  node.weight * (delta - k[a] * k[b]) * cph;
            }
        }
    }
  }

  for (std::size_t i = 0; i < dim; ++i) {
    const double diag = pre * acc[i * dim + i];
    if (std::fabs(diag - 1.0) > 1e-8)
      throw accuracy_error(
          "decay_matrix_quadrature: node count too small, diagonal deviates "
          "from 1");
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      detail::set_precise(w, i, j, ddouble(pre * acc[i * dim + j]));
  return w;
}

// Gamma_N / Gamma = C^T W C, accumulated in double-double. Values inside
// [-1e-10, 0] are clipped to zero; anything more negative means W is not a
// valid decay matrix.
inline double decay_rate(const DecayMatrix& w, const ExcitonVector& c) {
  const std::size_t n = w.matrix.dim();
  if (c.size() != n)
    throw usage_error("decay_rate: vector and matrix dimensions differ");
  if (std::fabs(c.norm() - 1.0) > 1e-9)
    throw usage_error("decay_rate: exciton vector is not unit norm");

  ddouble sum(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    sum = sum + dd_product(c.coefficients[i], c.coefficients[i]) *
                    w.precise_at(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const ddouble cc = dd_product(c.coefficients[i], c.coefficients[j]);
      sum = sum + (cc * w.precise_at(i, j)) * 2.0;
    }
  }
  const double rate = sum.value();
  if (rate < 0.0) {
    if (rate < -1e-10)
      throw accuracy_error("decay_rate: quadratic form is negative beyond "
                           "tolerance; W is not positive semidefinite");
    return 0.0;
  }
  return rate;
}

}  // namespace superdark
