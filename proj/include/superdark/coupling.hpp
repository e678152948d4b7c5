#pragma once

#include <cstddef>
#include <vector>

#include "superdark/errors.hpp"
#include "superdark/geometry.hpp"
#include "superdark/sym_matrix.hpp"

namespace superdark {

// Static excitation-transfer matrix between atoms, in units of d^2 k^3.
// The interaction is the near-zone 1/R^3 dipole-dipole term only; no
// radiative corrections are added, so values at separations ka >~ 1 are a
// model choice, not an approximation artifact.
struct CouplingMatrix {
  SymMatrix matrix;
  Polarization mode;
};

// Scalar chain couplings: -2/xi^3 for excitation parallel to the chain,
// +1/xi^3 perpendicular, xi the dimensionless separation. Zero diagonal.
inline CouplingMatrix coupling_chain(const AtomArray& array) {
  if (!array.scalar_mode())
    throw usage_error("coupling_chain: requires parallel or perpendicular mode");

  const auto& t = array.axis_coordinates();
  const std::size_t n = t.size();
  const double prefactor =
      array.polarization() == Polarization::parallel ? -2.0 : 1.0;

  SymMatrix u(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double xi = std::fabs(t[i] - t[j]);
      u.set(i, j, prefactor / (xi * xi * xi));
    }
  return {std::move(u), array.polarization()};
}

// Full 3N x 3N tensor couplings (delta_ab - 3 n_a n_b)/xi^3 per atom pair,
// n the unit separation vector. Diagonal (same-atom) blocks vanish.
inline CouplingMatrix coupling_tensor(const AtomArray& array) {
  const std::size_t n = array.n_atoms();
  SymMatrix u(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3 r = array.positions()[i] - array.positions()[j];
      const double xi = norm(r);
      const double inv3 = 1.0 / (xi * xi * xi);
      const Vec3 nh = (1.0 / xi) * r;
      const double nc[3] = {nh.x, nh.y, nh.z};
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
          const double delta = a == b ? 1.0 : 0.0;
          u.set(3 * i + a, 3 * j + b, (delta - 3.0 * nc[a] * nc[b]) * inv3);
        }
    }
  }
  return {std::move(u), Polarization::vector3d};
}

// Signed nearest-neighbour coupling of an equally spaced scalar chain:
// +1/(ka)^3 perpendicular, -2/(ka)^3 parallel. This is the unit the scan
// parameter Omega/U is expressed in.
inline double nearest_neighbour_coupling(const AtomArray& array) {
  if (!array.scalar_mode())
    throw usage_error("nearest_neighbour_coupling: requires a scalar mode");
  const double a = chain_spacing(array);
  const double pre =
      array.polarization() == Polarization::parallel ? -2.0 : 1.0;
  return pre / (a * a * a);
}

}  // namespace superdark
