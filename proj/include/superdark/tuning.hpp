#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "superdark/coupling.hpp"
#include "superdark/errors.hpp"
#include "superdark/exciton.hpp"
#include "superdark/sym_matrix.hpp"

namespace superdark {

// Per-atom transition-frequency shifts (units d^2 k^3) that make a target
// vector an exact eigenstate, in the zero-sum gauge, plus the resulting
// eigenenergy.
struct TuningResult {
  std::vector<double> shifts;
  double eigenenergy = 0.0;
  ExcitonVector target;

  // Same shifts referenced to the first atom (edge gauge); the scan
  // parameter Omega is shifts relative to the chain edges.
  std::vector<double> edge_referenced() const {
    std::vector<double> out(shifts);
    const double ref = out.empty() ? 0.0 : out.front();
    for (double& v : out) v -= ref;
    return out;
  }
};

struct TunedHamiltonian {
  SymMatrix matrix;  // diag(shifts) + U
  Polarization mode;
};

// Solve for the unique zero-sum shifts making c an eigenvector of
// diag(omega) + U:
//   E       = (1/N) sum_j (U c)_j / c_j
//   omega_j = E - (U c)_j / c_j
// Every component of c must be nonzero, since the solve divides by it.
inline TuningResult tune_frequencies(const CouplingMatrix& u,
                                     const ExcitonVector& c) {
  if (u.mode == Polarization::vector3d)
    throw usage_error(
        "tune_frequencies: scalar modes only; vector-mode tuning would need "
        "three independent shifts per atom");
  const std::size_t n = u.matrix.dim();
  if (c.size() != n)
    throw usage_error("tune_frequencies: dimension mismatch");
  for (double cj : c.coefficients)
    if (std::fabs(cj) <= 1e-9)
      throw usage_error(
          "tune_frequencies: target has a (near-)zero component, shifts are "
          "undefined");

  const std::vector<double> uc = u.matrix.multiply(c.coefficients);
  std::vector<double> g(n);
  double e = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    g[j] = uc[j] / c.coefficients[j];
    e += g[j];
  }
  e /= static_cast<double>(n);

  TuningResult out;
  out.eigenenergy = e;
  out.target = c;
  out.shifts.resize(n);
  double mean = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    out.shifts[j] = e - g[j];
    mean += out.shifts[j];
  }
  // Pin the zero-sum gauge exactly.
  mean /= static_cast<double>(n);
  for (double& v : out.shifts) v -= mean;
  return out;
}

inline TunedHamiltonian build_hamiltonian(const CouplingMatrix& u,
                                          const std::vector<double>& shifts) {
  const std::size_t n = u.matrix.dim();
  if (shifts.size() != n)
    throw usage_error("build_hamiltonian: dimension mismatch");
  SymMatrix h = u.matrix;
  for (std::size_t j = 0; j < n; ++j) h.add(j, j, shifts[j]);
  return {std::move(h), u.mode};
}

// Infinity norm of H c - (c^T H c) c: zero exactly when c is an eigenvector.
inline double verify_eigenstate(const TunedHamiltonian& h,
                                const ExcitonVector& c) {
  const std::size_t n = h.matrix.dim();
  if (c.size() != n)
    throw usage_error("verify_eigenstate: dimension mismatch");

  const std::vector<double> hc = h.matrix.multiply(c.coefficients);
  double rayleigh = 0.0;
  for (std::size_t j = 0; j < n; ++j) rayleigh += c.coefficients[j] * hc[j];

  double residual = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    residual =
        std::max(residual, std::fabs(hc[j] - rayleigh * c.coefficients[j]));
  return residual;
}

}  // namespace superdark
