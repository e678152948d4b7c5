#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "superdark/errors.hpp"

namespace superdark {

namespace detail {

// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
// three-term recurrence. Symmetric pairs are filled from one half.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(
    int n) {
  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    w[n - 1 - i] = w[i];
  }
  return {x, w};
}

}  // namespace detail

// Product rule on the unit sphere: Gauss-Legendre in cos(theta) crossed
// with a uniform (trapezoidal) grid in phi. Exact for the low-degree
// polynomial angular factors that appear in emission integrals, and
// converges superexponentially for e^{i xi cos(theta)} phases.
struct SphereQuadrature {
  struct Node {
    double theta;
    double phi;
    double weight;
  };

  std::vector<Node> nodes;
  int n_theta = 0;
  int n_phi = 0;

  double weight_sum() const {
    double s = 0.0;
    for (const auto& n : nodes) s += n.weight;
    return s;
  }
};

inline SphereQuadrature sphere_quadrature(int n_theta = 64, int n_phi = 64) {
  if (n_theta < 2 || n_phi < 2)
    throw usage_error("sphere_quadrature: need n_theta >= 2 and n_phi >= 2");

  auto [u, wu] = detail::gauss_legendre(n_theta);
  SphereQuadrature q;
  q.n_theta = n_theta;
  q.n_phi = n_phi;
  q.nodes.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  const double wphi = 2.0 * std::numbers::pi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(u[i]);
    for (int k = 0; k < n_phi; ++k) {
      const double phi = wphi * k;
      q.nodes.push_back({theta, phi, wu[i] * wphi});
    }
  }
  return q;
}

// Integrate f(theta, phi) over the full solid angle.
template <class F>
double integrate_sphere(const SphereQuadrature& q, F&& f) {
  double s = 0.0;
  for (const auto& n : q.nodes) s += n.weight * f(n.theta, n.phi);
  return s;
}

}  // namespace superdark
