#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "superdark/errors.hpp"
#include "superdark/geometry.hpp"

namespace superdark {

// Real coefficient vector of a singly excited collective state: length N in
// a scalar mode, length 3N (atom-major, x/y/z within each atom) in vector
// mode. Stored unit-normalized.
struct ExcitonVector {
  std::vector<double> coefficients;
  Polarization mode = Polarization::perpendicular;

  ExcitonVector() = default;

  ExcitonVector(std::vector<double> coeffs, Polarization m)
      : coefficients(std::move(coeffs)), mode(m) {
    double n2 = 0.0;
    for (double c : coefficients) {
      if (!std::isfinite(c))
        throw usage_error("ExcitonVector: non-finite coefficient");
      n2 += c * c;
    }
    if (!(n2 > 0.0))
      throw usage_error("ExcitonVector: cannot normalize a zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (double& c : coefficients) c *= inv;
  }

  std::size_t size() const { return coefficients.size(); }

  double norm() const {
    double n2 = 0.0;
    for (double c : coefficients) n2 += c * c;
    return std::sqrt(n2);
  }
};

}  // namespace superdark
