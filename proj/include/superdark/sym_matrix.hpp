#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "superdark/errors.hpp"

namespace superdark {

// Dense real symmetric matrix, row-major. Everything in this library is
// at most 3N x 3N with N <= ~16, so no attempt is made at sparsity or
// blocking; symmetry is enforced by writing both triangles on set().
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, 0.0) {
    if (dim < 1) throw usage_error("SymMatrix: dimension must be >= 1");
  }

  static SymMatrix diagonal(const std::vector<double>& d) {
    SymMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
  }

  std::size_t dim() const { return dim_; }

  double operator()(std::size_t i, std::size_t j) const {
    return a_[i * dim_ + j];
  }

  void set(std::size_t i, std::size_t j, double v) {
    a_[i * dim_ + j] = v;
    a_[j * dim_ + i] = v;
  }

  void add(std::size_t i, std::size_t j, double v) {
    set(i, j, (*this)(i, j) + v);
  }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < dim_; ++j) row += std::fabs((*this)(i, j));
      best = std::max(best, row);
    }
    return best;
  }

  double norm_fro() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
  }

  bool is_finite() const {
    return std::all_of(a_.begin(), a_.end(),
                       [](double v) { return std::isfinite(v); });
  }

  std::vector<double> multiply(const std::vector<double>& x) const {
    std::vector<double> y(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

 private:
  std::size_t dim_;
  std::vector<double> a_;
};

// Eigen-pairs of a symmetric matrix, eigenvalues ascending. vectors[k] is
// the unit eigenvector paired with values[k].
struct EigenDecomposition {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
};

namespace detail {

// Deterministic orientation: flip a vector so its first entry of
// magnitude above 1e-9 is positive.
inline void fix_sign(std::vector<double>& v) {
  for (double x : v) {
    if (std::fabs(x) > 1e-9) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

}  // namespace detail

// Cyclic Jacobi diagonalization. Matrices here never exceed 48x48, so the
// O(n^3)-per-sweep cost is irrelevant and the method's eigenvector
// orthogonality (product of exact rotations) is worth having.
inline EigenDecomposition eigh_symmetric(const SymMatrix& m) {
  if (!m.is_finite())
    throw usage_error("eigh_symmetric: matrix has non-finite entries");

  const std::size_t n = m.dim();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);

  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double thresh = 1e-14 * m.norm_fro();
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::fabs(apq) <= thresh) continue;
        rotated = true;

        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) /
            (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a[r * n + p];
            const double arq = a[r * n + q];
            a[r * n + p] = a[p * n + r] = arp - s * (arq + tau * arp);
            a[r * n + q] = a[q * n + r] = arq + s * (arp - tau * arq);
          }
          const double vrp = v[r * n + p];
          const double vrq = v[r * n + q];
          v[r * n + p] = vrp - s * (vrq + tau * vrp);
          v[r * n + q] = vrq + s * (vrp - tau * vrq);
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * n + i] < a[j * n + j];
  });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a[order[k] * n + order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors[k][i] = v[i * n + order[k]];
    detail::fix_sign(out.vectors[k]);
  }
  return out;
}

}  // namespace superdark
