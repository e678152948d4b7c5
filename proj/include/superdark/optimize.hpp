#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "superdark/errors.hpp"

namespace superdark {

struct ScalarMinimum {
  double x = 0.0;
  double f = 0.0;
  int evaluations = 0;
};

struct MultiMinimum {
  std::vector<double> x;
  double f = 0.0;
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

template <class F>
class checked_fn {
 public:
  explicit checked_fn(F& f) : f_(f) {}
  double operator()(double x) {
    ++count_;
    const double v = f_(x);
    if (!std::isfinite(v))
      throw numeric_error("minimizer: objective returned a non-finite value");
    return v;
  }
  int count() const { return count_; }

 private:
  F& f_;
  int count_ = 0;
};

}  // namespace detail

// One-dimensional minimization: a dense pre-scan followed by golden-section
// refinement of the best three-point bracket. The pre-scan is deliberately
// fine (2001 points) because the decay-rate dips this library hunts are
// orders of magnitude deep and only a few grid cells wide.
template <class F>
ScalarMinimum minimize_scalar(F&& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw usage_error("minimize_scalar: need lo < hi");
  if (!(tol > 0.0)) throw usage_error("minimize_scalar: need tol > 0");

  detail::checked_fn<F> g(f);
  constexpr int prescan = 2001;

  double best_x = lo, best_f = g(lo);
  int best_i = 0;
  for (int i = 1; i < prescan; ++i) {
    const double x = lo + (hi - lo) * i / (prescan - 1);
    const double v = g(x);
    if (v < best_f) {
      best_f = v;
      best_x = x;
      best_i = i;
    }
  }

  double a = lo + (hi - lo) * std::max(0, best_i - 1) / (prescan - 1);
  double b = lo + (hi - lo) * std::min(prescan - 1, best_i + 1) / (prescan - 1);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = g(c);
  double fd = g(d);
  for (int iter = 0; iter < 400 && (b - a) > tol; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = g(d);
    }
  }

  const double mid = 0.5 * (a + b);
  const double fmid = g(mid);
  ScalarMinimum out;
  out.x = fmid < best_f ? mid : best_x;
  out.f = std::min(fmid, best_f);
  if (fc < out.f) {
    out.x = c;
    out.f = fc;
  }
  if (fd < out.f) {
    out.x = d;
    out.f = fd;
  }
  out.evaluations = g.count();
  return out;
}

// Derivative-free local minimization in R^d: Nelder-Mead simplex with the
// standard coefficients, followed by axis probes of size tol. If a probe
// still improves the value by more than tol*|f|, the search restarts there,
// so the returned point is stationary at the requested resolution.
template <class F>
MultiMinimum minimize_multi(F&& f, std::vector<double> start, double step,
                            double tol) {
  const std::size_t d = start.size();
  if (d < 1) throw usage_error("minimize_multi: need at least one dimension");
  if (!(step > 0.0) || !(tol > 0.0))
    throw usage_error("minimize_multi: need step > 0 and tol > 0");

  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    if (!std::isfinite(v))
      throw numeric_error("minimize_multi: objective returned non-finite");
    return v;
  };

  bool converged = false;
  std::vector<double> xbest = start;
  double fbest = eval(xbest);

  const int max_restarts = 4;
  double simplex_step = step;
  for (int restart = 0; restart < max_restarts; ++restart) {
    // Initial simplex: best point plus one offset vertex per axis.
    std::vector<std::vector<double>> xs(d + 1, xbest);
    std::vector<double> fs(d + 1);
    fs[0] = fbest;
    for (std::size_t i = 0; i < d; ++i) {
      xs[i + 1][i] += simplex_step;
      fs[i + 1] = eval(xs[i + 1]);
    }

    const int max_iter = 500 * static_cast<int>(d) + 500;
    for (int iter = 0; iter < max_iter; ++iter) {
      std::vector<std::size_t> order(d + 1);
      for (std::size_t i = 0; i <= d; ++i) order[i] = i;
      std::sort(order.begin(), order.end(),
                [&](std::size_t i, std::size_t j) { return fs[i] < fs[j]; });

      const std::size_t best = order[0], worst = order[d];
      double size = 0.0;
      for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t k = 0; k < d; ++k)
          size = std::max(size, std::fabs(xs[i][k] - xs[best][k]));
      const double fspread = fs[worst] - fs[best];
      if (size <= tol &&
          fspread <= tol * std::max(1.0, std::fabs(fs[best]))) {
        converged = true;
        break;
      }

      std::vector<double> centroid(d, 0.0);
      for (std::size_t i = 0; i <= d; ++i) {
        if (i == worst) continue;
        for (std::size_t k = 0; k < d; ++k) centroid[k] += xs[i][k];
      }
      for (double& v : centroid) v /= static_cast<double>(d);

      auto along = [&](double coeff) {
        std::vector<double> x(d);
        for (std::size_t k = 0; k < d; ++k)
          x[k] = centroid[k] + coeff * (xs[worst][k] - centroid[k]);
        return x;
      };

      const auto xr = along(-1.0);  // reflection
      const double fr = eval(xr);
      if (fr < fs[best]) {
        const auto xe = along(-2.0);  // expansion
        const double fe = eval(xe);
        if (fe < fr) {
          xs[worst] = xe;
          fs[worst] = fe;
        } else {
          xs[worst] = xr;
          fs[worst] = fr;
        }
      } else if (fr < fs[order[d - 1]]) {
        xs[worst] = xr;
        fs[worst] = fr;
      } else {
        const auto xc = along(fr < fs[worst] ? -0.5 : 0.5);  // contraction
        const double fcv = eval(xc);
        if (fcv < std::min(fr, fs[worst])) {
          xs[worst] = xc;
          fs[worst] = fcv;
        } else {
          for (std::size_t i = 0; i <= d; ++i) {  // shrink toward best
            if (i == best) continue;
            for (std::size_t k = 0; k < d; ++k)
              xs[i][k] = xs[best][k] + 0.5 * (xs[i][k] - xs[best][k]);
            fs[i] = eval(xs[i]);
          }
        }
      }
    }

    for (std::size_t i = 0; i <= d; ++i) {
      if (fs[i] < fbest) {
        fbest = fs[i];
        xbest = xs[i];
      }
    }

    // Stationarity check at resolution tol.
    bool improved = false;
    for (std::size_t k = 0; k < d && !improved; ++k) {
      for (double sgn : {+1.0, -1.0}) {
        auto x = xbest;
        x[k] += sgn * tol;
        const double v = eval(x);
        if (v < fbest - tol * std::fabs(fbest)) {
          xbest = x;
          fbest = v;
          improved = true;
          break;
        }
      }
    }
    if (!improved && converged) break;
    simplex_step = std::max(10.0 * tol, 0.1 * simplex_step);
  }

  MultiMinimum out;
  out.x = std::move(xbest);
  out.f = fbest;
  out.evaluations = evals;
  out.converged = converged;
  return out;
}

}  // namespace superdark
