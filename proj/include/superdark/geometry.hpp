#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "superdark/errors.hpp"

namespace superdark {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

// Excitation polarization mode. The scalar modes (parallel/perpendicular to
// the chain axis) are meaningful only for collinear arrays; vector3d keeps
// all three excited sublevels per atom and works for any geometry.
enum class Polarization { parallel, perpendicular, vector3d };

inline const char* to_string(Polarization p) {
  switch (p) {
    case Polarization::parallel:
      return "parallel";
    case Polarization::perpendicular:
      return "perpendicular";
    case Polarization::vector3d:
      return "vector3d";
  }
  return "?";
}

// Equally spaced chain: N atoms separated by the dimensionless spacing ka.
struct ChainSpec {
  int n_atoms = 0;
  double ka = 0.0;
};

// A set of atom positions in dimensionless form (lengths premultiplied by
// the transition wavenumber k), plus the polarization mode all downstream
// matrices are built in. Immutable after construction.
class AtomArray {
 public:
  AtomArray(std::vector<Vec3> positions, Polarization pol)
      : positions_(std::move(positions)), pol_(pol) {
    const std::size_t n = positions_.size();
    if (n < 1) throw geometry_error("AtomArray: need at least one atom");

    double ext = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        ext = std::max(ext, norm(positions_[i] - positions_[j]));
    extent_ = ext;

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (norm(positions_[i] - positions_[j]) <= 1e-14 * std::max(1.0, ext))
          throw geometry_error("AtomArray: coincident atom positions");

    if (pol_ != Polarization::vector3d) {
      compute_axis();
    }
  }

  std::size_t n_atoms() const { return positions_.size(); }
  const std::vector<Vec3>& positions() const { return positions_; }
  Polarization polarization() const { return pol_; }
  bool scalar_mode() const { return pol_ != Polarization::vector3d; }

  // Longest pairwise separation (k * r, the array extent).
  double extent() const { return extent_; }

  double separation(std::size_t i, std::size_t j) const {
    return norm(positions_[i] - positions_[j]);
  }

  // Coordinates along the chain axis; only available in scalar modes.
  const std::vector<double>& axis_coordinates() const {
    if (!scalar_mode())
      throw usage_error("axis_coordinates: array is not in a scalar mode");
    return axis_coords_;
  }

 private:
  void compute_axis() {
    const std::size_t n = positions_.size();
    axis_coords_.assign(n, 0.0);
    if (n == 1) return;

    // Direction from the most separated pair, then check every atom lies
    // on that line to within 1e-12 of the extent.
    std::size_t ia = 0, ib = 1;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dist = norm(positions_[i] - positions_[j]);
        if (dist > best) {
          best = dist;
          ia = i;
          ib = j;
        }
      }
    const Vec3 dir = (1.0 / best) * (positions_[ib] - positions_[ia]);
    for (std::size_t j = 0; j < n; ++j) {
      const Vec3 r = positions_[j] - positions_[ia];
      if (norm(cross(r, dir)) > 1e-12 * std::max(1.0, extent_))
        throw geometry_error(
            "AtomArray: parallel/perpendicular modes require collinear "
            "positions");
      axis_coords_[j] = dot(r, dir);
    }
  }

  std::vector<Vec3> positions_;
  Polarization pol_;
  double extent_ = 0.0;
  std::vector<double> axis_coords_;
};

// Chain of N equally spaced atoms along z, positions (0, 0, (j-1) ka).
inline AtomArray make_chain(const ChainSpec& spec, Polarization pol) {
  if (pol == Polarization::vector3d)
    throw usage_error(
        "make_chain: vector3d mode is built with make_array, not a chain "
        "constructor");
  if (spec.n_atoms < 2) throw geometry_error("make_chain: need N >= 2");
  if (!(spec.ka > 0.0)) throw geometry_error("make_chain: need ka > 0");

  std::vector<Vec3> pos(spec.n_atoms);
  for (int j = 0; j < spec.n_atoms; ++j)
    pos[j] = {0.0, 0.0, j * spec.ka};
  return AtomArray(std::move(pos), pol);
}

// Arbitrary 3D ensemble; always vector3d mode.
inline AtomArray make_array(std::vector<Vec3> positions) {
  if (positions.size() < 2) throw geometry_error("make_array: need N >= 2");
  return AtomArray(std::move(positions), Polarization::vector3d);
}

// Spacing of an equally spaced collinear array; rejects non-uniform chains.
inline double chain_spacing(const AtomArray& array) {
  const auto& t = array.axis_coordinates();
  if (t.size() < 2) throw usage_error("chain_spacing: need N >= 2");
  std::vector<double> sorted(t);
  std::sort(sorted.begin(), sorted.end());
  const double a = sorted[1] - sorted[0];
  for (std::size_t j = 1; j + 1 < sorted.size(); ++j)
    if (std::fabs((sorted[j + 1] - sorted[j]) - a) > 1e-9 * a)
      throw usage_error("chain_spacing: array is not equally spaced");
  return a;
}

}  // namespace superdark
