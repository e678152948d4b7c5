#pragma once

#include <array>

#include "superdark/geometry.hpp"

namespace superdark {

// Three-significant-figure reference values for the N = 3, 4 chain
// benchmark: slowest decay rate at the optimal middle-atom shift and with
// no shift, per polarization and (ka)^2. Used by `table1 --compare` and by
// the acceptance suite.
struct ReferenceRate {
  int n;
  Polarization polarization;
  double ka2;
  double gamma_min;
  double gamma_noshift;
};

inline constexpr std::array<ReferenceRate, 12> reference_rates = {{
    {3, Polarization::parallel, 0.01, 7.62e-7, 0.0040},
    {3, Polarization::parallel, 0.10, 7.64e-5, 0.039},
    {3, Polarization::parallel, 1.00, 7.73e-3, 0.036},
    {3, Polarization::perpendicular, 0.01, 1.62e-6, 0.0079},
    {3, Polarization::perpendicular, 0.10, 1.64e-4, 0.056},
    {3, Polarization::perpendicular, 1.00, 1.79e-2, 0.025},
    {4, Polarization::parallel, 0.01, 5.45e-10, 4.4e-4},
    {4, Polarization::parallel, 0.10, 5.48e-7, 4.1e-3},
    {4, Polarization::parallel, 1.00, 5.78e-4, 2.2e-2},
    {4, Polarization::perpendicular, 0.01, 1.26e-9, 8.8e-4},
    {4, Polarization::perpendicular, 0.10, 1.28e-6, 8.0e-3},
    {4, Polarization::perpendicular, 1.00, 1.46e-3, 2.7e-2},
}};

}  // namespace superdark
