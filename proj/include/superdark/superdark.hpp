#pragma once

// Umbrella header: collective-emission engineering for small atomic arrays.

#include "superdark/coupling.hpp"
#include "superdark/dark_state.hpp"
#include "superdark/ddouble.hpp"
#include "superdark/decay.hpp"
#include "superdark/errors.hpp"
#include "superdark/exciton.hpp"
#include "superdark/geometry.hpp"
#include "superdark/moments.hpp"
#include "superdark/optimize.hpp"
#include "superdark/quadrature.hpp"
#include "superdark/reference_table.hpp"
#include "superdark/spectrum.hpp"
#include "superdark/sym_matrix.hpp"
#include "superdark/tuning.hpp"
