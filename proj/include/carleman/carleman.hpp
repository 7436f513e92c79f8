// This file is part of carleman, a numerical toolkit for harmonic
// continuation in band domains.
// SPDX-License-Identifier: Apache-2.0

#ifndef CARLEMAN_CARLEMAN_HPP
#define CARLEMAN_CARLEMAN_HPP

#include "carleman/analytic.hpp"
#include "carleman/config.hpp"
#include "carleman/core.hpp"
#include "carleman/csv.hpp"
#include "carleman/domain.hpp"
#include "carleman/kernel.hpp"
#include "carleman/quadrature.hpp"
#include "carleman/representation.hpp"
#include "carleman/verification.hpp"

#endif  // CARLEMAN_CARLEMAN_HPP
