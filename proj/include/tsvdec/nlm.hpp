#pragma once

#include "tsvdec/field.hpp"

namespace tsvdec {

/// Non-local means with periodic neighborhoods. `patch` and `search` are odd
/// window extents; h scales the Gaussian of the mean squared patch distance,
/// weight = exp(-d2/h^2). The output is a convex average, so its range stays
/// within [min(f), max(f)].
ScalarField nlm_denoise(const ScalarField& f, int patch, int search, double h);

} // namespace tsvdec
