#pragma once

#include <cstdint>
#include <random>

#include "anosov/matrix.hpp"

namespace anosov {

using Rng = std::mt19937_64;

Matrix random_gaussian(int rows, int cols, Rng& rng);

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
// R-diagonal sign fix.
Matrix random_orthogonal(int d, Rng& rng);

// Gaussian matrix rescaled to det = 1. When max_condition > 0, resamples
// until the condition number is below the bound.
Matrix random_unimodular(int d, Rng& rng, double max_condition = 0.0);

}  // namespace anosov
