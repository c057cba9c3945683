#pragma once

#include "threshforge/types.hpp"

#include <vector>

namespace threshforge {

/// Normalized, symmetric 1D kernel of 2*radius+1 samples of the normal
/// density at integer offsets. Weights sum to 1 and decrease strictly
/// from the center outward.
struct GaussianKernel {
    double sigma = 0.0;
    int radius = 0;
    std::vector<double> weights;
};

/// G(x) = exp(-x^2 / (2 sigma^2)) / sqrt(2 pi sigma^2).
double gaussian_density(double x, double sigma);

/// radius = ceil(3 sigma); weights are G at integer offsets, normalized.
GaussianKernel kernel_1d(double sigma);

/// Separable blur: horizontal pass then vertical pass with replicate
/// border handling. Intermediates stay in double; the final values are
/// rounded half-up into [0,255].
GrayImage smooth(const GrayImage& img, double sigma);

}  // namespace threshforge
