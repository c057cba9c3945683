#pragma once

#include "threshforge/types.hpp"

namespace threshforge {

/// Two-class split statistics at a candidate threshold. Background is
/// intensities <= t, foreground > t. An empty class has weight 0 and,
/// by convention, mean 0 and variance 0.
struct ClassStats {
    double w_b = 0.0;
    double w_f = 0.0;
    double mu_b = 0.0;
    double mu_f = 0.0;
    double var_b = 0.0;
    double var_f = 0.0;
};

struct ThresholdReport {
    int threshold = 0;
    ClassStats stats;
    double sigma_w2 = 0.0;
    double sigma_b2_between = 0.0;
    double sigma_total2 = 0.0;
};

/// t in [0,255]. t = 255 puts every pixel in the background class.
ClassStats class_stats(const Histogram& hist, int t);

/// w_b*var_b + w_f*var_f at threshold t.
double within_class_variance(const Histogram& hist, int t);

/// Total variance minus within-class variance at threshold t. Equals
/// w_b*w_f*(mu_b-mu_f)^2 when both classes are non-empty.
double between_class_variance(const Histogram& hist, int t);

/// Scans every cut t in [0,254] and returns the one maximizing the
/// between-class variance, smallest t on ties. Throws
/// DegenerateHistogram when fewer than two bins are non-zero.
ThresholdReport otsu_threshold(const Histogram& hist);

/// Label 0 where intensity <= t, 1 where intensity > t.
BinaryMask apply_threshold(const GrayImage& img, int t);

}  // namespace threshforge
