#include "threshforge/otsu.hpp"

#include <cstdint>

namespace threshforge {

namespace {

// Class statistics from exact integer sums. Both the standalone
// class_stats and the threshold scan funnel through this so their
// doubles are bit-identical.
ClassStats stats_from_sums(std::uint64_t n_b, std::uint64_t sum_b, std::uint64_t sumsq_b,
                           std::uint64_t total, std::uint64_t sum_all,
                           std::uint64_t sumsq_all) {
    const std::uint64_t n_f = total - n_b;
    const std::uint64_t sum_f = sum_all - sum_b;
    const std::uint64_t sumsq_f = sumsq_all - sumsq_b;

    ClassStats s;
    s.w_b = static_cast<double>(n_b) / static_cast<double>(total);
    s.w_f = static_cast<double>(n_f) / static_cast<double>(total);
    if (n_b > 0) {
        s.mu_b = static_cast<double>(sum_b) / static_cast<double>(n_b);
        s.var_b = static_cast<double>(sumsq_b) / static_cast<double>(n_b) - s.mu_b * s.mu_b;
        if (s.var_b < 0.0) s.var_b = 0.0;
    }
    if (n_f > 0) {
        s.mu_f = static_cast<double>(sum_f) / static_cast<double>(n_f);
        s.var_f = static_cast<double>(sumsq_f) / static_cast<double>(n_f) - s.mu_f * s.mu_f;
        if (s.var_f < 0.0) s.var_f = 0.0;
    }
    return s;
}

void require_pixels(const Histogram& hist) {
    if (hist.total == 0) throw EmptyImage("histogram has no pixels");
}

}  // namespace

ClassStats class_stats(const Histogram& hist, int t) {
    require_pixels(hist);
    std::uint64_t n_b = 0, sum_b = 0, sumsq_b = 0;
    std::uint64_t sum_all = 0, sumsq_all = 0;
    for (int v = 0; v < 256; ++v) {
        const std::uint64_t c = hist.bins[v];
        const std::uint64_t vv = static_cast<std::uint64_t>(v);
        sum_all += vv * c;
        sumsq_all += vv * vv * c;
        if (v <= t) {
            n_b += c;
            sum_b += vv * c;
            sumsq_b += vv * vv * c;
        }
    }
    return stats_from_sums(n_b, sum_b, sumsq_b, hist.total, sum_all, sumsq_all);
}

double within_class_variance(const Histogram& hist, int t) {
    const ClassStats s = class_stats(hist, t);
    return s.w_b * s.var_b + s.w_f * s.var_f;
}

double between_class_variance(const Histogram& hist, int t) {
    return image_mean_variance(hist).variance - within_class_variance(hist, t);
}

ThresholdReport otsu_threshold(const Histogram& hist) {
    require_pixels(hist);
    int nonzero = 0;
    for (int v = 0; v < 256; ++v) {
        if (hist.bins[v] > 0) ++nonzero;
    }
    if (nonzero < 2) {
        throw DegenerateHistogram("all pixels share one intensity; no cut separates anything");
    }

    std::uint64_t sum_all = 0, sumsq_all = 0;
    for (int v = 0; v < 256; ++v) {
        const std::uint64_t vv = static_cast<std::uint64_t>(v);
        sum_all += vv * hist.bins[v];
        sumsq_all += vv * vv * hist.bins[v];
    }
    const double sigma_total2 = image_mean_variance(hist).variance;

    // Cumulative integer sums make each candidate cut O(1) while staying
    // exact, so the scan matches a per-cut recomputation bit-for-bit.
    int best_t = 0;
    double best_between = -1.0;
    std::uint64_t n_b = 0, sum_b = 0, sumsq_b = 0;
    for (int t = 0; t <= 254; ++t) {
        const std::uint64_t c = hist.bins[t];
        const std::uint64_t vv = static_cast<std::uint64_t>(t);
        n_b += c;
        sum_b += vv * c;
        sumsq_b += vv * vv * c;
        const ClassStats s = stats_from_sums(n_b, sum_b, sumsq_b, hist.total, sum_all, sumsq_all);
        const double within = s.w_b * s.var_b + s.w_f * s.var_f;
        const double between = sigma_total2 - within;
        if (between > best_between) {
            best_between = between;
            best_t = t;
        }
    }

    ThresholdReport report;
    report.threshold = best_t;
    report.stats = class_stats(hist, best_t);
    report.sigma_w2 = report.stats.w_b * report.stats.var_b + report.stats.w_f * report.stats.var_f;
    report.sigma_total2 = sigma_total2;
    report.sigma_b2_between = sigma_total2 - report.sigma_w2;
    return report;
}

BinaryMask apply_threshold(const GrayImage& img, int t) {
    BinaryMask mask(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        mask.labels[i] = img.pixels[i] > t ? 1 : 0;
    }
    mask.threshold_used = t;
    return mask;
}

}  // namespace threshforge
