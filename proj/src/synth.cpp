#include "threshforge/synth.hpp"

#include "threshforge/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace threshforge {

namespace {

bool inside_disk(double px, double py, double cx, double cy, double r) {
    const double dx = px - cx;
    const double dy = py - cy;
    return dx * dx + dy * dy <= r * r;
}

bool inside_shape(const Shape& shape, double px, double py) {
    if (const Disk* d = std::get_if<Disk>(&shape)) {
        return inside_disk(px, py, d->cx, d->cy, d->r);
    }
    const TriLobe& t = std::get<TriLobe>(shape);
    if (inside_disk(px, py, t.cx, t.cy, t.r)) return true;
    const double ear_r = 0.55 * t.r;
    if (inside_disk(px, py, t.cx - 0.8 * t.r, t.cy - 0.9 * t.r, ear_r)) return true;
    if (inside_disk(px, py, t.cx + 0.8 * t.r, t.cy - 0.9 * t.r, ear_r)) return true;
    const double half_w = 0.3 * t.r;
    return px >= t.cx - half_w && px <= t.cx + half_w && py >= t.cy &&
           py <= t.cy + 1.6 * t.r;
}

void shape_bounds(const Shape& shape, double& x0, double& y0, double& x1, double& y1) {
    if (const Disk* d = std::get_if<Disk>(&shape)) {
        x0 = d->cx - d->r;
        x1 = d->cx + d->r;
        y0 = d->cy - d->r;
        y1 = d->cy + d->r;
        return;
    }
    const TriLobe& t = std::get<TriLobe>(shape);
    x0 = t.cx - 1.35 * t.r;
    x1 = t.cx + 1.35 * t.r;
    y0 = t.cy - 1.45 * t.r;
    y1 = t.cy + 1.6 * t.r;
}

std::uint8_t clamp_round(double v) {
    if (v <= 0.0) return 0;
    if (v >= 255.0) return 255;
    return static_cast<std::uint8_t>(std::floor(v + 0.5));
}

}  // namespace

SynthOutput generate(const SynthSpec& spec) {
    if (spec.width <= 0 || spec.height <= 0) {
        throw EmptyImage("synth image dimensions must be positive");
    }
    if (spec.fg_level < 0 || spec.fg_level > 255 || spec.bg_level < 0 ||
        spec.bg_level > 255 || spec.fg_level == spec.bg_level) {
        throw FormatError("fg and bg levels must be distinct values in [0,255]");
    }
    if (spec.noise_sigma < 0.0) throw InvalidSigma("noise sigma must be >= 0");

    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    shape_bounds(spec.shape, x0, y0, x1, y1);
    if (x0 < 0.0 || y0 < 0.0 || x1 > spec.width || y1 > spec.height) {
        throw ShapeOutOfBounds("shape bounding box [" + std::to_string(x0) + ", " +
                               std::to_string(y0) + "] x [" + std::to_string(x1) +
                               ", " + std::to_string(y1) + "] exceeds " +
                               std::to_string(spec.width) + "x" +
                               std::to_string(spec.height));
    }

    SynthOutput out;
    out.image = GrayImage(spec.width, spec.height);
    out.truth = BinaryMask(spec.width, spec.height);

    SplitMix64 rng(spec.seed);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * spec.width + x;
            const bool member = inside_shape(spec.shape, x + 0.5, y + 0.5);
            out.truth.labels[i] = member ? 1 : 0;
            double v = member ? spec.fg_level : spec.bg_level;
            if (spec.noise_sigma > 0.0) {
                v += spec.noise_sigma * rng.next_normal();
            }
            out.image.pixels[i] = clamp_round(v);
        }
    }
    return out;
}

ComparisonReport run_comparison(const SynthSpec& spec, const PipelineConfig& config,
                                int n_seeds) {
    if (n_seeds < 1) throw EmptyInput("n_seeds must be >= 1");

    ComparisonReport report;
    report.n_seeds = n_seeds;
    report.rows.resize(n_seeds);

    for (int s = 0; s < n_seeds; ++s) {
        SynthSpec seeded = spec;
        seeded.seed = static_cast<std::uint64_t>(s) + 1;
        const SynthOutput synth = generate(seeded);

        ComparisonRow& row = report.rows[s];
        row.seed = seeded.seed;
        row.classic_rate =
            misclassification_rate(binarize_classic(synth.image).mask, synth.truth);
        row.improved_rate = misclassification_rate(
            binarize_improved(synth.image, config).mask, synth.truth);
    }

    double classic_sum = 0.0;
    double improved_sum = 0.0;
    for (const ComparisonRow& row : report.rows) {
        classic_sum += row.classic_rate;
        improved_sum += row.improved_rate;
        if (row.improved_rate < row.classic_rate) {
            ++report.improved_wins;
        } else if (row.classic_rate < row.improved_rate) {
            ++report.classic_wins;
        } else {
            ++report.ties;
        }
    }
    report.classic_mean = classic_sum / n_seeds;
    report.improved_mean = improved_sum / n_seeds;
    return report;
}

}  // namespace threshforge
