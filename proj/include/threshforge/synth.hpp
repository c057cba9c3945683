#pragma once

#include "threshforge/pipeline.hpp"
#include "threshforge/types.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace threshforge {

struct Disk {
    double cx = 0.0;
    double cy = 0.0;
    double r = 0.0;
};

/// Three-lobed blob on a stalk: a face disk of radius r at (cx, cy),
/// two ear disks of radius 0.55r at (cx +- 0.8r, cy - 0.9r), and a
/// stalk rectangle 0.6r wide reaching 1.6r below the face center.
struct TriLobe {
    double cx = 0.0;
    double cy = 0.0;
    double r = 0.0;
};

using Shape = std::variant<Disk, TriLobe>;

struct SynthSpec {
    int width = 128;
    int height = 128;
    int fg_level = 180;
    int bg_level = 60;
    Shape shape = Disk{64.0, 64.0, 32.0};
    double noise_sigma = 0.0;
    std::uint64_t seed = 1;
};

struct SynthOutput {
    GrayImage image;
    BinaryMask truth;
};

/// Renders fg_level inside the shape and bg_level outside (membership
/// tested at pixel centers), then adds seeded Gaussian noise of std
/// noise_sigma, clamped to [0,255]. The truth mask is the noiseless
/// membership and does not depend on noise_sigma or seed.
SynthOutput generate(const SynthSpec& spec);

struct ComparisonRow {
    std::uint64_t seed = 0;
    double classic_rate = 0.0;
    double improved_rate = 0.0;
};

struct ComparisonReport {
    int n_seeds = 0;
    std::vector<ComparisonRow> rows;
    double classic_mean = 0.0;
    double improved_mean = 0.0;
    int improved_wins = 0;
    int classic_wins = 0;
    int ties = 0;
};

/// For seeds 1..n_seeds: generate, binarize with both methods, record
/// both misclassification rates against the truth mask. Rows are
/// ordered by seed regardless of execution order.
ComparisonReport run_comparison(const SynthSpec& spec, const PipelineConfig& config,
                                int n_seeds);

}  // namespace threshforge
