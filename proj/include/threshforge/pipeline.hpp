#pragma once

#include "threshforge/kmeans.hpp"
#include "threshforge/otsu.hpp"
#include "threshforge/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace threshforge {

enum class StageOrder { ClusterFirst, SmoothFirst };

struct PipelineConfig {
    int k = 3;
    SelectRule select{};
    double sigma = 2.0;
    /// Per-run k-means overrides; the k field here is replaced by
    /// PipelineConfig::k.
    KMeansConfig kmeans{};
    bool spatial = false;
    /// SmoothFirst is a comparison-run experiment: blur before
    /// clustering instead of after suppression.
    StageOrder order = StageOrder::ClusterFirst;
};

struct StageTiming {
    std::string stage;
    double ms = 0.0;
};

struct RunReport {
    std::string method;
    std::vector<std::string> stages;
    ThresholdReport threshold_report;
    std::optional<KMeansResult> kmeans_summary;
    std::optional<double> sigma;
    std::vector<StageTiming> timings;
    /// Histogram the reported threshold was searched on (the smoothed
    /// intermediate for improved runs, the input for classic runs).
    Histogram final_histogram;
};

struct BinarizeOutput {
    BinaryMask mask;
    RunReport report;
};

/// histogram -> otsu_threshold -> apply_threshold.
BinarizeOutput binarize_classic(const GrayImage& img);

/// cluster -> select -> suppress non-selected pixels to 0 -> smooth ->
/// otsu on the smoothed histogram -> apply_threshold.
BinarizeOutput binarize_improved(const GrayImage& img, const PipelineConfig& config);

/// Fraction of disagreeing pixels, minimized over label polarity.
double misclassification_rate(const BinaryMask& mask, const BinaryMask& truth);

}  // namespace threshforge
