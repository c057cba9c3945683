#include "threshforge/pipeline.hpp"

#include "threshforge/gaussian.hpp"

#include <chrono>
#include <utility>

namespace threshforge {

namespace {

using Clock = std::chrono::steady_clock;

class StageTimer {
public:
    explicit StageTimer(RunReport& report) : report_(report), start_(Clock::now()) {}

    void mark(const std::string& stage) {
        const Clock::time_point now = Clock::now();
        const double ms =
            std::chrono::duration<double, std::milli>(now - start_).count();
        report_.stages.push_back(stage);
        report_.timings.push_back({stage, ms});
        start_ = now;
    }

private:
    RunReport& report_;
    Clock::time_point start_;
};

GrayImage suppress_outside(const GrayImage& img, const BinaryMask& region) {
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        out.pixels[i] = region.labels[i] == 1 ? img.pixels[i] : 0;
    }
    return out;
}

}  // namespace

BinarizeOutput binarize_classic(const GrayImage& img) {
    BinarizeOutput out;
    out.report.method = "classic";
    StageTimer timer(out.report);

    const Histogram hist = histogram(img);
    out.report.threshold_report = otsu_threshold(hist);
    out.report.final_histogram = hist;
    timer.mark("otsu");

    out.mask = apply_threshold(img, out.report.threshold_report.threshold);
    out.mask.method = MaskMethod::Classic;
    timer.mark("apply");
    return out;
}

BinarizeOutput binarize_improved(const GrayImage& img, const PipelineConfig& config) {
    BinarizeOutput out;
    out.report.method = "improved";
    out.report.sigma = config.sigma;
    StageTimer timer(out.report);

    KMeansConfig kconfig = config.kmeans;
    kconfig.k = config.k;

    GrayImage working = img;
    if (config.order == StageOrder::SmoothFirst) {
        working = smooth(working, config.sigma);
        timer.mark("smooth");
    }

    const ClusterImageResult clustered = cluster_image(working, kconfig, config.spatial);
    out.report.kmeans_summary = clustered.result;
    timer.mark("cluster");

    const BinaryMask region = select_cluster(clustered, config.select);
    timer.mark("select");

    working = suppress_outside(working, region);
    timer.mark("suppress");

    if (config.order == StageOrder::ClusterFirst) {
        working = smooth(working, config.sigma);
        timer.mark("smooth");
    }

    const Histogram hist = histogram(working);
    out.report.threshold_report = otsu_threshold(hist);
    out.report.final_histogram = hist;
    timer.mark("otsu");

    out.mask = apply_threshold(working, out.report.threshold_report.threshold);
    out.mask.method = MaskMethod::Improved;
    timer.mark("apply");
    return out;
}

double misclassification_rate(const BinaryMask& mask, const BinaryMask& truth) {
    if (mask.width != truth.width || mask.height != truth.height) {
        throw DimensionMismatch("mask is " + std::to_string(mask.width) + "x" +
                                std::to_string(mask.height) + ", truth is " +
                                std::to_string(truth.width) + "x" +
                                std::to_string(truth.height));
    }
    const std::size_t n = mask.labels.size();
    if (n == 0) throw EmptyImage("misclassification_rate of empty masks");

    std::size_t differing = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (mask.labels[i] != truth.labels[i]) ++differing;
    }
    const std::size_t flipped = n - differing;
    return static_cast<double>(differing < flipped ? differing : flipped) /
           static_cast<double>(n);
}

}  // namespace threshforge
