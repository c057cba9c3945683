#include "threshforge/types.hpp"

#include <cmath>

namespace threshforge {

GrayImage to_grayscale(std::span<const std::uint8_t> rgb_pixels, int width, int height) {
    const std::size_t n = static_cast<std::size_t>(width) * height;
    if (rgb_pixels.size() != 3 * n) {
        throw DimensionMismatch("rgb buffer holds " + std::to_string(rgb_pixels.size() / 3) +
                                " pixels, expected " + std::to_string(n));
    }
    GrayImage out(width, height);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rgb_pixels[3 * i];
        const double g = rgb_pixels[3 * i + 1];
        const double b = rgb_pixels[3 * i + 2];
        double v = std::floor(0.299 * r + 0.587 * g + 0.114 * b + 0.5);
        if (v < 0.0) v = 0.0;
        if (v > 255.0) v = 255.0;
        out.pixels[i] = static_cast<std::uint8_t>(v);
    }
    return out;
}

Histogram histogram(const GrayImage& img) {
    if (img.empty()) throw EmptyImage("histogram of an empty image");
    Histogram h;
    for (std::uint8_t v : img.pixels) ++h.bins[v];
    h.total = img.size();
    return h;
}

MeanVariance image_mean_variance(const Histogram& hist) {
    if (hist.total == 0) throw EmptyImage("histogram has no pixels");
    double sum = 0.0;
    for (int v = 0; v < 256; ++v) sum += static_cast<double>(v) * hist.bins[v];
    const double mean = sum / static_cast<double>(hist.total);
    double acc = 0.0;
    for (int v = 0; v < 256; ++v) {
        const double d = v - mean;
        acc += d * d * hist.bins[v];
    }
    return {mean, acc / static_cast<double>(hist.total)};
}

GrayImage mask_to_gray(const BinaryMask& mask) {
    GrayImage out(mask.width, mask.height);
    for (std::size_t i = 0; i < mask.labels.size(); ++i) {
        out.pixels[i] = mask.labels[i] ? 255 : 0;
    }
    return out;
}

BinaryMask mask_from_gray(const GrayImage& img) {
    BinaryMask out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        out.labels[i] = img.pixels[i] ? 1 : 0;
    }
    return out;
}

}  // namespace threshforge
