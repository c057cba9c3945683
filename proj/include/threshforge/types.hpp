#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace threshforge {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error { public: using Error::Error; };
class EmptyImage : public Error { public: using Error::Error; };
class DegenerateHistogram : public Error { public: using Error::Error; };
class InvalidSigma : public Error { public: using Error::Error; };
class TooFewDistinctPoints : public Error { public: using Error::Error; };
class EmptyInput : public Error { public: using Error::Error; };
class IndexOutOfRange : public Error { public: using Error::Error; };
class ShapeOutOfBounds : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };
class FormatError : public Error { public: using Error::Error; };

/// Row-major 8-bit grayscale buffer. pixels.size() must equal width*height.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::size_t size() const { return pixels.size(); }
    bool empty() const { return width <= 0 || height <= 0; }

    bool operator==(const GrayImage&) const = default;
};

/// 256 intensity bin counts. sum(bins) == total == source pixel count.
struct Histogram {
    std::array<std::uint64_t, 256> bins{};
    std::uint64_t total = 0;
};

enum class MaskMethod { Classic, Improved };

/// Row-major {0,1} label buffer with provenance of the producing run.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> labels;
    MaskMethod method = MaskMethod::Classic;
    int threshold_used = 0;

    BinaryMask() = default;
    BinaryMask(int w, int h)
        : width(w), height(h), labels(static_cast<std::size_t>(w) * h, 0) {}

    bool operator==(const BinaryMask&) const = default;
};

struct MeanVariance {
    double mean = 0.0;
    double variance = 0.0;
};

/// rgb_pixels holds width*height (r,g,b) triplets, 3*width*height bytes.
/// Each output intensity is round(0.299*r + 0.587*g + 0.114*b).
GrayImage to_grayscale(std::span<const std::uint8_t> rgb_pixels, int width, int height);

Histogram histogram(const GrayImage& img);

/// Population mean and variance of the intensity distribution.
MeanVariance image_mean_variance(const Histogram& hist);

/// Mask label 1 maps to intensity 255, label 0 to 0.
GrayImage mask_to_gray(const BinaryMask& mask);

/// Inverse of mask_to_gray: any nonzero intensity becomes label 1.
BinaryMask mask_from_gray(const GrayImage& img);

}  // namespace threshforge
