#include "threshforge/gaussian.hpp"

#include "threshforge/parallel.hpp"

#include <cmath>

namespace threshforge {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_sigma(double sigma) {
    if (!(sigma > 0.0)) {
        throw InvalidSigma("sigma must be > 0, got " + std::to_string(sigma));
    }
}

std::uint8_t round_to_byte(double v) {
    double r = std::floor(v + 0.5);
    if (r < 0.0) r = 0.0;
    if (r > 255.0) r = 255.0;
    return static_cast<std::uint8_t>(r);
}

}  // namespace

double gaussian_density(double x, double sigma) {
    require_sigma(sigma);
    const double s2 = sigma * sigma;
    return std::exp(-(x * x) / (2.0 * s2)) / std::sqrt(kTwoPi * s2);
}

GaussianKernel kernel_1d(double sigma) {
    require_sigma(sigma);
    GaussianKernel k;
    k.sigma = sigma;
    k.radius = static_cast<int>(std::ceil(3.0 * sigma));
    k.weights.resize(2 * k.radius + 1);
    double sum = 0.0;
    for (int i = 0; i < static_cast<int>(k.weights.size()); ++i) {
        k.weights[i] = gaussian_density(i - k.radius, sigma);
        sum += k.weights[i];
    }
    for (double& w : k.weights) w /= sum;
    return k;
}

GrayImage smooth(const GrayImage& img, double sigma) {
    require_sigma(sigma);
    if (img.empty()) throw EmptyImage("smooth of an empty image");

    const GaussianKernel kernel = kernel_1d(sigma);
    const int radius = kernel.radius;
    const int w = img.width;
    const int h = img.height;

    // Horizontal pass into a double plane, replicate border.
    std::vector<double> plane(img.size());
    parallel_for(static_cast<std::size_t>(h), [&](std::size_t y0, std::size_t y1) {
        for (std::size_t y = y0; y < y1; ++y) {
            const std::uint8_t* row = img.pixels.data() + y * w;
            double* out = plane.data() + y * w;
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int j = -radius; j <= radius; ++j) {
                    int xs = x + j;
                    if (xs < 0) xs = 0;
                    if (xs >= w) xs = w - 1;
                    acc += kernel.weights[j + radius] * row[xs];
                }
                out[x] = acc;
            }
        }
    });

    // Vertical pass, rounding half-up into bytes.
    GrayImage result(w, h);
    parallel_for(static_cast<std::size_t>(h), [&](std::size_t y0, std::size_t y1) {
        for (std::size_t y = y0; y < y1; ++y) {
            std::uint8_t* out = result.pixels.data() + y * w;
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int j = -radius; j <= radius; ++j) {
                    int ys = static_cast<int>(y) + j;
                    if (ys < 0) ys = 0;
                    if (ys >= h) ys = h - 1;
                    acc += kernel.weights[j + radius] * plane[static_cast<std::size_t>(ys) * w + x];
                }
                out[x] = round_to_byte(acc);
            }
        }
    });
    return result;
}

}  // namespace threshforge
