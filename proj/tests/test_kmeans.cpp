#include <doctest.h>

#include "threshforge/kmeans.hpp"
#include "threshforge/rng.hpp"
#include "threshforge/synth.hpp"
#include "threshforge/types.hpp"

#include <algorithm>
#include <cmath>
#include <map>

using namespace threshforge;

namespace {

std::vector<FeatureVector> scalar_points(std::initializer_list<double> values) {
    std::vector<FeatureVector> points;
    for (double v : values) points.push_back({v});
    return points;
}

std::vector<FeatureVector> random_points(int n, int d, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<FeatureVector> points(n, FeatureVector(d));
    for (auto& p : points) {
        for (auto& coord : p) coord = rng.next_double();
    }
    return points;
}

}  // namespace

TEST_CASE("euclidean_distance basics") {
    CHECK(euclidean_distance({0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(5.0));
    CHECK(euclidean_distance({1.5, -2.0, 7.0}, {1.5, -2.0, 7.0}) == 0.0);
    CHECK(euclidean_distance({10.0}, {3.0}) == doctest::Approx(7.0));
    CHECK_THROWS_AS(euclidean_distance({1.0}, {1.0, 2.0}), DimensionMismatch);
}

TEST_CASE("euclidean_distance in 1D is the absolute difference") {
    SplitMix64 rng(55);
    for (int i = 0; i < 1000; ++i) {
        const double a = rng.next_double() * 500.0 - 250.0;
        const double b = rng.next_double() * 500.0 - 250.0;
        CHECK(euclidean_distance({a}, {b}) == doctest::Approx(std::abs(a - b)));
    }
}

TEST_CASE("kmeans with k=1 lands on the global mean quickly") {
    const auto points = scalar_points({2.0, 4.0, 6.0, 12.0});
    KMeansConfig config;
    config.k = 1;
    const KMeansResult result = kmeans(points, config);
    CHECK(result.centroids.size() == 1);
    CHECK(result.centroids[0][0] == doctest::Approx(6.0));
    CHECK(result.iterations <= 2);
    for (int label : result.labels) CHECK(label == 0);
}

TEST_CASE("kmeans reproduces the textbook 1D trace") {
    const auto points = scalar_points({1.0, 2.0, 10.0, 11.0});
    KMeansConfig config;
    config.k = 2;
    config.init = KMeansInit::FirstK;
    const KMeansResult result = kmeans(points, config);
    CHECK(result.centroids[0][0] == doctest::Approx(1.5));
    CHECK(result.centroids[1][0] == doctest::Approx(10.5));
    CHECK(result.labels == std::vector<int>{0, 0, 1, 1});
    CHECK(result.iterations <= 3);
    CHECK(result.inertia == doctest::Approx(1.0));
}

TEST_CASE("kmeans with k equal to the distinct count isolates every point") {
    const auto points = scalar_points({3.0, 8.0, 21.0});
    KMeansConfig config;
    config.k = 3;
    const KMeansResult result = kmeans(points, config);
    CHECK(result.inertia == 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        CHECK(result.centroids[result.labels[i]][0] == points[i][0]);
    }
}

TEST_CASE("kmeans validates its inputs") {
    KMeansConfig config;
    config.k = 3;
    CHECK_THROWS_AS(kmeans({}, config), EmptyInput);
    CHECK_THROWS_AS(kmeans(scalar_points({5.0, 5.0, 5.0, 5.0}), config),
                    TooFewDistinctPoints);
    CHECK_THROWS_AS(kmeans({{1.0}, {2.0, 3.0}}, config), DimensionMismatch);
}

TEST_CASE("inertia is non-increasing and runs converge within max_iter") {
    SplitMix64 meta(99);
    for (int trial = 0; trial < 12; ++trial) {
        const int d = 1 + static_cast<int>(meta.next_below(3));
        const int k = 2 + static_cast<int>(meta.next_below(4));
        const auto points = random_points(500, d, meta.next());
        KMeansConfig config;
        config.k = k;
        const KMeansResult result = kmeans(points, config);
        CHECK(result.iterations < 100);
        for (std::size_t i = 1; i < result.inertia_history.size(); ++i) {
            CHECK(result.inertia_history[i] <= result.inertia_history[i - 1] + 1e-12);
        }
    }
}

TEST_CASE("converged centroids equal their member means") {
    const auto points = random_points(300, 2, 4242);
    KMeansConfig config;
    config.k = 4;
    const KMeansResult result = kmeans(points, config);
    for (int c = 0; c < 4; ++c) {
        FeatureVector mean(2, 0.0);
        int count = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (result.labels[i] != c) continue;
            ++count;
            for (int dim = 0; dim < 2; ++dim) mean[dim] += points[i][dim];
        }
        REQUIRE(count > 0);
        for (int dim = 0; dim < 2; ++dim) {
            CHECK(result.centroids[c][dim] ==
                  doctest::Approx(mean[dim] / count).epsilon(1e-9));
        }
    }
}

TEST_CASE("kmeans is deterministic for a fixed config") {
    const auto points = random_points(200, 3, 777);
    KMeansConfig config;
    config.k = 3;
    const KMeansResult a = kmeans(points, config);
    const KMeansResult b = kmeans(points, config);
    CHECK(a.labels == b.labels);
    CHECK(a.centroids == b.centroids);
    CHECK(a.inertia == b.inertia);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("seeded random init is reproducible and seed-sensitive") {
    const auto points = random_points(120, 1, 31);
    KMeansConfig config;
    config.k = 4;
    config.init = KMeansInit::RandomSeeded;
    config.seed = 9;
    const KMeansResult a = kmeans(points, config);
    const KMeansResult b = kmeans(points, config);
    CHECK(a.centroids == b.centroids);
    CHECK(a.labels == b.labels);

    std::vector<int> counts(4, 0);
    for (int label : a.labels) ++counts[label];
    for (int c : counts) CHECK(c >= 1);
}

TEST_CASE("shuffling points with pinned seeds keeps the same partition") {
    auto points = random_points(150, 2, 808);
    KMeansConfig config;
    config.k = 3;
    config.initial_centroids = {points[0], points[1], points[2]};

    const KMeansResult before = kmeans(points, config);
    std::map<FeatureVector, int> by_value;
    for (std::size_t i = 0; i < points.size(); ++i) {
        by_value[points[i]] = before.labels[i];
    }

    SplitMix64 rng(3);
    for (std::size_t i = points.size() - 1; i > 0; --i) {
        std::swap(points[i], points[rng.next_below(i + 1)]);
    }
    const KMeansResult after = kmeans(points, config);
    for (std::size_t i = 0; i < points.size(); ++i) {
        CHECK(after.labels[i] == by_value.at(points[i]));
    }
}

TEST_CASE("an emptied cluster is repaired with a far point") {
    const auto points = scalar_points({0.0, 1.0, 2.0, 3.0});
    KMeansConfig config;
    config.k = 3;
    config.initial_centroids = {{0.0}, {5.0}, {100.0}};
    const KMeansResult result = kmeans(points, config);
    std::vector<int> counts(3, 0);
    for (int label : result.labels) ++counts[label];
    for (int c : counts) CHECK(c >= 1);
    CHECK(std::isfinite(result.inertia));
}

TEST_CASE("cluster_image separates a two-tone image exactly") {
    GrayImage img(4, 2);
    img.pixels = {0, 255, 0, 255, 255, 0, 0, 255};
    KMeansConfig config;
    config.k = 2;
    const ClusterImageResult clustered = cluster_image(img, config, false);
    for (std::size_t i = 0; i < img.size(); ++i) {
        CHECK(clustered.label_map[i] == (img.pixels[i] == 255 ? 1 : 0));
    }
}

TEST_CASE("cluster_image on a constant image with k=1") {
    const GrayImage img(6, 6, 42);
    KMeansConfig config;
    config.k = 1;
    const ClusterImageResult clustered = cluster_image(img, config, false);
    CHECK(clustered.result.inertia == 0.0);
    for (int label : clustered.label_map) CHECK(label == 0);
}

TEST_CASE("cluster_image recovers generator levels on a noisy blob") {
    SynthSpec spec;
    spec.noise_sigma = 10.0;
    spec.seed = 5;
    const GrayImage img = generate(spec).image;
    KMeansConfig config;
    config.k = 2;
    const ClusterImageResult clustered = cluster_image(img, config, false);
    std::vector<double> intensities;
    for (const FeatureVector& c : clustered.result.centroids) {
        intensities.push_back(c[0] * 255.0);
    }
    std::sort(intensities.begin(), intensities.end());
    CHECK(intensities[0] == doctest::Approx(60.0).epsilon(2.0 / 60.0));
    CHECK(intensities[1] == doctest::Approx(180.0).epsilon(2.0 / 180.0));
}

TEST_CASE("cluster_image enforces the distinct-intensity precondition") {
    GrayImage img(2, 2);
    img.pixels = {0, 0, 255, 255};
    KMeansConfig config;
    config.k = 3;
    CHECK_THROWS_AS(cluster_image(img, config, false), TooFewDistinctPoints);
}

TEST_CASE("spatial mode clusters on three-dimensional features") {
    SynthSpec spec;
    spec.noise_sigma = 5.0;
    spec.seed = 2;
    const GrayImage img = generate(spec).image;
    KMeansConfig config;
    config.k = 2;
    const ClusterImageResult clustered = cluster_image(img, config, true);
    for (const FeatureVector& c : clustered.result.centroids) {
        CHECK(c.size() == 3);
        for (double coord : c) {
            CHECK(coord >= 0.0);
            CHECK(coord <= 1.0);
        }
    }
}

TEST_CASE("select_cluster brightest picks the bright tone") {
    GrayImage img(4, 1);
    img.pixels = {0, 255, 255, 0};
    KMeansConfig config;
    config.k = 2;
    const ClusterImageResult clustered = cluster_image(img, config, false);
    const BinaryMask mask = select_cluster(clustered, {SelectKind::Brightest, 0});
    CHECK(mask.labels == std::vector<std::uint8_t>{0, 1, 1, 0});
}

TEST_CASE("select_cluster with k=1 keeps every pixel") {
    const GrayImage img(5, 3, 90);
    KMeansConfig config;
    config.k = 1;
    const ClusterImageResult clustered = cluster_image(img, config, false);
    for (SelectKind kind : {SelectKind::Brightest, SelectKind::Largest}) {
        const BinaryMask mask = select_cluster(clustered, {kind, 0});
        for (std::uint8_t label : mask.labels) CHECK(label == 1);
    }
    const BinaryMask indexed = select_cluster(clustered, {SelectKind::Index, 0});
    for (std::uint8_t label : indexed.labels) CHECK(label == 1);
}

TEST_CASE("brightest and largest disagree exactly when the blob is small") {
    KMeansConfig config;
    config.k = 2;

    SynthSpec small;  // disk covers ~20% of the frame
    small.noise_sigma = 10.0;
    small.seed = 9;
    const ClusterImageResult small_run =
        cluster_image(generate(small).image, config, false);
    CHECK(select_cluster(small_run, {SelectKind::Brightest, 0}).labels !=
          select_cluster(small_run, {SelectKind::Largest, 0}).labels);

    SynthSpec big = small;  // radius 60 disk covers ~69%
    big.shape = Disk{64.0, 64.0, 60.0};
    const ClusterImageResult big_run = cluster_image(generate(big).image, config, false);
    CHECK(select_cluster(big_run, {SelectKind::Brightest, 0}).labels ==
          select_cluster(big_run, {SelectKind::Largest, 0}).labels);
}

TEST_CASE("select_cluster validates explicit indices") {
    GrayImage img(4, 1);
    img.pixels = {10, 10, 200, 200};
    KMeansConfig config;
    config.k = 2;
    const ClusterImageResult clustered = cluster_image(img, config, false);
    CHECK_THROWS_AS(select_cluster(clustered, {SelectKind::Index, 2}), IndexOutOfRange);
    CHECK_THROWS_AS(select_cluster(clustered, {SelectKind::Index, -1}), IndexOutOfRange);
    const BinaryMask mask = select_cluster(clustered, {SelectKind::Index, 1});
    CHECK(mask.labels == std::vector<std::uint8_t>{0, 0, 1, 1});
}
