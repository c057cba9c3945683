#pragma once

#include "threshforge/types.hpp"

#include <cstdint>
#include <vector>

namespace threshforge {

using FeatureVector = std::vector<double>;

enum class KMeansInit { FirstK, RandomSeeded };

struct KMeansConfig {
    int k = 1;
    KMeansInit init = KMeansInit::FirstK;
    std::uint64_t seed = 0;
    int max_iter = 100;
    double tol = 1e-6;
    /// When non-empty, used verbatim instead of the init tag. Must hold
    /// exactly k distinct vectors of the points' dimensionality.
    std::vector<FeatureVector> initial_centroids;
};

struct KMeansResult {
    std::vector<FeatureVector> centroids;
    std::vector<int> labels;
    int iterations = 0;
    /// Sum of squared distances to the final centroids.
    double inertia = 0.0;
    /// Inertia measured after each assignment step, one entry per
    /// Lloyd iteration. Non-increasing.
    std::vector<double> inertia_history;
};

double euclidean_distance(const FeatureVector& p, const FeatureVector& q);

/// Lloyd iterations: assign each point to the nearest centroid (ties to
/// the lowest cluster index), recompute centroids as member means, stop
/// when the largest centroid movement is <= tol or after max_iter
/// rounds. Deterministic for a fixed config, including across thread
/// counts. A cluster left empty by an update is repaired by moving the
/// point currently farthest from its centroid into it.
KMeansResult kmeans(const std::vector<FeatureVector>& points, const KMeansConfig& config);

struct ClusterImageResult {
    KMeansResult result;
    int width = 0;
    int height = 0;
    /// Per-pixel cluster index, row-major.
    std::vector<int> label_map;
};

/// Clusters pixels as feature vectors: [v/255], or [v/255, x/width,
/// y/height] in spatial mode. Default initial centroids are drawn from
/// the sorted distinct intensities at evenly spaced quantiles, so runs
/// are reproducible without a seed.
ClusterImageResult cluster_image(const GrayImage& img, const KMeansConfig& config,
                                 bool spatial = false);

enum class SelectKind { Brightest, Largest, Index };

struct SelectRule {
    SelectKind kind = SelectKind::Brightest;
    int index = 0;
};

/// Mask of the pixels in one cluster: the one with the highest centroid
/// intensity, the most members, or an explicit index. Ties go to the
/// lowest cluster index.
BinaryMask select_cluster(const ClusterImageResult& clustered, const SelectRule& rule);

}  // namespace threshforge
