#include "threshforge/kmeans.hpp"

#include "threshforge/parallel.hpp"
#include "threshforge/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace threshforge {

namespace {

double squared_distance(const FeatureVector& p, const FeatureVector& q) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = q[i] - p[i];
        acc += d * d;
    }
    return acc;
}

// Distinct points in first-appearance order.
std::vector<FeatureVector> distinct_points(const std::vector<FeatureVector>& points) {
    std::set<FeatureVector> seen;
    std::vector<FeatureVector> out;
    for (const auto& p : points) {
        if (seen.insert(p).second) out.push_back(p);
    }
    return out;
}

std::vector<FeatureVector> initial_centroids(const std::vector<FeatureVector>& points,
                                             const KMeansConfig& config) {
    if (!config.initial_centroids.empty()) {
        if (static_cast<int>(config.initial_centroids.size()) != config.k) {
            throw DimensionMismatch("explicit initial centroids must match k");
        }
        return config.initial_centroids;
    }
    std::vector<FeatureVector> distinct = distinct_points(points);
    if (static_cast<int>(distinct.size()) < config.k) {
        throw TooFewDistinctPoints("need at least k distinct points, have " +
                                   std::to_string(distinct.size()));
    }
    if (config.init == KMeansInit::FirstK) {
        return {distinct.begin(), distinct.begin() + config.k};
    }
    // Seeded partial Fisher-Yates over the distinct points.
    SplitMix64 rng(config.seed);
    std::vector<std::size_t> idx(distinct.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<FeatureVector> out;
    out.reserve(config.k);
    for (int i = 0; i < config.k; ++i) {
        const std::size_t j = i + rng.next_below(idx.size() - i);
        std::swap(idx[i], idx[j]);
        out.push_back(distinct[idx[i]]);
    }
    return out;
}

}  // namespace

double euclidean_distance(const FeatureVector& p, const FeatureVector& q) {
    if (p.size() != q.size()) {
        throw DimensionMismatch("points have dimensions " + std::to_string(p.size()) +
                                " and " + std::to_string(q.size()));
    }
    return std::sqrt(squared_distance(p, q));
}

KMeansResult kmeans(const std::vector<FeatureVector>& points, const KMeansConfig& config) {
    if (points.empty()) throw EmptyInput("no points to cluster");
    if (config.k < 1) throw TooFewDistinctPoints("k must be >= 1");
    const std::size_t dim = points[0].size();
    for (const auto& p : points) {
        if (p.size() != dim) throw DimensionMismatch("points differ in dimensionality");
    }

    const int k = config.k;
    const std::size_t n = points.size();
    std::vector<FeatureVector> centroids = initial_centroids(points, config);
    for (const auto& c : centroids) {
        if (c.size() != dim) throw DimensionMismatch("centroid dimensionality mismatch");
    }

    KMeansResult result;
    result.labels.assign(n, 0);
    std::vector<double> best_d2(n, 0.0);

    for (int it = 1; it <= config.max_iter; ++it) {
        // Assignment. Each point writes only its own slots, so the
        // outcome is identical for any thread count. Tiny inputs skip
        // the thread pool; spawning would dominate the work.
        const auto assign = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                int best = 0;
                double bd = squared_distance(points[i], centroids[0]);
                for (int c = 1; c < k; ++c) {
                    const double d = squared_distance(points[i], centroids[c]);
                    if (d < bd) {
                        bd = d;
                        best = c;
                    }
                }
                result.labels[i] = best;
                best_d2[i] = bd;
            }
        };
        if (n < 4096) {
            assign(0, n);
        } else {
            parallel_for(n, assign);
        }

        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) inertia += best_d2[i];
        result.inertia_history.push_back(inertia);
        result.iterations = it;

        // Update: per-cluster running sums in point order.
        std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
        std::vector<std::size_t> counts(k, 0);
        std::vector<double> cluster_d2(k, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const int c = result.labels[i];
            ++counts[c];
            cluster_d2[c] += best_d2[i];
            for (std::size_t d = 0; d < dim; ++d) sums[c][d] += points[i][d];
        }

        // Empty-cluster repair: hand the empty cluster the point
        // farthest from its centroid, drawn from a cluster with at
        // least two members so the donor stays populated.
        for (int c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            std::size_t donor = n;
            double far = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[result.labels[i]] < 2) continue;
                if (best_d2[i] > far) {
                    far = best_d2[i];
                    donor = i;
                }
            }
            const int old = result.labels[donor];
            --counts[old];
            ++counts[c];
            result.labels[donor] = c;
            best_d2[donor] = 0.0;
            // Both clusters changed membership; their accumulated
            // distances no longer describe them.
            cluster_d2[old] = cluster_d2[c] = std::numeric_limits<double>::infinity();
            for (std::size_t d = 0; d < dim; ++d) {
                sums[old][d] -= points[donor][d];
                sums[c][d] += points[donor][d];
            }
        }

        double movement = 0.0;
        for (int c = 0; c < k; ++c) {
            // Every member sits exactly on the centroid: the mean is the
            // centroid itself, so skip the rounding-prone resummation.
            if (cluster_d2[c] == 0.0) continue;
            FeatureVector next(dim);
            for (std::size_t d = 0; d < dim; ++d) {
                next[d] = sums[c][d] / static_cast<double>(counts[c]);
            }
            movement = std::max(movement, euclidean_distance(centroids[c], next));
            centroids[c] = std::move(next);
        }
        if (movement <= config.tol) break;
    }

    result.centroids = std::move(centroids);
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        inertia += squared_distance(points[i], result.centroids[result.labels[i]]);
    }
    result.inertia = inertia;
    return result;
}

ClusterImageResult cluster_image(const GrayImage& img, const KMeansConfig& config,
                                 bool spatial) {
    if (img.empty()) throw EmptyImage("cluster_image of an empty image");

    const Histogram hist = histogram(img);
    std::vector<int> distinct_values;
    for (int v = 0; v < 256; ++v) {
        if (hist.bins[v] > 0) distinct_values.push_back(v);
    }
    if (!spatial && static_cast<int>(distinct_values.size()) < config.k) {
        throw TooFewDistinctPoints("image has " + std::to_string(distinct_values.size()) +
                                   " distinct intensities, k is " + std::to_string(config.k));
    }

    const std::size_t n = img.size();
    std::vector<FeatureVector> features(n);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * img.width + x;
            const double v = img.pixels[i] / 255.0;
            if (spatial) {
                features[i] = {v, static_cast<double>(x) / img.width,
                               static_cast<double>(y) / img.height};
            } else {
                features[i] = {v};
            }
        }
    }

    KMeansConfig cfg = config;
    if (cfg.initial_centroids.empty() && cfg.init == KMeansInit::FirstK) {
        // Reproducible default: seed centroids from the sorted distinct
        // intensities at evenly spaced quantiles, each realized as the
        // first pixel carrying that intensity. Spatial runs on images
        // with fewer distinct intensities than k fall back to the
        // generic first-k-distinct-points rule.
        const int m = static_cast<int>(distinct_values.size());
        if (m >= cfg.k) {
            cfg.initial_centroids.reserve(cfg.k);
            for (int i = 0; i < cfg.k; ++i) {
                const int value = distinct_values[(2 * i + 1) * m / (2 * cfg.k)];
                const std::size_t pos =
                    std::find(img.pixels.begin(), img.pixels.end(),
                              static_cast<std::uint8_t>(value)) -
                    img.pixels.begin();
                cfg.initial_centroids.push_back(features[pos]);
            }
        }
    }

    ClusterImageResult out;
    out.result = kmeans(features, cfg);
    out.width = img.width;
    out.height = img.height;
    out.label_map = out.result.labels;
    return out;
}

BinaryMask select_cluster(const ClusterImageResult& clustered, const SelectRule& rule) {
    const int k = static_cast<int>(clustered.result.centroids.size());
    int chosen = 0;
    switch (rule.kind) {
        case SelectKind::Brightest: {
            double best = clustered.result.centroids[0][0];
            for (int c = 1; c < k; ++c) {
                if (clustered.result.centroids[c][0] > best) {
                    best = clustered.result.centroids[c][0];
                    chosen = c;
                }
            }
            break;
        }
        case SelectKind::Largest: {
            std::vector<std::size_t> counts(k, 0);
            for (int label : clustered.label_map) ++counts[label];
            std::size_t best = counts[0];
            for (int c = 1; c < k; ++c) {
                if (counts[c] > best) {
                    best = counts[c];
                    chosen = c;
                }
            }
            break;
        }
        case SelectKind::Index: {
            if (rule.index < 0 || rule.index >= k) {
                throw IndexOutOfRange("cluster index " + std::to_string(rule.index) +
                                      " outside [0, " + std::to_string(k) + ")");
            }
            chosen = rule.index;
            break;
        }
    }

    BinaryMask mask(clustered.width, clustered.height);
    for (std::size_t i = 0; i < clustered.label_map.size(); ++i) {
        mask.labels[i] = clustered.label_map[i] == chosen ? 1 : 0;
    }
    return mask;
}

}  // namespace threshforge
