#include <doctest.h>

#include "threshforge/synth.hpp"
#include "threshforge/types.hpp"

#include <cmath>
#include <set>

using namespace threshforge;

TEST_CASE("noiseless disk renders exactly two tones matching the truth") {
    const SynthOutput out = generate(SynthSpec{});
    std::set<std::uint8_t> values(out.image.pixels.begin(), out.image.pixels.end());
    CHECK(values == std::set<std::uint8_t>{60, 180});
    for (std::size_t i = 0; i < out.image.size(); ++i) {
        CHECK(out.truth.labels[i] == (out.image.pixels[i] == 180 ? 1 : 0));
    }
}

TEST_CASE("equal SynthSpec and seed give identical output") {
    SynthSpec spec;
    spec.noise_sigma = 30.0;
    spec.seed = 12;
    const SynthOutput a = generate(spec);
    const SynthOutput b = generate(spec);
    CHECK(a.image == b.image);
    CHECK(a.truth == b.truth);

    spec.seed = 13;
    CHECK(generate(spec).image.pixels != a.image.pixels);
}

TEST_CASE("the truth mask ignores noise settings") {
    SynthSpec clean;
    SynthSpec noisy;
    noisy.noise_sigma = 30.0;
    noisy.seed = 99;
    CHECK(generate(clean).truth == generate(noisy).truth);
}

TEST_CASE("noise residuals have close to the requested deviation") {
    SynthSpec clean;
    SynthSpec noisy;
    noisy.noise_sigma = 30.0;
    noisy.seed = 4;
    const SynthOutput base = generate(clean);
    const SynthOutput out = generate(noisy);
    double sum = 0.0;
    double sumsq = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < out.image.size(); ++i) {
        if (base.truth.labels[i] != 1) continue;
        const double r =
            static_cast<double>(out.image.pixels[i]) - base.image.pixels[i];
        sum += r;
        sumsq += r * r;
        ++n;
    }
    const double mean = sum / static_cast<double>(n);
    const double std_dev = std::sqrt(sumsq / static_cast<double>(n) - mean * mean);
    CHECK(std_dev > 27.0);
    CHECK(std_dev < 33.0);
}

TEST_CASE("tri-lobe is a face with ears and a stalk") {
    SynthSpec spec;
    spec.shape = TriLobe{64.0, 64.0, 30.0};
    const SynthOutput out = generate(spec);

    const auto label_at = [&](int x, int y) {
        return out.truth.labels[static_cast<std::size_t>(y) * spec.width + x];
    };
    CHECK(label_at(64, 64) == 1);   // face center
    CHECK(label_at(40, 37) == 1);   // left ear center (64-24, 64-27)
    CHECK(label_at(88, 37) == 1);   // right ear center
    CHECK(label_at(64, 110) == 1);  // stalk tip (1.6r below center)
    CHECK(label_at(64, 10) == 0);   // above everything
    CHECK(label_at(2, 2) == 0);
    CHECK(label_at(30, 120) == 0);  // beside the stalk

    SynthSpec plain;
    plain.shape = Disk{64.0, 64.0, 30.0};
    std::size_t lobed = 0, plain_count = 0;
    for (std::uint8_t l : out.truth.labels) lobed += l;
    for (std::uint8_t l : generate(plain).truth.labels) plain_count += l;
    CHECK(lobed > plain_count);
}

TEST_CASE("shapes must fit inside the frame") {
    SynthSpec spec;
    spec.shape = Disk{10.0, 64.0, 32.0};
    CHECK_THROWS_AS(generate(spec), ShapeOutOfBounds);

    SynthSpec lobe;
    lobe.shape = TriLobe{64.0, 64.0, 45.0};
    CHECK_THROWS_AS(generate(lobe), ShapeOutOfBounds);
}

TEST_CASE("generate validates levels and noise") {
    SynthSpec same_levels;
    same_levels.fg_level = 90;
    same_levels.bg_level = 90;
    CHECK_THROWS_AS(generate(same_levels), FormatError);

    SynthSpec negative_noise;
    negative_noise.noise_sigma = -1.0;
    CHECK_THROWS_AS(generate(negative_noise), InvalidSigma);
}

TEST_CASE("clean comparison runs score zero for both methods") {
    PipelineConfig config;
    config.k = 2;
    const ComparisonReport report = run_comparison(SynthSpec{}, config, 4);
    CHECK(report.n_seeds == 4);
    CHECK(report.rows.size() == 4);
    for (const ComparisonRow& row : report.rows) {
        CHECK(row.classic_rate == 0.0);
        CHECK(row.improved_rate == 0.0);
    }
    CHECK(report.classic_mean == 0.0);
    CHECK(report.improved_mean == 0.0);
    CHECK(report.ties == 4);
}

TEST_CASE("single-seed comparison has exactly one ordered row") {
    PipelineConfig config;
    config.k = 2;
    const ComparisonReport report = run_comparison(SynthSpec{}, config, 1);
    CHECK(report.rows.size() == 1);
    CHECK(report.rows[0].seed == 1);
}

TEST_CASE("comparison rows are seed-ordered and summary fields recompute") {
    SynthSpec spec;
    spec.noise_sigma = 30.0;
    const ComparisonReport report = run_comparison(spec, PipelineConfig{}, 6);
    double classic_sum = 0.0, improved_sum = 0.0;
    int wins = 0;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        CHECK(report.rows[i].seed == i + 1);
        classic_sum += report.rows[i].classic_rate;
        improved_sum += report.rows[i].improved_rate;
        if (report.rows[i].improved_rate < report.rows[i].classic_rate) ++wins;
    }
    CHECK(report.classic_mean == doctest::Approx(classic_sum / 6.0));
    CHECK(report.improved_mean == doctest::Approx(improved_sum / 6.0));
    CHECK(report.improved_wins == wins);
    CHECK(report.improved_wins + report.classic_wins + report.ties == 6);
    CHECK(report.improved_mean < report.classic_mean);
}
