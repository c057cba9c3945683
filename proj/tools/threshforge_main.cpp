#include <CLI11.hpp>

#include "threshforge/gaussian.hpp"
#include "threshforge/image_io.hpp"
#include "threshforge/kmeans.hpp"
#include "threshforge/otsu.hpp"
#include "threshforge/pipeline.hpp"
#include "threshforge/ringcheck.hpp"
#include "threshforge/serialize.hpp"
#include "threshforge/synth.hpp"
#include "threshforge/types.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace threshforge;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IoError("failed writing " + path);
}

void write_json(const std::string& path, const nlohmann::json& j) {
    write_text(path, j.dump(2) + "\n");
}

SelectRule parse_select(const std::string& text) {
    SelectRule rule;
    if (text == "brightest") {
        rule.kind = SelectKind::Brightest;
    } else if (text == "largest") {
        rule.kind = SelectKind::Largest;
    } else if (text.rfind("index:", 0) == 0) {
        rule.kind = SelectKind::Index;
        const std::string num = text.substr(6);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos) {
            throw UsageError("--select index wants a non-negative integer, got '" +
                             text + "'");
        }
        rule.index = std::stoi(num);
    } else {
        throw UsageError("--select must be brightest, largest or index:N, got '" +
                         text + "'");
    }
    return rule;
}

StageOrder parse_order(const std::string& text) {
    if (text == "cluster-first") return StageOrder::ClusterFirst;
    if (text == "smooth-first") return StageOrder::SmoothFirst;
    throw UsageError("--order must be cluster-first or smooth-first, got '" + text +
                     "'");
}

struct ShapeFlags {
    std::string shape = "disk";
    int width = 128;
    int height = 128;
    int fg = 180;
    int bg = 60;
    double noise = 0.0;
    double cx = -1.0;
    double cy = -1.0;
    double r = -1.0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--shape", shape, "Shape: disk or tri-lobe")
            ->check(CLI::IsMember({"disk", "tri-lobe"}));
        cmd->add_option("--width", width, "Image width")->check(CLI::PositiveNumber);
        cmd->add_option("--height", height, "Image height")->check(CLI::PositiveNumber);
        cmd->add_option("--fg", fg, "Foreground intensity")->check(CLI::Range(0, 255));
        cmd->add_option("--bg", bg, "Background intensity")->check(CLI::Range(0, 255));
        cmd->add_option("--noise", noise, "Additive Gaussian noise std");
        cmd->add_option("--cx", cx, "Shape center x (default: width/2)");
        cmd->add_option("--cy", cy, "Shape center y (default: height/2)");
        cmd->add_option("--r", r, "Shape radius (default: min(width,height)/4)");
    }

    SynthSpec to_spec(std::uint64_t seed) const {
        SynthSpec spec;
        spec.width = width;
        spec.height = height;
        spec.fg_level = fg;
        spec.bg_level = bg;
        spec.noise_sigma = noise;
        spec.seed = seed;
        const double scx = cx >= 0.0 ? cx : width / 2.0;
        const double scy = cy >= 0.0 ? cy : height / 2.0;
        const double sr = r >= 0.0 ? r : std::min(width, height) / 4.0;
        if (shape == "disk") {
            spec.shape = Disk{scx, scy, sr};
        } else {
            spec.shape = TriLobe{scx, scy, sr};
        }
        return spec;
    }
};

int run_otsu(const std::string& in, const std::string& out, const std::string& report) {
    const GrayImage img = read_image(in);
    const BinarizeOutput result = binarize_classic(img);
    if (!out.empty()) write_mask(result.mask, out);
    if (!report.empty()) write_json(report, to_json(result.report.threshold_report));
    std::cout << "threshold=" << result.report.threshold_report.threshold << "\n";
    return 0;
}

struct BinarizeFlags {
    std::string in;
    std::string method;
    int k = 3;
    std::string select = "brightest";
    double sigma = 2.0;
    std::string order = "cluster-first";
    std::string out;
    std::string report;
    bool no_timings = false;
};

int run_binarize(const BinarizeFlags& flags) {
    const GrayImage img = read_image(flags.in);
    BinarizeOutput result;
    if (flags.method == "classic") {
        result = binarize_classic(img);
    } else {
        PipelineConfig config;
        config.k = flags.k;
        config.select = parse_select(flags.select);
        config.sigma = flags.sigma;
        config.order = parse_order(flags.order);
        result = binarize_improved(img, config);
    }
    if (!flags.out.empty()) write_mask(result.mask, flags.out);
    if (!flags.report.empty()) {
        write_json(flags.report, to_json(result.report, !flags.no_timings));
    }
    std::cout << "method=" << result.report.method
              << " threshold=" << result.report.threshold_report.threshold << "\n";
    return 0;
}

int run_blur(const std::string& in, double sigma, const std::string& out,
             bool dump_kernel) {
    const GrayImage img = read_image(in);
    const GaussianKernel kernel = kernel_1d(sigma);  // validates sigma up front
    if (dump_kernel) {
        std::cout << nlohmann::json(kernel.weights).dump() << "\n";
    }
    if (!out.empty()) write_image(smooth(img, sigma), out);
    return 0;
}

struct KMeansFlags {
    std::string in;
    int k = 0;
    bool spatial = false;
    std::optional<std::uint64_t> seed;
    std::string labels_out;
    std::string report;
};

int run_kmeans(const KMeansFlags& flags) {
    const GrayImage img = read_image(flags.in);
    KMeansConfig config;
    config.k = flags.k;
    if (flags.seed) {
        config.init = KMeansInit::RandomSeeded;
        config.seed = *flags.seed;
    }
    const ClusterImageResult clustered = cluster_image(img, config, flags.spatial);
    if (!flags.labels_out.empty()) {
        GrayImage labels(clustered.width, clustered.height);
        for (std::size_t i = 0; i < labels.pixels.size(); ++i) {
            const int label = clustered.label_map[i];
            labels.pixels[i] = static_cast<std::uint8_t>(
                flags.k > 1 ? label * 255 / (flags.k - 1) : 0);
        }
        write_image(labels, flags.labels_out);
    }
    if (!flags.report.empty()) write_json(flags.report, to_json(clustered.result));
    std::cout << "iterations=" << clustered.result.iterations
              << " inertia=" << clustered.result.inertia << "\n";
    return 0;
}

int run_synth(const ShapeFlags& shape, std::uint64_t seed, const std::string& out,
              const std::string& truth_out) {
    const SynthOutput result = generate(shape.to_spec(seed));
    write_image(result.image, out);
    write_mask(result.truth, truth_out);
    return 0;
}

struct CompareFlags {
    ShapeFlags shape;
    int seeds = 20;
    int k = 3;
    std::string select = "brightest";
    double sigma = 2.0;
    std::string order = "cluster-first";
    std::string csv;
    std::string report;
};

int run_compare(const CompareFlags& flags) {
    PipelineConfig config;
    config.k = flags.k;
    config.select = parse_select(flags.select);
    config.sigma = flags.sigma;
    config.order = parse_order(flags.order);

    const ComparisonReport report =
        run_comparison(flags.shape.to_spec(1), config, flags.seeds);
    if (!flags.csv.empty()) write_text(flags.csv, comparison_csv(report));
    if (!flags.report.empty()) write_json(flags.report, to_json(report));
    std::cout << "seeds=" << report.n_seeds << " improved_wins=" << report.improved_wins
              << " classic_mean=" << report.classic_mean
              << " improved_mean=" << report.improved_mean << "\n";
    return 0;
}

int run_ringcheck(bool exhaustive, std::optional<std::uint64_t> sample,
                  std::uint64_t seed, const std::string& report_path) {
    AxiomReport report;
    if (sample && !exhaustive) {
        report = verify_ring_axioms_sampled(*sample, seed);
    } else {
        report = verify_ring_axioms_exhaustive();
    }
    for (const AxiomCheck& check : report.axioms) {
        if (check.failures == 0) {
            std::cout << "PASS " << check.name << " (" << check.checks << " checks)\n";
        } else {
            std::cout << "FAIL " << check.name << " (" << check.failures << " of "
                      << check.checks << " checks)";
            if (check.first_failure) {
                const Counterexample& ce = *check.first_failure;
                std::cout << " first at a=" << ce.a << " b=" << ce.b;
                if (ce.ternary) std::cout << " c=" << ce.c;
                std::cout << ": " << ce.lhs << " != " << ce.rhs;
            }
            std::cout << "\n";
        }
    }
    if (!report_path.empty()) write_json(report_path, to_json(report));
    return report.all_passed ? 0 : 1;
}

int exit_code_for(const Error& e) {
    if (dynamic_cast<const InvalidSigma*>(&e)) return 2;
    if (dynamic_cast<const IndexOutOfRange*>(&e)) return 2;
    if (dynamic_cast<const DegenerateHistogram*>(&e)) return 4;
    if (dynamic_cast<const TooFewDistinctPoints*>(&e)) return 4;
    if (dynamic_cast<const EmptyInput*>(&e)) return 4;
    return 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"threshforge: Otsu and cluster-guided image binarization"};
    app.require_subcommand(1);

    std::string otsu_in, otsu_out, otsu_report;
    CLI::App* otsu_cmd = app.add_subcommand("otsu", "Classic Otsu binarization");
    otsu_cmd->add_option("input", otsu_in, "Input image (PGM or PNG)")->required();
    otsu_cmd->add_option("--out", otsu_out, "Output mask path");
    otsu_cmd->add_option("--report", otsu_report, "Threshold report JSON path");

    BinarizeFlags bin;
    CLI::App* bin_cmd = app.add_subcommand("binarize", "Classic or improved pipeline");
    bin_cmd->add_option("input", bin.in, "Input image (PGM or PNG)")->required();
    bin_cmd->add_option("--method", bin.method, "classic or improved")
        ->required()
        ->check(CLI::IsMember({"classic", "improved"}));
    bin_cmd->add_option("--k", bin.k, "Cluster count")->check(CLI::PositiveNumber);
    bin_cmd->add_option("--select", bin.select, "brightest, largest or index:N");
    bin_cmd->add_option("--sigma", bin.sigma, "Gaussian sigma");
    bin_cmd->add_option("--order", bin.order, "cluster-first or smooth-first");
    bin_cmd->add_option("--out", bin.out, "Output mask path");
    bin_cmd->add_option("--report", bin.report, "Run report JSON path");
    bin_cmd->add_flag("--no-timings", bin.no_timings,
                      "Omit timings from the report for byte-stable output");

    std::string blur_in, blur_out;
    double blur_sigma = 0.0;
    bool blur_dump = false;
    CLI::App* blur_cmd = app.add_subcommand("blur", "Gaussian smoothing only");
    blur_cmd->add_option("input", blur_in, "Input image (PGM or PNG)")->required();
    blur_cmd->add_option("--sigma", blur_sigma, "Gaussian sigma")->required();
    blur_cmd->add_option("--out", blur_out, "Output image path");
    blur_cmd->add_flag("--dump-kernel", blur_dump, "Print kernel weights as JSON");

    KMeansFlags km;
    CLI::App* km_cmd = app.add_subcommand("kmeans", "Cluster image intensities");
    km_cmd->add_option("input", km.in, "Input image (PGM or PNG)")->required();
    km_cmd->add_option("--k", km.k, "Cluster count")
        ->required()
        ->check(CLI::PositiveNumber);
    km_cmd->add_flag("--spatial", km.spatial, "Add normalized x,y features");
    km_cmd->add_option("--seed", km.seed,
                       "Seeded random init over distinct points (default: quantile)");
    km_cmd->add_option("--labels-out", km.labels_out,
                       "Label image path (labels scaled to [0,255])");
    km_cmd->add_option("--report", km.report, "Clustering report JSON path");

    ShapeFlags synth_shape;
    std::uint64_t synth_seed = 1;
    std::string synth_out, synth_truth;
    CLI::App* synth_cmd = app.add_subcommand("synth", "Render a synthetic test image");
    synth_shape.add_to(synth_cmd);
    synth_cmd->add_option("--seed", synth_seed, "Noise seed");
    synth_cmd->add_option("--out", synth_out, "Output image path")->required();
    synth_cmd->add_option("--truth-out", synth_truth, "Ground-truth mask path")
        ->required();

    CompareFlags cmp;
    CLI::App* cmp_cmd =
        app.add_subcommand("compare", "Benchmark classic vs improved over seeds");
    cmp.shape.add_to(cmp_cmd);
    cmp_cmd->add_option("--seeds", cmp.seeds, "Number of seeds (runs seeds 1..N)")
        ->check(CLI::PositiveNumber);
    cmp_cmd->add_option("--k", cmp.k, "Cluster count")->check(CLI::PositiveNumber);
    cmp_cmd->add_option("--select", cmp.select, "brightest, largest or index:N");
    cmp_cmd->add_option("--sigma", cmp.sigma, "Gaussian sigma");
    cmp_cmd->add_option("--order", cmp.order, "cluster-first or smooth-first");
    cmp_cmd->add_option("--csv", cmp.csv, "Per-seed CSV path");
    cmp_cmd->add_option("--report", cmp.report, "Comparison report JSON path");

    bool ring_exhaustive = false;
    std::optional<std::uint64_t> ring_sample;
    std::uint64_t ring_seed = 0;
    std::string ring_report;
    CLI::App* ring_cmd =
        app.add_subcommand("ringcheck", "Verify ring axioms over Z/256");
    CLI::Option* ring_ex_opt =
        ring_cmd->add_flag("--exhaustive", ring_exhaustive,
                           "Check all pairs and triples (default)");
    ring_cmd->add_option("--sample", ring_sample, "Check N seeded random samples")
        ->excludes(ring_ex_opt);
    ring_cmd->add_option("--seed", ring_seed, "Sampling seed");
    ring_cmd->add_option("--report", ring_report, "Axiom report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (otsu_cmd->parsed()) return run_otsu(otsu_in, otsu_out, otsu_report);
        if (bin_cmd->parsed()) return run_binarize(bin);
        if (blur_cmd->parsed()) return run_blur(blur_in, blur_sigma, blur_out, blur_dump);
        if (km_cmd->parsed()) return run_kmeans(km);
        if (synth_cmd->parsed()) return run_synth(synth_shape, synth_seed, synth_out, synth_truth);
        if (cmp_cmd->parsed()) return run_compare(cmp);
        if (ring_cmd->parsed()) {
            return run_ringcheck(ring_exhaustive, ring_sample, ring_seed, ring_report);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
