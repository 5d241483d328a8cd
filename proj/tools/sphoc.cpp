// sphoc: encode annotations, simulate noisy maps, spot queries, evaluate detections.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>
#include <fmt/core.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "sphoc/alphabet.hpp"
#include "sphoc/bbox.hpp"
#include "sphoc/encoder.hpp"
#include "sphoc/error.hpp"
#include "sphoc/evaluation.hpp"
#include "sphoc/io.hpp"
#include "sphoc/oracle_sim.hpp"
#include "sphoc/simd/kernels.hpp"
#include "sphoc/spotting.hpp"

namespace {

using namespace sphoc;

enum Exit : int { kOk = 0, kUsage = 2, kIo = 3, kNoQueries = 4 };

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::IoError:
            return kIo;
        default:
            return kUsage;
    }
}

void init_logging() {
    auto logger = spdlog::stderr_color_mt("sphoc");
    logger->set_pattern("sphoc: %^%l%$: %v");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::err);
    if (const char* env = std::getenv("SPHOC_LOG")) {
        const std::string level = env;
        if (level == "debug")
            spdlog::set_level(spdlog::level::debug);
        else if (level == "info")
            spdlog::set_level(spdlog::level::info);
        else if (level != "error")
            spdlog::warn("ignoring SPHOC_LOG={} (expected error, info or debug)", level);
    }
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
    out << bytes;
    if (!out) throw Error(ErrorCode::IoError, "failed to write " + path);
}

// ---- encode / simulate --------------------------------------------------------

struct SceneArgs {
    std::string annotation;
    int width = 0;
    int height = 0;
    std::string output;
};

void add_scene_args(CLI::App& cmd, SceneArgs& args) {
    cmd.add_option("annotation", args.annotation, "Ground truth: x1,y1,...,x4,y4,transcription per line")->required();
    cmd.add_option("--width", args.width, "Image width in pixels")->required()->check(CLI::PositiveNumber);
    cmd.add_option("--height", args.height, "Image height in pixels")->required()->check(CLI::PositiveNumber);
    cmd.add_option("-o,--output", args.output, "Tensor file to write")->required();
}

int run_encode(const SceneArgs& args, const NoiseConfig* noise) {
    const SceneAnnotation scene = io::read_scene(args.annotation, args.width, args.height);
    spdlog::info("{}: {} words, {}x{}", args.annotation, scene.words.size(), args.width, args.height);
    const SoftPhocTensor tensor = noise ? simulate(scene, *noise) : embed_scene(scene);
    io::write_tensor(std::filesystem::path(args.output), tensor);
    spdlog::info("wrote {}", args.output);
    return kOk;
}

// ---- spot -----------------------------------------------------------------------

struct SpotArgs {
    std::string tensor;
    std::string queries;
    std::string output;
    std::string scaling = "query-peak";
    unsigned jobs = 1;
    SpottingConfig cfg;
};

int run_spot(SpotArgs& args) {
    args.cfg.heatmap_scaling = args.scaling == "raw" ? HeatmapScaling::None : HeatmapScaling::QueryPeak;
    validate(args.cfg);
    const std::vector<std::string> queries = io::parse_queries(io::read_file(args.queries));
    if (queries.empty()) {
        spdlog::error("{}: no queries", args.queries);
        return kNoQueries;
    }
    const SoftPhocTensor tensor = io::read_tensor(std::filesystem::path(args.tensor));
    spdlog::info("{}: {}x{}, {} queries, kernels {}", args.tensor, tensor.width(), tensor.height(), queries.size(),
                 simd::active().name);

    // Workers claim queries by index; records land in input order.
    std::vector<io::SpotRecord> records(queries.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < queries.size(); i = next++) {
            io::SpotRecord& r = records[i];
            r.query = queries[i];
            r.detection = spot(tensor, queries[i], args.cfg);
            if (r.detection) {
                const std::size_t n = transcription_to_classes(queries[i]).size();
                r.box = line_to_bbox(r.detection->segment, n, static_cast<int>(tensor.width()),
                                     static_cast<int>(tensor.height()));
                spdlog::debug("{}: dtw {:.6f} over {} candidates", queries[i], r.detection->dtw_distance,
                              r.detection->candidates_considered);
            } else {
                spdlog::debug("{}: not found", queries[i]);
            }
        }
    };
    const unsigned jobs = std::clamp<unsigned>(args.jobs, 1, static_cast<unsigned>(queries.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
        worker();
    }

    std::ostringstream out;
    io::write_records(out, records);
    if (args.output.empty() || args.output == "-")
        std::cout << out.str() << std::flush;
    else
        write_file(args.output, out.str());
    return kOk;
}

// ---- eval -----------------------------------------------------------------------

struct EvalArgs {
    std::string detections;
    std::string ground_truth;
    std::string mode = "line";
    double threshold = 0.5;
    std::string report;
};

int run_eval(const EvalArgs& args) {
    const std::vector<io::SpotRecord> records = io::parse_records(io::read_file(args.detections));
    const SceneAnnotation gt{0, 0, io::read_annotation(args.ground_truth)};
    std::vector<std::string> queries;
    for (const auto& r : records) queries.push_back(r.query);

    EvalReport report;
    if (args.mode == "line") {
        std::vector<Detection> dets;
        for (const auto& r : records)
            if (r.detection) dets.push_back(*r.detection);
        report = evaluate_lines(dets, gt, args.threshold, queries);
    } else {
        // A found row without a box cannot overlap anything: it still counts as a detection.
        std::vector<BoxDetection> boxes;
        for (const auto& r : records)
            if (r.detection) boxes.emplace_back(r.query, r.box.value_or(BoundingBox{}));
        report = evaluate_bboxes(boxes, gt, args.threshold, queries);
    }

    const bool line = args.mode == "line";
    const char* third = line ? "accuracy" : "hmean";
    const double third_value = line ? report.accuracy() : report.hmean();
    fmt::print("mode\t{}\nthreshold\t{}\nprecision\t{:.6f}\nrecall\t{:.6f}\n{}\t{:.6f}\n", args.mode, args.threshold,
               report.precision(), report.recall(), third, third_value);
    fmt::print("true_positives\t{}\nfalse_positives\t{}\nfalse_negatives\t{}\n", report.true_positives,
               report.false_positives, report.false_negatives);

    nlohmann::ordered_json json;
    json["mode"] = args.mode;
    json["threshold"] = args.threshold;
    json["precision"] = report.precision();
    json["recall"] = report.recall();
    json[third] = third_value;
    json["true_positives"] = report.true_positives;
    json["false_positives"] = report.false_positives;
    json["false_negatives"] = report.false_negatives;
    const std::string path = args.report.empty() ? args.detections + ".eval.json" : args.report;
    write_file(path, json.dump(2) + "\n");
    spdlog::info("wrote {}", path);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    init_logging();

    CLI::App app{"Soft-PHOC word spotting on character probability maps"};
    app.require_subcommand(1);

    SceneArgs encode_args;
    auto* encode_cmd = app.add_subcommand("encode", "Write the ground-truth probability map of an annotated scene");
    add_scene_args(*encode_cmd, encode_args);

    SceneArgs sim_args;
    NoiseConfig noise;
    auto* sim_cmd = app.add_subcommand("simulate", "Write a corrupted probability map standing in for a network");
    add_scene_args(*sim_cmd, sim_args);
    sim_cmd->add_option("--blur-sigma", noise.blur_sigma, "Gaussian blur sigma in pixels")->check(CLI::NonNegativeNumber);
    sim_cmd->add_option("--confusion-rate", noise.confusion_rate, "Mass spread uniformly over the character classes")
        ->check(CLI::Range(0.0, 1.0));
    sim_cmd->add_option("--background-leak", noise.background_leak, "Mass moved from text to background")
        ->check(CLI::Range(0.0, 1.0));
    sim_cmd->add_option("--seed", noise.seed, "Accepted for reproducibility; the corruption is deterministic");

    SpotArgs spot_args;
    auto* spot_cmd = app.add_subcommand("spot", "Find the best line for each query");
    spot_cmd->add_option("tensor", spot_args.tensor, "Probability map")->required();
    spot_cmd->add_option("queries", spot_args.queries, "One query per line")->required();
    spot_cmd->add_option("-o,--output", spot_args.output, "Detection file (default stdout)");
    spot_cmd->add_option("-j,--jobs", spot_args.jobs, "Worker threads")->check(CLI::PositiveNumber);
    spot_cmd->add_option("--threshold", spot_args.cfg.heatmap_threshold, "Bigram heatmap threshold")
        ->check(CLI::Range(0.0, 1.0));
    spot_cmd->add_option("--scaling", spot_args.scaling, "Threshold relative to the query's peak, or raw")
        ->check(CLI::IsMember({"query-peak", "raw"}));
    spot_cmd->add_option("--rho-res", spot_args.cfg.hough_rho_res, "Hough rho resolution (px)");
    spot_cmd->add_option("--theta-res", spot_args.cfg.hough_theta_res, "Hough theta resolution (deg)");
    spot_cmd->add_option("--min-votes", spot_args.cfg.hough_min_votes, "Minimum accumulator votes");
    spot_cmd->add_option("--nms-rho", spot_args.cfg.nms_rho, "Suppression window in rho (px)");
    spot_cmd->add_option("--nms-theta", spot_args.cfg.nms_theta, "Suppression window in theta (deg)");
    spot_cmd->add_option("--max-candidates", spot_args.cfg.max_candidates, "Lines scored per query");
    spot_cmd->add_option("--gap-bridge", spot_args.cfg.gap_bridge, "Largest unsupported gap inside a segment (px)");
    spot_cmd->add_option("--band", spot_args.cfg.band_halfwidth, "Support band half-width (px)");
    spot_cmd->add_option("--samples-per-char", spot_args.cfg.query_samples_per_char, "Query descriptor samples per character");

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "Score detections against ground truth");
    eval_cmd->add_option("detections", eval_args.detections, "Output of spot")->required();
    eval_cmd->add_option("ground_truth", eval_args.ground_truth, "Annotation file")->required();
    eval_cmd->add_option("--mode", eval_args.mode, "line or bbox")->check(CLI::IsMember({"line", "bbox"}));
    eval_cmd->add_option("--threshold", eval_args.threshold, "Overlap (line) or IoU (bbox) threshold in (0, 1]");
    eval_cmd->add_option("--report", eval_args.report, "JSON report path (default DETECTIONS.eval.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*encode_cmd) return run_encode(encode_args, nullptr);
        if (*sim_cmd) {
            validate(noise);
            return run_encode(sim_args, &noise);
        }
        if (*spot_cmd) return run_spot(spot_args);
        if (!(eval_args.threshold > 0.0 && eval_args.threshold <= 1.0)) {
            spdlog::error("--threshold must lie in (0, 1], got {}", eval_args.threshold);
            return kUsage;
        }
        return run_eval(eval_args);
    } catch (const Error& e) {
        spdlog::error("{}", e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kIo;
    }
}
