// pce: pixel-wise coded exposure toolchain.
//
// Subcommands: gen-matrix, compress, reconstruct, merge-labels, evaluate,
// sweep, demo. Every subcommand is deterministic in its inputs and flags;
// PCE_LOG=error|warn|info|debug controls diagnostics.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "pce/encoder.hpp"
#include "pce/evaluation.hpp"
#include "pce/log.hpp"
#include "pce/metrics.hpp"
#include "pce/reconstruct.hpp"
#include "pce/sweep.hpp"
#include "pce/synthetic.hpp"
#include "pce/video_io.hpp"

namespace fs = std::filesystem;

namespace {

pce::MatrixDistribution parse_distribution(const std::string& name) {
    if (name == "uniform") return pce::MatrixDistribution::uniform();
    if (name == "gaussian") return pce::MatrixDistribution::truncated_gaussian();
    throw pce::ParameterError("cli", "unknown distribution '" + name + "'");
}

pce::Video load_video_auto(const fs::path& path) {
    return pce::load_video(path, fs::is_directory(path)
                                     ? pce::VideoFormat::PgmSequence
                                     : pce::VideoFormat::RawContainer);
}

void save_video_auto(const pce::Video& video, const fs::path& path) {
    const bool container = path.extension() == ".pcev";
    pce::save_video(video, path, container ? pce::VideoFormat::RawContainer
                                           : pce::VideoFormat::PgmSequence);
}

int default_workers() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw pce::IoError("cli", "cannot open '" + path.string() +
                                      "' for writing");
    }
    out << text;
    if (!out) {
        throw pce::IoError("cli", "write failed for '" + path.string() + "'");
    }
}

struct GenMatrixArgs {
    int height = 64;
    int width = 64;
    int chunk_len = 13;
    int bump_len = 3;
    uint64_t seed = 1;
    std::string dist = "uniform";
    std::string out;
};

int run_gen_matrix(const GenMatrixArgs& args) {
    const auto matrix =
        pce::generate_matrix(args.height, args.width, args.chunk_len,
                             args.bump_len, parse_distribution(args.dist),
                             args.seed);
    pce::save_matrix(matrix, args.out);
    std::cout << "wrote " << args.out << " (" << args.height << "x"
              << args.width << ", chunk " << args.chunk_len << ", bump "
              << args.bump_len << ", seed " << args.seed << ")\n";
    return 0;
}

struct CompressArgs {
    std::string in;
    std::string out;
    int compression = 13;
    int bump = 3;
    uint64_t seed = 1;
    std::string dist = "uniform";
    std::string export_mode = "raw";
};

int run_compress(const CompressArgs& args) {
    const pce::Video video = load_video_auto(args.in);
    const pce::CodedSequence sequence =
        pce::encode_video(video, args.compression, args.bump,
                          parse_distribution(args.dist), args.seed);
    if (args.export_mode == "raw" || args.export_mode == "both") {
        pce::export_coded(sequence, args.out, pce::ExportMode::RawSums16Bit);
    }
    if (args.export_mode == "normalized" || args.export_mode == "both") {
        pce::export_coded(sequence, args.out, pce::ExportMode::Normalized8Bit);
    }
    std::cout << "wrote " << sequence.frames.size() << " coded frame(s) to "
              << args.out << " (compression " << args.compression << ", bump "
              << args.bump << ")\n";
    if (sequence.dropped_frames > 0) {
        std::cout << "dropped trailing partial chunk of "
                  << sequence.dropped_frames << " frame(s)\n";
    }
    return 0;
}

struct ReconstructArgs {
    std::string coded;
    std::string matrix;
    std::string out;
    int patch = 7;
    int stride = 3;
    int sparsity = 16;
    double tol = 1e-3;
    bool report_time = false;
    int workers = default_workers();
};

int run_reconstruct(const ReconstructArgs& args) {
    const pce::CodedFrame coded =
        pce::load_coded_frame(args.coded, args.matrix);
    const pce::Dictionary3D dict(args.patch, coded.matrix.chunk_len());
    pce::OmpConfig cfg;
    cfg.max_sparsity = args.sparsity;
    cfg.residual_tol = args.tol;
    cfg.patch_stride = args.stride;
    const pce::ReconstructionResult result =
        pce::reconstruct_chunk(coded, dict, cfg, args.workers);
    save_video_auto(result.video, args.out);
    std::cout << "reconstructed " << result.video.frame_count()
              << " frame(s) to " << args.out << "\n";
    if (args.report_time) {
        std::cout << "reconstruction time: " << result.stats.seconds
                  << " s/coded frame ("
                  << result.stats.seconds / result.video.frame_count()
                  << " s/source frame, " << result.stats.patch_count
                  << " patches)\n";
    }
    return 0;
}

struct MergeLabelsArgs {
    std::string labels;
    int compression = 13;
    double min_conf = 0.99;
    int frames = -1;
    std::string out;
};

int run_merge_labels(const MergeLabelsArgs& args) {
    const auto classes = pce::ClassRegistry::default_classes();
    auto frames = pce::parse_labels(args.labels, classes);
    pce::filter_by_confidence(frames, args.min_conf);
    const auto chunks =
        pce::build_chunk_labels(frames, args.compression, args.frames);
    pce::save_chunk_labels(chunks, args.out, classes);
    std::size_t boxes = 0;
    for (const auto& chunk : chunks) boxes += chunk.boxes.size();
    std::cout << "wrote " << chunks.size() << " chunk label(s) (" << boxes
              << " merged box(es)) to " << args.out << "\n";
    return 0;
}

struct EvaluateArgs {
    std::string det;
    std::string gt;
    std::string out;
};

int run_evaluate(const EvaluateArgs& args) {
    pce::EvalConfig config;
    const auto detections = pce::parse_chunk_labels(args.det, config.classes);
    const auto truth = pce::parse_chunk_labels(args.gt, config.classes);
    const pce::APReport report =
        pce::evaluate(detections.chunks, truth.chunks, config,
                      detections.declared_chunks, truth.declared_chunks);
    if (!args.out.empty()) {
        const fs::path out_path(args.out);
        write_text(out_path, out_path.extension() == ".json"
                                 ? report.to_json()
                                 : report.to_csv());
    } else {
        std::cout << report.to_csv();
    }
    std::cout << "mAP: " << report.mean_ap << "\n";
    return 0;
}

struct SweepArgs {
    std::string video;
    std::string labels;
    std::string axis = "bump";
    std::vector<int> values;
    std::string det_template;
    std::string out;
    uint64_t seed = 1;
    double min_conf = 0.99;
    std::string dist = "uniform";
};

int run_sweep(const SweepArgs& args) {
    const pce::Video video = load_video_auto(args.video);
    const auto classes = pce::ClassRegistry::default_classes();
    const auto labels = pce::parse_labels(args.labels, classes);
    pce::SweepOptions options;
    options.base_seed = args.seed;
    options.min_confidence = args.min_conf;
    options.distribution = parse_distribution(args.dist);
    const pce::SweepAxis axis = args.axis == "compression"
                                    ? pce::SweepAxis::Compression
                                    : pce::SweepAxis::Bump;
    std::optional<std::string> det_template;
    if (!args.det_template.empty()) det_template = args.det_template;
    const pce::SweepTable table =
        pce::sweep(video, labels, axis, args.values, det_template, options);
    if (!args.out.empty()) {
        write_text(args.out, table.to_csv());
        std::cout << "wrote " << table.rows.size() << " sweep row(s) to "
                  << args.out << "\n";
    } else {
        std::cout << table.to_csv();
    }
    return 0;
}

struct DemoArgs {
    int compression = 13;
    int bump = 3;
    uint64_t seed = 1;
    int workers = default_workers();
    std::string out;
};

int run_demo(const DemoArgs& args) {
    // generate -> compress -> reconstruct -> merge-labels -> evaluate on a
    // synthetic moving square, end to end.
    pce::MovingSquareSpec spec;
    spec.frame_count = 4 * args.compression;
    const pce::SyntheticScene scene = pce::moving_square(spec);
    std::cout << "synthetic scene: " << spec.height << "x" << spec.width << "x"
              << spec.frame_count << ", square " << spec.square << "px\n";

    const pce::CodedSequence sequence = pce::encode_video(
        scene.video, args.compression, args.bump,
        pce::MatrixDistribution::uniform(), args.seed);
    std::cout << "coded frames: " << sequence.frames.size()
              << " (compression " << args.compression << "x, bump "
              << args.bump << ")\n";

    const pce::Dictionary3D dict(7, args.compression);
    pce::OmpConfig cfg;
    double psnr_sum = 0.0;
    double naive_sum = 0.0;
    double seconds = 0.0;
    std::vector<uint8_t> recon_pixels;
    for (const pce::CodedFrame& coded : sequence.frames) {
        const pce::ReconstructionResult result =
            pce::reconstruct_chunk(coded, dict, cfg, args.workers);
        const pce::Video original_chunk(
            scene.video.height(), scene.video.width(), args.compression,
            std::vector<uint8_t>(
                scene.video.pixels().begin() +
                    static_cast<std::ptrdiff_t>(coded.chunk_index) *
                        args.compression *
                        static_cast<std::ptrdiff_t>(scene.video.frame_pixels()),
                scene.video.pixels().begin() +
                    static_cast<std::ptrdiff_t>(coded.chunk_index + 1) *
                        args.compression *
                        static_cast<std::ptrdiff_t>(
                            scene.video.frame_pixels())));
        psnr_sum += pce::psnr(result.video, original_chunk);
        naive_sum += pce::psnr(pce::naive_expansion(coded), original_chunk);
        seconds += result.stats.seconds;
        recon_pixels.insert(recon_pixels.end(), result.video.pixels().begin(),
                            result.video.pixels().end());
    }
    const double chunks = static_cast<double>(sequence.frames.size());
    std::cout << "reconstruction PSNR: " << psnr_sum / chunks
              << " dB (naive baseline " << naive_sum / chunks << " dB)\n";
    std::cout << "reconstruction time: " << seconds / chunks
              << " s/coded frame\n";

    auto truth = pce::build_chunk_labels(scene.labels, args.compression,
                                         scene.video.frame_count());
    auto detections = truth;
    for (auto& chunk : detections) {
        for (auto& box : chunk.boxes) {
            box.confidence = 1.0;
        }
    }
    pce::EvalConfig eval_config;
    const pce::APReport report =
        pce::evaluate(detections, truth, eval_config,
                      static_cast<int>(detections.size()),
                      static_cast<int>(truth.size()));
    std::cout << "mAP (detections = merged ground truth): " << report.mean_ap
              << "\n";

    if (!args.out.empty()) {
        const fs::path out_dir(args.out);
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec || !fs::is_directory(out_dir)) {
            throw pce::IoError("cli", "cannot create directory '" +
                                          out_dir.string() + "'");
        }
        pce::save_video(scene.video, out_dir / "source.pcev",
                        pce::VideoFormat::RawContainer);
        pce::export_coded(sequence, out_dir / "coded",
                          pce::ExportMode::RawSums16Bit);
        pce::export_coded(sequence, out_dir / "coded",
                          pce::ExportMode::Normalized8Bit);
        pce::save_video(
            pce::Video(scene.video.height(), scene.video.width(),
                       static_cast<int>(chunks) * args.compression,
                       std::move(recon_pixels)),
            out_dir / "reconstructed.pcev", pce::VideoFormat::RawContainer);
        const auto classes = pce::ClassRegistry::default_classes();
        pce::save_labels(scene.labels, out_dir / "labels.txt", classes);
        pce::save_chunk_labels(truth, out_dir / "ground_truth.txt", classes);
        pce::save_chunk_labels(detections, out_dir / "detections.txt", classes);
        write_text(out_dir / "report.json", report.to_json());
        std::cout << "artifacts written to " << out_dir.string() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pixel-wise coded exposure compressive video toolchain"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read option defaults from a key=value file");

    GenMatrixArgs gen_args;
    auto* gen = app.add_subcommand("gen-matrix",
                                   "generate a per-chunk sensing matrix");
    gen->add_option("--height", gen_args.height)->check(CLI::PositiveNumber);
    gen->add_option("--width", gen_args.width)->check(CLI::PositiveNumber);
    gen->add_option("--chunk", gen_args.chunk_len)->check(CLI::PositiveNumber);
    gen->add_option("--bump", gen_args.bump_len)->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_args.seed);
    gen->add_option("--dist", gen_args.dist)
        ->check(CLI::IsMember({"uniform", "gaussian"}));
    gen->add_option("--out", gen_args.out)->required();

    CompressArgs compress_args;
    auto* compress = app.add_subcommand(
        "compress", "encode a video into per-chunk coded frames");
    compress->add_option("--in", compress_args.in)->required();
    compress->add_option("--out", compress_args.out)->required();
    compress->add_option("--compression", compress_args.compression)
        ->check(CLI::PositiveNumber);
    compress->add_option("--bump", compress_args.bump)
        ->check(CLI::PositiveNumber);
    compress->add_option("--seed", compress_args.seed);
    compress->add_option("--dist", compress_args.dist)
        ->check(CLI::IsMember({"uniform", "gaussian"}));
    compress->add_option("--export", compress_args.export_mode)
        ->check(CLI::IsMember({"normalized", "raw", "both"}));

    ReconstructArgs recon_args;
    auto* reconstruct = app.add_subcommand(
        "reconstruct", "sparse-reconstruct a chunk from raw coded sums");
    reconstruct->add_option("--coded", recon_args.coded)->required();
    reconstruct->add_option("--matrix", recon_args.matrix)->required();
    reconstruct->add_option("--out", recon_args.out)->required();
    reconstruct->add_option("--patch", recon_args.patch)
        ->check(CLI::PositiveNumber);
    reconstruct->add_option("--stride", recon_args.stride)
        ->check(CLI::PositiveNumber);
    reconstruct->add_option("--sparsity", recon_args.sparsity)
        ->check(CLI::PositiveNumber);
    reconstruct->add_option("--tol", recon_args.tol)
        ->check(CLI::NonNegativeNumber);
    reconstruct->add_flag("--report-time", recon_args.report_time);
    reconstruct->add_option("--workers", recon_args.workers)
        ->check(CLI::PositiveNumber);

    MergeLabelsArgs merge_args;
    auto* merge = app.add_subcommand(
        "merge-labels", "merge per-frame boxes into chunk-level ground truth");
    merge->add_option("--labels", merge_args.labels)->required();
    merge->add_option("--compression", merge_args.compression)
        ->check(CLI::PositiveNumber);
    merge->add_option("--min-conf", merge_args.min_conf)
        ->check(CLI::Range(0.0, 1.0));
    merge->add_option("--frames", merge_args.frames,
                      "total source frame count (default: inferred)");
    merge->add_option("--out", merge_args.out)->required();

    EvaluateArgs eval_args;
    auto* evaluate = app.add_subcommand(
        "evaluate", "score chunk detections against ground truth");
    evaluate->add_option("--det", eval_args.det)->required();
    evaluate->add_option("--gt", eval_args.gt)->required();
    evaluate->add_option("--out", eval_args.out,
                         "report path (.json or .csv; default: stdout)");

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "re-encode at each bump time or compression rate and score");
    sweep_cmd->add_option("--video", sweep_args.video)->required();
    sweep_cmd->add_option("--labels", sweep_args.labels)->required();
    sweep_cmd->add_option("--axis", sweep_args.axis)
        ->check(CLI::IsMember({"bump", "compression"}));
    sweep_cmd->add_option("--values", sweep_args.values)
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--det-template", sweep_args.det_template,
                          "detections path with a {value} placeholder");
    sweep_cmd->add_option("--out", sweep_args.out);
    sweep_cmd->add_option("--seed", sweep_args.seed);
    sweep_cmd->add_option("--min-conf", sweep_args.min_conf)
        ->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_option("--dist", sweep_args.dist)
        ->check(CLI::IsMember({"uniform", "gaussian"}));

    DemoArgs demo_args;
    auto* demo = app.add_subcommand(
        "demo", "full synthetic pipeline: compress, reconstruct, evaluate");
    demo->add_option("--compression", demo_args.compression)
        ->check(CLI::PositiveNumber);
    demo->add_option("--bump", demo_args.bump)->check(CLI::PositiveNumber);
    demo->add_option("--seed", demo_args.seed);
    demo->add_option("--workers", demo_args.workers)
        ->check(CLI::PositiveNumber);
    demo->add_option("--out", demo_args.out,
                     "directory for pipeline artifacts (optional)");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return run_gen_matrix(gen_args);
        if (compress->parsed()) return run_compress(compress_args);
        if (reconstruct->parsed()) return run_reconstruct(recon_args);
        if (merge->parsed()) return run_merge_labels(merge_args);
        if (evaluate->parsed()) return run_evaluate(eval_args);
        if (sweep_cmd->parsed()) return run_sweep(sweep_args);
        if (demo->parsed()) return run_demo(demo_args);
        std::cerr << app.help();
        return 1;
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "pce: " << e.what() << "\n" << app.help();
        return 1;
    } catch (const pce::Error& e) {
        std::cerr << "pce: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "pce: " << e.what() << "\n";
        return 1;
    }
}
