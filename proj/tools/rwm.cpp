// rwm: reversible watermarking codec for grayscale frame sequences.
//
// Frames travel either as numbered binary PGM files (pattern with one %d
// field) or as a headerless raw byte stream with explicit dimensions.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rwm/codec.hpp"
#include "rwm/error.hpp"
#include "rwm/io.hpp"
#include "rwm/metrics.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitCorrupt = 3;

bool is_pattern(const std::string& path) { return path.find('%') != std::string::npos; }

struct Dims {
    int width = 0;
    int height = 0;
};

Dims parse_dims(const std::string& s) {
    Dims d;
    if (std::sscanf(s.c_str(), "%dx%d", &d.width, &d.height) != 2 || d.width < 1 ||
        d.height < 1) {
        throw rwm::Error(rwm::ErrorCode::InvalidSpec, "expected WxH, got " + s);
    }
    return d;
}

std::vector<rwm::LogoSize> parse_sizes(const std::string& csv) {
    std::vector<rwm::LogoSize> sizes;
    size_t start = 0;
    while (start <= csv.size()) {
        const size_t comma = csv.find(',', start);
        const std::string tok =
            csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!tok.empty()) {
            const Dims d = parse_dims(tok);
            sizes.push_back({d.width, d.height});
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (sizes.empty()) {
        throw rwm::Error(rwm::ErrorCode::InvalidSpec, "no logo sizes given");
    }
    return sizes;
}

rwm::FrameSequence read_frames(const std::string& path, const std::string& dims,
                               int frame_count) {
    if (is_pattern(path)) return rwm::read_pgm_sequence(path);
    if (dims.empty() || frame_count < 1) {
        throw rwm::Error(rwm::ErrorCode::InvalidSpec,
                         "raw input needs --dims WxH and --frames N");
    }
    const Dims d = parse_dims(dims);
    return rwm::read_raw_sequence(path, d.width, d.height, frame_count);
}

void write_frames(const rwm::FrameSequence& seq, const std::string& path) {
    if (is_pattern(path)) {
        rwm::write_pgm_sequence(seq, path);
    } else {
        rwm::write_raw_sequence(seq, path);
    }
}

void print_report(const rwm::EmbedReport& report) {
    std::cout << "bpp " << report.bpp << "\n";
    std::cout << "psnr_db " << report.psnr_db << "\n";
    for (const rwm::FrameStats& fs : report.frames) {
        std::cout << "frame " << fs.frame << " t=" << fs.threshold << " payload="
                  << fs.payload_bits << " flags=" << fs.flag_bits << " shifted="
                  << fs.shifted << " skipped=" << fs.skipped << "\n";
    }
}

int exit_code_for(const rwm::Error& e) {
    switch (e.code()) {
        case rwm::ErrorCode::CapacityExceeded:
            return kExitCapacity;
        case rwm::ErrorCode::InvalidSpec:
        case rwm::ErrorCode::EmptyLogo:
        case rwm::ErrorCode::SequenceTooShort:
            return kExitUsage;
        default:
            return kExitCorrupt;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reversible watermarking codec for grayscale frame sequences"};
    app.require_subcommand(1);

    std::string in_path, out_path, logo_path, logo_out_path, sidecar_path;
    std::string a_path, b_path, csv_path, sizes_csv, dims_str, kind_str;
    int frame_count = 0;
    int t_max = rwm::Threshold::kMax;
    int level = 100, speed = 1, rect_size = 16;
    uint64_t seed = 1;

    auto* embed = app.add_subcommand("embed", "embed a logo into a frame sequence");
    embed->add_option("--in", in_path, "input frames (PGM pattern or raw file)")->required();
    embed->add_option("--logo", logo_path, "watermark logo (PBM)")->required();
    embed->add_option("--out", out_path, "watermarked frames")->required();
    embed->add_option("--sidecar", sidecar_path, "sidecar output path")->required();
    embed->add_option("--t-max", t_max, "threshold ceiling (1..8)");
    embed->add_option("--dims", dims_str, "raw input dimensions WxH");
    embed->add_option("--frames", frame_count, "raw input frame count");

    auto* extract = app.add_subcommand("extract", "restore frames and logo");
    extract->add_option("--in", in_path, "watermarked frames")->required();
    extract->add_option("--sidecar", sidecar_path, "sidecar path")->required();
    extract->add_option("--out", out_path, "restored frames")->required();
    extract->add_option("--logo-out", logo_out_path, "restored logo (PBM)")->required();

    auto* verify = app.add_subcommand("verify", "embed+extract in memory and byte-compare");
    verify->add_option("--orig", in_path, "original frames")->required();
    verify->add_option("--logo", logo_path, "watermark logo (PBM)")->required();
    verify->add_option("--t-max", t_max, "threshold ceiling (1..8)");
    verify->add_option("--dims", dims_str, "raw input dimensions WxH");
    verify->add_option("--frames", frame_count, "raw input frame count");

    auto* metrics = app.add_subcommand("metrics", "PSNR between two sequences");
    metrics->add_option("--a", a_path, "first sequence")->required();
    metrics->add_option("--b", b_path, "second sequence")->required();
    metrics->add_option("--dims", dims_str, "raw input dimensions WxH");
    metrics->add_option("--frames", frame_count, "raw input frame count");

    auto* sweep = app.add_subcommand("sweep", "capacity-distortion sweep over logo sizes");
    sweep->add_option("--in", in_path, "input frames")->required();
    sweep->add_option("--sizes", sizes_csv, "logo sizes, e.g. 32x32,45x45,52x65")->required();
    sweep->add_option("--csv", csv_path, "CSV output path")->required();
    sweep->add_option("--t-max", t_max, "threshold ceiling (1..8)");
    sweep->add_option("--seed", seed, "logo generator seed");
    sweep->add_option("--dims", dims_str, "raw input dimensions WxH");
    sweep->add_option("--frames", frame_count, "raw input frame count");

    auto* gen = app.add_subcommand("gen-corpus", "generate a synthetic test sequence");
    gen->add_option("--kind", kind_str,
                    "constant | h-ramp | v-ramp | moving-rect | uniform-noise")
        ->required();
    gen->add_option("--dims", dims_str, "frame dimensions WxH")->required();
    gen->add_option("--frames", frame_count, "frame count")->required();
    gen->add_option("--out", out_path, "output frames")->required();
    gen->add_option("--seed", seed, "noise seed");
    gen->add_option("--level", level, "constant fill value");
    gen->add_option("--speed", speed, "moving-rect pixels per frame");
    gen->add_option("--rect-size", rect_size, "moving-rect edge length");

    auto* gen_logo = app.add_subcommand("gen-logo", "generate a pseudo-random binary logo");
    gen_logo->add_option("--dims", dims_str, "logo dimensions WxH")->required();
    gen_logo->add_option("--out", out_path, "output logo (PBM)")->required();
    gen_logo->add_option("--seed", seed, "shuffle seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (app.got_subcommand(embed)) {
            const rwm::FrameSequence seq = read_frames(in_path, dims_str, frame_count);
            const rwm::WatermarkLogo logo = rwm::read_pbm(logo_path);
            const rwm::EmbedResult res = rwm::embed_sequence(seq, logo, t_max);
            write_frames(res.watermarked, out_path);
            rwm::write_sidecar(res.sidecar, sidecar_path);
            print_report(res.report);
        } else if (app.got_subcommand(extract)) {
            const rwm::SidecarFile sc = rwm::read_sidecar(sidecar_path);
            const rwm::FrameSequence wseq =
                is_pattern(in_path)
                    ? rwm::read_pgm_sequence(in_path)
                    : rwm::read_raw_sequence(in_path, static_cast<int>(sc.width),
                                             static_cast<int>(sc.height),
                                             static_cast<int>(sc.frame_count));
            const rwm::ExtractResult res = rwm::extract_sequence(wseq, sc);
            write_frames(res.restored, out_path);
            rwm::write_pbm(res.logo, logo_out_path);
        } else if (app.got_subcommand(verify)) {
            const rwm::FrameSequence seq = read_frames(in_path, dims_str, frame_count);
            const rwm::WatermarkLogo logo = rwm::read_pbm(logo_path);
            const rwm::EmbedResult em = rwm::embed_sequence(seq, logo, t_max);
            const rwm::ExtractResult ex = rwm::extract_sequence(em.watermarked, em.sidecar);
            const bool exact = ex.restored == seq && ex.logo == logo;
            std::cout << "bpp " << em.report.bpp << "\n";
            std::cout << "psnr_db " << em.report.psnr_db << "\n";
            std::cout << (exact ? "round-trip exact" : "round-trip MISMATCH") << "\n";
            if (!exact) return kExitCorrupt;
        } else if (app.got_subcommand(metrics)) {
            const rwm::FrameSequence a = read_frames(a_path, dims_str, frame_count);
            const rwm::FrameSequence b = read_frames(b_path, dims_str, frame_count);
            std::cout << "psnr_db " << rwm::psnr(a, b) << "\n";
        } else if (app.got_subcommand(sweep)) {
            const rwm::FrameSequence seq = read_frames(in_path, dims_str, frame_count);
            const std::vector<rwm::LogoSize> sizes = parse_sizes(sizes_csv);
            const auto rows = rwm::capacity_distortion_sweep(
                seq, sizes,
                [&](int w, int h) { return rwm::generate_logo(w, h, seed); }, t_max);
            const std::string csv = rwm::sweep_csv(rows);
            std::ofstream out(csv_path, std::ios::trunc);
            if (!out) {
                throw rwm::Error(rwm::ErrorCode::IoFailure, "cannot write " + csv_path);
            }
            out << csv;
            std::cout << csv;
        } else if (app.got_subcommand(gen)) {
            rwm::CorpusSpec spec;
            spec.kind = rwm::corpus_kind_from_name(kind_str);
            const Dims d = parse_dims(dims_str);
            spec.width = d.width;
            spec.height = d.height;
            spec.frame_count = frame_count;
            spec.level = level;
            spec.speed = speed;
            spec.rect_size = rect_size;
            spec.seed = seed;
            write_frames(rwm::generate_corpus(spec), out_path);
        } else if (app.got_subcommand(gen_logo)) {
            const Dims d = parse_dims(dims_str);
            rwm::write_pbm(rwm::generate_logo(d.width, d.height, seed), out_path);
        }
    } catch (const rwm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
