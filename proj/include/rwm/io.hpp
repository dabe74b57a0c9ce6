#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rwm/codec.hpp"
#include "rwm/video_model.hpp"

namespace rwm {

// --- netpbm frame and logo I/O -------------------------------------------

/// Binary 8-bit PGM (P5, maxval 255).
Frame read_pgm(const std::string& path);
void write_pgm(const Frame& frame, const std::string& path);

/// Numbered PGM series. `pattern` must contain exactly one %d-style field;
/// frames are read from index 0 upward until a file is missing.
FrameSequence read_pgm_sequence(const std::string& pattern);
void write_pgm_sequence(const FrameSequence& seq, const std::string& pattern);

/// Headerless byte stream of frame_count x height x width samples.
FrameSequence read_raw_sequence(const std::string& path, int width, int height,
                                int frame_count);
void write_raw_sequence(const FrameSequence& seq, const std::string& path);

/// Binary PBM (P4). Logo bit order is PBM packing order: row-major,
/// top-left first.
WatermarkLogo read_pbm(const std::string& path);
void write_pbm(const WatermarkLogo& logo, const std::string& path);

// --- sidecar persistence ---------------------------------------------------

std::vector<uint8_t> serialize_sidecar(const SidecarFile& sc);
SidecarFile parse_sidecar(const std::vector<uint8_t>& bytes);

SidecarFile read_sidecar(const std::string& path);
void write_sidecar(const SidecarFile& sc, const std::string& path);

// --- synthetic corpus -------------------------------------------------------

enum class CorpusKind { Constant, HRamp, VRamp, MovingRect, UniformNoise };

/// Deterministic test sequences standing in for slow/medium/fast motion.
/// The same spec always produces byte-identical frames.
struct CorpusSpec {
    CorpusKind kind = CorpusKind::Constant;
    int frame_count = 0;
    int width = 0;
    int height = 0;
    int level = 100;      // constant: fill value
    int speed = 1;        // moving-rect: pixels travelled per frame
    int rect_size = 16;   // moving-rect: square edge length
    uint64_t seed = 1;    // uniform-noise
};

FrameSequence generate_corpus(const CorpusSpec& spec);

CorpusKind corpus_kind_from_name(const std::string& name);

/// Deterministic binary logo holding a 49% share of one-bits, positions
/// chosen by a seeded shuffle.
WatermarkLogo generate_logo(int width, int height, uint64_t seed = 1);

}  // namespace rwm
