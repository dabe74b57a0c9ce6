#include "rwm/io.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rwm/error.hpp"

namespace rwm {

namespace {

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    return bytes;
}

void write_file(const std::string& path, const void* data, size_t size) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path + " for writing");
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) throw Error(ErrorCode::IoFailure, "short write to " + path);
}

// netpbm header tokens: whitespace-separated, '#' starts a comment.
struct PnmParser {
    const std::vector<uint8_t>& bytes;
    size_t pos = 0;
    ErrorCode err;
    std::string path;

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(err, path + ": " + what);
    }

    void skip_space() {
        while (pos < bytes.size()) {
            const uint8_t c = bytes[pos];
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos;
            } else {
                break;
            }
        }
    }

    int next_int() {
        skip_space();
        if (pos >= bytes.size() || bytes[pos] < '0' || bytes[pos] > '9') {
            fail("expected integer in header");
        }
        long v = 0;
        while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
            v = v * 10 + (bytes[pos] - '0');
            if (v > 1000000) fail("header value out of range");
            ++pos;
        }
        return static_cast<int>(v);
    }

    void expect_magic(char a, char b) {
        if (bytes.size() < 2 || bytes[0] != static_cast<uint8_t>(a) ||
            bytes[1] != static_cast<uint8_t>(b)) {
            fail("bad magic");
        }
        pos = 2;
    }

    // Exactly one whitespace byte separates the header from raster data.
    void expect_raster_sep() {
        if (pos >= bytes.size()) fail("truncated header");
        const uint8_t c = bytes[pos];
        if (c != ' ' && c != '\t' && c != '\r' && c != '\n') fail("missing raster separator");
        ++pos;
    }
};

// Accepts printf-style patterns with a single integer conversion.
void validate_pattern(const std::string& pattern) {
    size_t conversions = 0;
    for (size_t i = 0; i < pattern.size(); ++i) {
        if (pattern[i] != '%') continue;
        size_t j = i + 1;
        while (j < pattern.size() && std::isdigit(static_cast<unsigned char>(pattern[j]))) {
            ++j;
        }
        if (j >= pattern.size() || (pattern[j] != 'd' && pattern[j] != 'i' && pattern[j] != 'u')) {
            throw Error(ErrorCode::InvalidSpec,
                        "pattern must use a single %d-style field: " + pattern);
        }
        ++conversions;
        i = j;
    }
    if (conversions != 1) {
        throw Error(ErrorCode::InvalidSpec,
                    "pattern must contain exactly one %d-style field: " + pattern);
    }
}

std::string frame_path(const std::string& pattern, int index) {
    char buf[4096];
    const int n = std::snprintf(buf, sizeof buf, pattern.c_str(), index);
    if (n < 0 || n >= static_cast<int>(sizeof buf)) {
        throw Error(ErrorCode::InvalidSpec, "pattern expands to an oversized path");
    }
    return std::string(buf, static_cast<size_t>(n));
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

uint16_t get_u16(const std::vector<uint8_t>& b, size_t at) {
    return static_cast<uint16_t>((b[at] << 8) | b[at + 1]);
}

uint32_t get_u32(const std::vector<uint8_t>& b, size_t at) {
    return (static_cast<uint32_t>(b[at]) << 24) | (static_cast<uint32_t>(b[at + 1]) << 16) |
           (static_cast<uint32_t>(b[at + 2]) << 8) | static_cast<uint32_t>(b[at + 3]);
}

// 64-bit linear congruential generator (Knuth MMIX constants). Fixed here so
// generated corpora are byte-identical everywhere.
struct Lcg {
    uint64_t state;

    explicit Lcg(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state;
    }
    uint8_t next_byte() { return static_cast<uint8_t>(next() >> 56); }
    uint64_t next_below(uint64_t n) { return next() % n; }
};

}  // namespace

Frame read_pgm(const std::string& path) {
    const std::vector<uint8_t> bytes = read_file(path);
    PnmParser p{bytes, 0, ErrorCode::MalformedPgm, path};
    p.expect_magic('P', '5');
    const int w = p.next_int();
    const int h = p.next_int();
    const int maxval = p.next_int();
    if (w < 1 || h < 1) p.fail("bad dimensions");
    if (maxval != 255) p.fail("only 8-bit PGM (maxval 255) is supported");
    p.expect_raster_sep();
    const size_t need = static_cast<size_t>(w) * h;
    if (bytes.size() - p.pos != need) p.fail("raster size does not match dimensions");

    Frame f(w, h);
    std::copy(bytes.begin() + static_cast<long>(p.pos), bytes.end(), f.samples.begin());
    return f;
}

void write_pgm(const Frame& frame, const std::string& path) {
    if (frame.width < 1 || frame.height < 1) {
        throw Error(ErrorCode::InvalidSpec, "refusing to write an empty frame");
    }
    std::string header = "P5\n" + std::to_string(frame.width) + " " +
                         std::to_string(frame.height) + "\n255\n";
    std::vector<uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), frame.samples.begin(), frame.samples.end());
    write_file(path, out.data(), out.size());
}

FrameSequence read_pgm_sequence(const std::string& pattern) {
    validate_pattern(pattern);
    FrameSequence seq;
    for (int k = 0;; ++k) {
        const std::string path = frame_path(pattern, k);
        if (!std::filesystem::exists(path)) break;
        Frame f = read_pgm(path);
        if (!seq.frames.empty() &&
            (f.width != seq.width() || f.height != seq.height())) {
            throw Error(ErrorCode::MixedDimensions, path + " differs in size from frame 0");
        }
        seq.frames.push_back(std::move(f));
    }
    if (seq.frames.empty()) {
        throw Error(ErrorCode::IoFailure, "no frames found for pattern " + pattern);
    }
    return seq;
}

void write_pgm_sequence(const FrameSequence& seq, const std::string& pattern) {
    validate_pattern(pattern);
    if (seq.frames.empty()) {
        throw Error(ErrorCode::InvalidSpec, "refusing to write an empty sequence");
    }
    for (int k = 0; k < seq.frame_count(); ++k) {
        write_pgm(seq.frames[k], frame_path(pattern, k));
    }
}

FrameSequence read_raw_sequence(const std::string& path, int width, int height,
                                int frame_count) {
    if (width < 1 || height < 1 || frame_count < 1) {
        throw Error(ErrorCode::InvalidSpec, "raw dimensions must be positive");
    }
    const std::vector<uint8_t> bytes = read_file(path);
    const size_t frame_size = static_cast<size_t>(width) * height;
    if (bytes.size() != frame_size * frame_count) {
        throw Error(ErrorCode::SizeMismatch,
                    path + ": " + std::to_string(bytes.size()) + " bytes, expected " +
                        std::to_string(frame_size * frame_count));
    }
    FrameSequence seq;
    for (int k = 0; k < frame_count; ++k) {
        Frame f(width, height);
        std::copy_n(bytes.begin() + static_cast<long>(k * frame_size), frame_size,
                    f.samples.begin());
        seq.frames.push_back(std::move(f));
    }
    return seq;
}

void write_raw_sequence(const FrameSequence& seq, const std::string& path) {
    if (seq.frames.empty()) {
        throw Error(ErrorCode::InvalidSpec, "refusing to write an empty sequence");
    }
    std::vector<uint8_t> out;
    out.reserve(seq.frames.size() * seq.frames[0].samples.size());
    for (const Frame& f : seq.frames) {
        out.insert(out.end(), f.samples.begin(), f.samples.end());
    }
    write_file(path, out.data(), out.size());
}

WatermarkLogo read_pbm(const std::string& path) {
    const std::vector<uint8_t> bytes = read_file(path);
    PnmParser p{bytes, 0, ErrorCode::MalformedPbm, path};
    p.expect_magic('P', '4');
    const int w = p.next_int();
    const int h = p.next_int();
    if (w < 1 || h < 1) p.fail("bad dimensions");
    p.expect_raster_sep();

    const size_t row_bytes = (static_cast<size_t>(w) + 7) / 8;
    if (bytes.size() - p.pos != row_bytes * h) p.fail("raster size does not match dimensions");

    WatermarkLogo logo;
    logo.width = w;
    logo.height = h;
    logo.bits.resize(static_cast<size_t>(w) * h);
    for (int r = 0; r < h; ++r) {
        const uint8_t* row = bytes.data() + p.pos + static_cast<size_t>(r) * row_bytes;
        for (int c = 0; c < w; ++c) {
            logo.bits[static_cast<size_t>(r) * w + c] = (row[c / 8] >> (7 - c % 8)) & 1;
        }
    }
    return logo;
}

void write_pbm(const WatermarkLogo& logo, const std::string& path) {
    if (logo.width < 1 || logo.height < 1 ||
        logo.bits.size() != static_cast<size_t>(logo.width) * logo.height) {
        throw Error(ErrorCode::InvalidSpec, "refusing to write a malformed logo");
    }
    std::string header = "P4\n" + std::to_string(logo.width) + " " +
                         std::to_string(logo.height) + "\n";
    std::vector<uint8_t> out(header.begin(), header.end());
    const size_t row_bytes = (static_cast<size_t>(logo.width) + 7) / 8;
    for (int r = 0; r < logo.height; ++r) {
        std::vector<uint8_t> row(row_bytes, 0);
        for (int c = 0; c < logo.width; ++c) {
            if (logo.bits[static_cast<size_t>(r) * logo.width + c]) {
                row[c / 8] |= static_cast<uint8_t>(0x80u >> (c % 8));
            }
        }
        out.insert(out.end(), row.begin(), row.end());
    }
    write_file(path, out.data(), out.size());
}

std::vector<uint8_t> serialize_sidecar(const SidecarFile& sc) {
    std::vector<uint8_t> out;
    put_u32(out, SidecarFile::kMagic);
    put_u16(out, SidecarFile::kVersion);
    put_u16(out, 0);  // reserved
    put_u32(out, sc.frame_count);
    put_u32(out, sc.width);
    put_u32(out, sc.height);
    put_u32(out, sc.logo_width);
    put_u32(out, sc.logo_height);
    for (const SidecarRecord& rec : sc.records) put_u32(out, rec.pack());
    return out;
}

SidecarFile parse_sidecar(const std::vector<uint8_t>& bytes) {
    constexpr size_t kHeaderBytes = 28;
    if (bytes.size() < kHeaderBytes) {
        throw Error(ErrorCode::CorruptStream, "sidecar shorter than its header");
    }
    if (get_u32(bytes, 0) != SidecarFile::kMagic) {
        throw Error(ErrorCode::CorruptStream, "bad sidecar magic");
    }
    if (get_u16(bytes, 4) != SidecarFile::kVersion) {
        throw Error(ErrorCode::CorruptStream, "unsupported sidecar version");
    }
    if (get_u16(bytes, 6) != 0) {
        throw Error(ErrorCode::CorruptStream, "nonzero reserved header bytes");
    }
    SidecarFile sc;
    sc.frame_count = get_u32(bytes, 8);
    sc.width = get_u32(bytes, 12);
    sc.height = get_u32(bytes, 16);
    sc.logo_width = get_u32(bytes, 20);
    sc.logo_height = get_u32(bytes, 24);
    if (bytes.size() != kHeaderBytes + 4ull * sc.frame_count) {
        throw Error(ErrorCode::CorruptStream, "sidecar size does not match frame count");
    }
    for (uint32_t k = 0; k < sc.frame_count; ++k) {
        sc.records.push_back(SidecarRecord::unpack(get_u32(bytes, kHeaderBytes + 4ull * k)));
    }
    return sc;
}

SidecarFile read_sidecar(const std::string& path) { return parse_sidecar(read_file(path)); }

void write_sidecar(const SidecarFile& sc, const std::string& path) {
    const std::vector<uint8_t> bytes = serialize_sidecar(sc);
    write_file(path, bytes.data(), bytes.size());
}

FrameSequence generate_corpus(const CorpusSpec& spec) {
    if (spec.width < 1 || spec.height < 1 || spec.frame_count < 1) {
        throw Error(ErrorCode::InvalidSpec, "corpus dimensions must be positive");
    }
    FrameSequence seq;
    seq.frames.reserve(static_cast<size_t>(spec.frame_count));

    switch (spec.kind) {
        case CorpusKind::Constant: {
            const uint8_t level = static_cast<uint8_t>(std::clamp(spec.level, 0, 255));
            for (int k = 0; k < spec.frame_count; ++k) {
                seq.frames.emplace_back(spec.width, spec.height, level);
            }
            break;
        }
        case CorpusKind::HRamp:
        case CorpusKind::VRamp: {
            Frame f(spec.width, spec.height);
            for (int i = 0; i < spec.height; ++i) {
                for (int j = 0; j < spec.width; ++j) {
                    const int v = (spec.kind == CorpusKind::HRamp) ? j : i;
                    f.set(i, j, std::min(v, 255));
                }
            }
            seq.frames.assign(static_cast<size_t>(spec.frame_count), f);
            break;
        }
        case CorpusKind::MovingRect: {
            if (spec.rect_size < 1 || spec.rect_size > spec.width ||
                spec.rect_size > spec.height || spec.speed < 0) {
                throw Error(ErrorCode::InvalidSpec, "rectangle does not fit the frame");
            }
            const int travel = spec.width - spec.rect_size;  // horizontal play
            const int top = (spec.height - spec.rect_size) / 2;
            for (int k = 0; k < spec.frame_count; ++k) {
                // Bounce between the left and right edge so per-frame
                // displacement is constant (no wrap-around jumps).
                int left = 0;
                if (travel > 0) {
                    const int p = static_cast<int>(
                        (static_cast<long long>(k) * spec.speed) % (2LL * travel));
                    left = (p <= travel) ? p : 2 * travel - p;
                }
                Frame f(spec.width, spec.height, 40);
                for (int i = top; i < top + spec.rect_size; ++i) {
                    for (int j = left; j < left + spec.rect_size; ++j) {
                        f.set(i, j, 200);
                    }
                }
                seq.frames.push_back(std::move(f));
            }
            break;
        }
        case CorpusKind::UniformNoise: {
            Lcg rng(spec.seed);
            for (int k = 0; k < spec.frame_count; ++k) {
                Frame f(spec.width, spec.height);
                for (uint8_t& s : f.samples) s = rng.next_byte();
                seq.frames.push_back(std::move(f));
            }
            break;
        }
    }
    return seq;
}

CorpusKind corpus_kind_from_name(const std::string& name) {
    if (name == "constant") return CorpusKind::Constant;
    if (name == "h-ramp") return CorpusKind::HRamp;
    if (name == "v-ramp") return CorpusKind::VRamp;
    if (name == "moving-rect") return CorpusKind::MovingRect;
    if (name == "uniform-noise" || name == "noise") return CorpusKind::UniformNoise;
    throw Error(ErrorCode::InvalidSpec, "unknown corpus kind: " + name);
}

WatermarkLogo generate_logo(int width, int height, uint64_t seed) {
    if (width < 1 || height < 1) {
        throw Error(ErrorCode::InvalidSpec, "logo dimensions must be positive");
    }
    WatermarkLogo logo;
    logo.width = width;
    logo.height = height;
    const size_t n = static_cast<size_t>(width) * height;
    logo.bits.assign(n, 0);

    // Exactly 49% ones, scattered by a seeded Fisher-Yates shuffle.
    const size_t ones = static_cast<size_t>(0.49 * static_cast<double>(n) + 0.5);
    std::fill(logo.bits.begin(), logo.bits.begin() + static_cast<long>(ones), 1);
    Lcg rng(seed);
    for (size_t i = n - 1; i > 0; --i) {
        const size_t j = rng.next_below(i + 1);
        std::swap(logo.bits[i], logo.bits[j]);
    }
    return logo;
}

}  // namespace rwm
