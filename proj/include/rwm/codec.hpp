#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rwm/pee.hpp"
#include "rwm/video_model.hpp"

namespace rwm {

/// Per-frame side information, one 32-bit word packed most significant bit
/// first: row (9) | col (10) | t-1 (3) | set (1) | reserved-zero (9).
struct SidecarRecord {
    int row = 0;
    int col = 0;
    int threshold = 1;
    ParitySet set = ParitySet::Dot;

    uint32_t pack() const;
    /// Throws CorruptStream when any reserved bit is set.
    static SidecarRecord unpack(uint32_t word);

    bool operator==(const SidecarRecord&) const = default;
};

struct SidecarFile {
    static constexpr uint32_t kMagic = 0x52574D31;  // "RWM1"
    static constexpr uint16_t kVersion = 1;

    uint32_t frame_count = 0;
    uint32_t width = 0;
    uint32_t height = 0;
    uint32_t logo_width = 0;
    uint32_t logo_height = 0;
    std::vector<SidecarRecord> records;

    bool operator==(const SidecarFile&) const = default;
};

/// Pending flag bits. Last pushed is embedded first, which keeps the
/// extraction rule local: the most recently extracted unconsumed bit is
/// always the flag of the ambiguous pixel being undone.
class FlagStack {
public:
    void push(int bit) { bits_.push_back(static_cast<uint8_t>(bit)); }
    int top() const { return bits_.back(); }
    int pop() {
        const int b = bits_.back();
        bits_.pop_back();
        return b;
    }
    bool empty() const { return bits_.empty(); }
    size_t size() const { return bits_.size(); }

private:
    std::vector<uint8_t> bits_;
};

struct FrameStats {
    int frame = 0;
    int threshold = 1;
    int payload_bits = 0;
    int flag_bits = 0;
    int shifted = 0;
    int skipped = 0;
    SidecarRecord record;
};

struct EmbedReport {
    std::vector<FrameStats> frames;
    double bpp = 0.0;
    double psnr_db = 0.0;

    int max_threshold() const;
};

enum class TraceKind : uint8_t { Embedded, Shifted, Unchanged };

/// One processed pixel: coordinate, the prediction it saw, what happened.
/// Embed-side logs and reversed extract-side logs must be identical.
struct TraceEntry {
    PixelCoord coord;
    int predicted = 0;
    TraceKind kind = TraceKind::Unchanged;
    int bit = -1;  // bit moved through the pixel, -1 when none

    bool operator==(const TraceEntry&) const = default;
};

using TraceLog = std::vector<TraceEntry>;

/// Embed `payload` into frame k at threshold t, walking the dot set then the
/// cross set and mutating the frame in place. Pending flags take priority
/// over payload bits. Returns nullopt when the traversal ends with payload
/// or flags still pending (capacity exceeded at this threshold); the frame
/// is left partially modified and the caller must restore it.
std::optional<FrameStats> embed_frame(FrameSequence& seq, int k,
                                      const std::vector<uint8_t>& payload, Threshold t,
                                      TraceLog* trace = nullptr);

struct EmbedResult {
    FrameSequence watermarked;
    SidecarFile sidecar;
    EmbedReport report;
};

/// Embed the full logo into every frame, processing frames in order so each
/// frame's temporal partners hold the values extraction will see. Threshold
/// starts at 1 per frame and escalates on capacity failure up to t_max.
EmbedResult embed_sequence(const FrameSequence& seq, const WatermarkLogo& logo,
                           int t_max = Threshold::kMax, TraceLog* trace = nullptr);

/// Undo frame k in exact reverse embed order starting from the recorded
/// last pixel. Restores the frame in place and returns its payload bits.
std::vector<uint8_t> extract_frame(FrameSequence& seq, int k, const SidecarRecord& record,
                                   TraceLog* trace = nullptr);

struct ExtractResult {
    FrameSequence restored;
    WatermarkLogo logo;
};

/// Extract frames from last to first so every prediction context matches its
/// embed-time state. All frames must yield the same payload.
ExtractResult extract_sequence(const FrameSequence& wseq, const SidecarFile& sidecar,
                               TraceLog* trace = nullptr);

}  // namespace rwm
