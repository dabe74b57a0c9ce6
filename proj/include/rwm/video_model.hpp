#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace rwm {

/// 8-bit grayscale raster, samples stored row-major.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> samples;

    Frame() = default;
    Frame(int w, int h, uint8_t fill = 0);

    int at(int row, int col) const {
        return samples[static_cast<size_t>(row) * width + col];
    }
    void set(int row, int col, int value) {
        samples[static_cast<size_t>(row) * width + col] = static_cast<uint8_t>(value);
    }
    size_t pixel_count() const { return samples.size(); }

    bool operator==(const Frame&) const = default;
};

/// Ordered frames of identical dimensions. The codec needs at least three
/// frames so every frame has two temporal partners.
struct FrameSequence {
    std::vector<Frame> frames;

    int frame_count() const { return static_cast<int>(frames.size()); }
    int width() const { return frames.empty() ? 0 : frames[0].width; }
    int height() const { return frames.empty() ? 0 : frames[0].height; }

    /// Throws on frame count < 3 or mixed dimensions.
    void validate() const;

    bool operator==(const FrameSequence&) const = default;
};

/// Binary bitmap payload, one byte per bit (0 or 1), row-major.
struct WatermarkLogo {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> bits;

    size_t bit_count() const { return bits.size(); }

    bool operator==(const WatermarkLogo&) const = default;
};

struct PixelCoord {
    int frame = 0;
    int row = 0;
    int col = 0;

    auto operator<=>(const PixelCoord&) const = default;
};

/// The two interleaved checkerboard classes. Dot pixels have even row+col
/// parity and are embedded first.
enum class ParitySet : uint8_t { Dot = 0, Cross = 1 };

/// All interior coordinates of one parity class in row-major order. The
/// interior excludes a two-pixel border on every side; frames too small to
/// have an interior yield an empty list.
std::vector<std::pair<int, int>> traversal_order(int width, int height, ParitySet set);

/// Temporal partners of frame k: the two upcoming frames, except the last
/// two frames fall back to their predecessors. `first` is the primary
/// partner used by the fixed estimator.
std::pair<int, int> context_frames(int k, int frame_count);

}  // namespace rwm
