#include "rwm/video_model.hpp"

#include "rwm/error.hpp"

namespace rwm {

Frame::Frame(int w, int h, uint8_t fill)
    : width(w), height(h), samples(static_cast<size_t>(w) * h, fill) {}

void FrameSequence::validate() const {
    if (frame_count() < 3) {
        throw Error(ErrorCode::SequenceTooShort,
                    "sequence needs at least 3 frames, got " + std::to_string(frame_count()));
    }
    const int w = frames[0].width;
    const int h = frames[0].height;
    for (const Frame& f : frames) {
        if (f.width != w || f.height != h) {
            throw Error(ErrorCode::MixedDimensions, "frames have mixed dimensions");
        }
        if (f.samples.size() != static_cast<size_t>(w) * h) {
            throw Error(ErrorCode::SizeMismatch, "frame sample buffer does not match dimensions");
        }
    }
}

std::vector<std::pair<int, int>> traversal_order(int width, int height, ParitySet set) {
    std::vector<std::pair<int, int>> coords;
    const int want = (set == ParitySet::Dot) ? 0 : 1;
    for (int i = 2; i <= height - 3; ++i) {
        for (int j = 2; j <= width - 3; ++j) {
            if (((i + j) & 1) == want) coords.emplace_back(i, j);
        }
    }
    return coords;
}

std::pair<int, int> context_frames(int k, int frame_count) {
    if (frame_count < 3) {
        throw Error(ErrorCode::SequenceTooShort, "temporal context requires at least 3 frames");
    }
    if (k <= frame_count - 3) return {k + 1, k + 2};
    // The last two frames predict from their predecessors. A three-frame
    // sequence leaves the middle frame only one predecessor; the remaining
    // frame fills the second slot (its state matches on both codec sides).
    const int kb = (k - 2 >= 0) ? k - 2 : k + 1;
    return {k - 1, kb};
}

}  // namespace rwm
