#include "rwm/codec.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "rwm/error.hpp"
#include "rwm/metrics.hpp"
#include "rwm/predictor.hpp"

namespace rwm {

namespace {

constexpr int kMaxRecordRows = 512;   // row field is 9 bits
constexpr int kMaxRecordCols = 1024;  // col field is 10 bits

TraceKind trace_kind(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::Embedded: return TraceKind::Embedded;
        case OutcomeKind::Shifted: return TraceKind::Shifted;
        case OutcomeKind::Skipped: return TraceKind::Unchanged;
    }
    return TraceKind::Unchanged;
}

TraceKind trace_kind(ExtractClass c) {
    switch (c) {
        case ExtractClass::Embedded: return TraceKind::Embedded;
        case ExtractClass::Shifted: return TraceKind::Shifted;
        case ExtractClass::Unchanged: return TraceKind::Unchanged;
    }
    return TraceKind::Unchanged;
}

bool in_interior(int row, int col, int width, int height) {
    return row >= 2 && row <= height - 3 && col >= 2 && col <= width - 3;
}

}  // namespace

uint32_t SidecarRecord::pack() const {
    assert(row >= 0 && row < kMaxRecordRows);
    assert(col >= 0 && col < kMaxRecordCols);
    assert(threshold >= Threshold::kMin && threshold <= Threshold::kMax);
    return (static_cast<uint32_t>(row) << 23) | (static_cast<uint32_t>(col) << 13) |
           (static_cast<uint32_t>(threshold - 1) << 10) |
           (static_cast<uint32_t>(set) << 9);
}

SidecarRecord SidecarRecord::unpack(uint32_t word) {
    if ((word & 0x1FFu) != 0) {
        throw Error(ErrorCode::CorruptStream, "sidecar record has nonzero reserved bits");
    }
    SidecarRecord rec;
    rec.row = static_cast<int>(word >> 23);
    rec.col = static_cast<int>((word >> 13) & 0x3FFu);
    rec.threshold = static_cast<int>((word >> 10) & 0x7u) + 1;
    rec.set = ((word >> 9) & 1u) ? ParitySet::Cross : ParitySet::Dot;
    return rec;
}

int EmbedReport::max_threshold() const {
    int t = Threshold::kMin;
    for (const FrameStats& fs : frames) t = std::max(t, fs.threshold);
    return t;
}

std::optional<FrameStats> embed_frame(FrameSequence& seq, int k,
                                      const std::vector<uint8_t>& payload, Threshold t,
                                      TraceLog* trace) {
    assert(!payload.empty());
    Frame& frame = seq.frames[k];

    FrameStats stats;
    stats.frame = k;
    stats.threshold = t.value();

    FlagStack flags;
    size_t next_payload = 0;
    bool done = false;

    for (ParitySet set : {ParitySet::Dot, ParitySet::Cross}) {
        for (auto [i, j] : traversal_order(frame.width, frame.height, set)) {
            const PixelCoord coord{k, i, j};
            const int xhat = adaptive_predict(seq, coord);
            const int x = frame.at(i, j);
            const int e = prediction_error(x, xhat);

            PixelOutcome out;
            if (e < t.value() && e > -t.value()) {
                // Embeddable slot: pending flags preempt payload bits. The
                // bit is only consumed if the expansion stays in range.
                const bool from_flags = !flags.empty();
                const int bit = from_flags ? flags.top() : payload[next_payload];
                out = embed_pixel(x, xhat, t, bit);
                if (out.kind == OutcomeKind::Embedded) {
                    frame.set(i, j, out.new_value);
                    if (from_flags) {
                        flags.pop();
                        ++stats.flag_bits;
                    } else {
                        ++next_payload;
                        ++stats.payload_bits;
                    }
                }
            } else {
                out = embed_pixel(x, xhat, t);
                if (out.kind == OutcomeKind::Shifted) frame.set(i, j, out.new_value);
            }

            if (out.kind == OutcomeKind::Shifted) ++stats.shifted;
            if (out.kind == OutcomeKind::Skipped) ++stats.skipped;
            if (out.needs_flag) flags.push(out.flag_value);

            if (trace) {
                trace->push_back({coord, xhat, trace_kind(out.kind),
                                  out.kind == OutcomeKind::Embedded ? out.bit : -1});
            }

            if (next_payload == payload.size() && flags.empty()) {
                stats.record = {i, j, t.value(), set};
                done = true;
                break;
            }
        }
        if (done) break;
    }

    if (!done) return std::nullopt;
    assert(stats.payload_bits == static_cast<int>(payload.size()));
    return stats;
}

EmbedResult embed_sequence(const FrameSequence& seq, const WatermarkLogo& logo, int t_max,
                           TraceLog* trace) {
    seq.validate();
    if (logo.bit_count() == 0) {
        throw Error(ErrorCode::EmptyLogo, "watermark logo has no bits");
    }
    if (logo.bits.size() != static_cast<size_t>(logo.width) * logo.height) {
        throw Error(ErrorCode::SizeMismatch, "logo bit buffer does not match dimensions");
    }
    if (seq.height() > kMaxRecordRows || seq.width() > kMaxRecordCols) {
        throw Error(ErrorCode::SizeMismatch,
                    "frame dimensions exceed sidecar record addressing (max 1024x512)");
    }
    if (t_max < Threshold::kMin || t_max > Threshold::kMax) {
        throw Error(ErrorCode::InvalidSpec, "t_max must be in [1,8]");
    }

    EmbedResult result;
    result.watermarked = seq;
    FrameSequence& wm = result.watermarked;

    for (int k = 0; k < wm.frame_count(); ++k) {
        const std::vector<uint8_t> snapshot = wm.frames[k].samples;
        std::optional<FrameStats> stats;
        TraceLog frame_trace;
        for (int t = Threshold::kMin; t <= t_max; ++t) {
            frame_trace.clear();
            stats = embed_frame(wm, k, logo.bits, Threshold(t), trace ? &frame_trace : nullptr);
            if (stats) break;
            wm.frames[k].samples = snapshot;  // restore and retry with t+1
        }
        if (!stats) {
            throw Error(ErrorCode::CapacityExceeded,
                        "frame " + std::to_string(k) + " cannot hold the payload at t=" +
                            std::to_string(t_max));
        }
        if (trace) trace->insert(trace->end(), frame_trace.begin(), frame_trace.end());
        result.report.frames.push_back(*stats);
    }

    result.sidecar.frame_count = static_cast<uint32_t>(seq.frame_count());
    result.sidecar.width = static_cast<uint32_t>(seq.width());
    result.sidecar.height = static_cast<uint32_t>(seq.height());
    result.sidecar.logo_width = static_cast<uint32_t>(logo.width);
    result.sidecar.logo_height = static_cast<uint32_t>(logo.height);
    for (const FrameStats& fs : result.report.frames) {
        result.sidecar.records.push_back(fs.record);
    }

    result.report.bpp = bpp(logo.bit_count(), seq.width(), seq.height());
    result.report.psnr_db = psnr(seq, wm);
    return result;
}

std::vector<uint8_t> extract_frame(FrameSequence& seq, int k, const SidecarRecord& record,
                                   TraceLog* trace) {
    Frame& frame = seq.frames[k];
    if (!in_interior(record.row, record.col, frame.width, frame.height)) {
        throw Error(ErrorCode::RecordOutOfBounds, "record coordinate outside frame interior");
    }
    const int parity = (record.row + record.col) & 1;
    if (parity != static_cast<int>(record.set)) {
        throw Error(ErrorCode::RecordOutOfBounds, "record coordinate parity does not match set");
    }
    const Threshold t(record.threshold);

    // Reconstruct the processed prefix: all dot coords (when the last pixel
    // sits in the cross set) plus the active set up to the recorded pixel.
    std::vector<std::pair<int, int>> processed;
    if (record.set == ParitySet::Cross) {
        processed = traversal_order(frame.width, frame.height, ParitySet::Dot);
    }
    const auto active = traversal_order(frame.width, frame.height, record.set);
    const auto it = std::find(active.begin(), active.end(),
                              std::make_pair(record.row, record.col));
    assert(it != active.end());
    processed.insert(processed.end(), active.begin(), it + 1);

    std::vector<uint8_t> extracted;
    for (auto walk = processed.rbegin(); walk != processed.rend(); ++walk) {
        const auto [i, j] = *walk;
        const PixelCoord coord{k, i, j};
        const int xhat = adaptive_predict(seq, coord);
        const int xprime = frame.at(i, j);

        std::optional<int> flag;
        if (is_ambiguous(xprime, t)) {
            if (extracted.empty()) {
                throw Error(ErrorCode::MissingFlag, "no extracted bit available as flag");
            }
            flag = extracted.back();
            extracted.pop_back();
        }

        const ExtractClass cls = classify_extract(xprime, xhat, t, flag);
        const RecoveredPixel rec = recover_pixel(xprime, xhat, t, cls);
        frame.set(i, j, rec.x);
        if (rec.bit) extracted.push_back(static_cast<uint8_t>(*rec.bit));

        if (trace) {
            trace->push_back({coord, xhat, trace_kind(cls), rec.bit ? *rec.bit : -1});
        }
    }

    std::reverse(extracted.begin(), extracted.end());
    return extracted;
}

ExtractResult extract_sequence(const FrameSequence& wseq, const SidecarFile& sidecar,
                               TraceLog* trace) {
    wseq.validate();
    if (sidecar.frame_count != static_cast<uint32_t>(wseq.frame_count()) ||
        sidecar.width != static_cast<uint32_t>(wseq.width()) ||
        sidecar.height != static_cast<uint32_t>(wseq.height())) {
        throw Error(ErrorCode::HeaderMismatch, "sidecar header does not match the video");
    }
    if (sidecar.records.size() != sidecar.frame_count) {
        throw Error(ErrorCode::CorruptStream, "sidecar record count does not match header");
    }
    const size_t logo_bits =
        static_cast<size_t>(sidecar.logo_width) * sidecar.logo_height;
    if (logo_bits == 0) {
        throw Error(ErrorCode::CorruptStream, "sidecar header has empty logo dimensions");
    }

    ExtractResult result;
    result.restored = wseq;

    std::vector<uint8_t> payload;
    for (int k = wseq.frame_count() - 1; k >= 0; --k) {
        std::vector<uint8_t> bits =
            extract_frame(result.restored, k, sidecar.records[k], trace);
        if (bits.size() != logo_bits) {
            throw Error(ErrorCode::CorruptStream,
                        "frame " + std::to_string(k) + " yielded " +
                            std::to_string(bits.size()) + " bits, expected " +
                            std::to_string(logo_bits));
        }
        if (k == wseq.frame_count() - 1) {
            payload = std::move(bits);
        } else if (bits != payload) {
            throw Error(ErrorCode::PayloadDisagreement,
                        "frame " + std::to_string(k) + " payload differs from other frames");
        }
    }

    result.logo.width = static_cast<int>(sidecar.logo_width);
    result.logo.height = static_cast<int>(sidecar.logo_height);
    result.logo.bits = std::move(payload);
    return result;
}

}  // namespace rwm
