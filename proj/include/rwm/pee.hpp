#pragma once

#include <cstdint>
#include <optional>

namespace rwm {

/// Embedding strength. Pixels whose absolute prediction error is below t
/// carry a payload bit; the rest are shifted by up to t. The sidecar stores
/// t-1 in three bits, hence the ceiling of 8.
class Threshold {
public:
    static constexpr int kMin = 1;
    static constexpr int kMax = 8;

    explicit Threshold(int t);
    int value() const { return t_; }

    bool operator==(const Threshold&) const = default;

private:
    int t_;
};

enum class OutcomeKind : uint8_t { Embedded, Shifted, Skipped };

/// Result of processing one pixel on the embed side. Skipped pixels keep
/// their original value; their retained value always lies in the ambiguity
/// zone, which is why a flag bit (0) is queued for them.
struct PixelOutcome {
    OutcomeKind kind = OutcomeKind::Skipped;
    int new_value = 0;
    int bit = -1;            // payload bit carried, Embedded only
    bool needs_flag = false; // new_value lies in the ambiguity zone
    int flag_value = 0;      // 1 = changed pixel, 0 = skipped pixel
};

inline int prediction_error(int x, int xhat) { return x - xhat; }

/// Values indistinguishable from an overflow/underflow skip without a flag:
/// v <= t-2 or v >= 256-t.
bool is_ambiguous(int v, Threshold t);

/// Expansion embedding of one pixel. `b` is required when |x - xhat| < t
/// (the slot carries a bit) and ignored otherwise. Out-of-range candidates
/// leave the pixel unchanged (Skipped).
PixelOutcome embed_pixel(int x, int xhat, Threshold t, std::optional<int> b = std::nullopt);

enum class ExtractClass : uint8_t { Embedded, Shifted, Unchanged };

/// Classify a watermarked pixel. `flag` must be present exactly when
/// is_ambiguous(xprime, t); throws MissingFlag when an ambiguous pixel
/// arrives without one.
ExtractClass classify_extract(int xprime, int xhat, Threshold t,
                              std::optional<int> flag = std::nullopt);

struct RecoveredPixel {
    int x = 0;
    std::optional<int> bit;
};

/// Invert the embedding transform for a pixel classified by classify_extract
/// on the same (xprime, xhat, t).
RecoveredPixel recover_pixel(int xprime, int xhat, Threshold t, ExtractClass cls);

}  // namespace rwm
