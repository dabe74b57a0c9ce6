#include "rwm/pee.hpp"

#include <cassert>
#include <stdexcept>

#include "rwm/error.hpp"

namespace rwm {

namespace {

bool in_range(int v) { return v >= 0 && v <= 255; }

}  // namespace

Threshold::Threshold(int t) : t_(t) {
    if (t < kMin || t > kMax) {
        throw std::invalid_argument("threshold must be in [1,8], got " + std::to_string(t));
    }
}

bool is_ambiguous(int v, Threshold t) {
    assert(in_range(v));
    return v <= t.value() - 2 || v >= 256 - t.value();
}

PixelOutcome embed_pixel(int x, int xhat, Threshold t, std::optional<int> b) {
    assert(in_range(x) && in_range(xhat));
    const int tv = t.value();
    const int e = prediction_error(x, xhat);

    PixelOutcome out;
    if (e < tv && e > -tv) {
        // Expandable: x' = x + e + b doubles the error and appends the bit.
        assert(b.has_value() && (*b == 0 || *b == 1));
        const int candidate = x + e + *b;
        if (in_range(candidate)) {
            out.kind = OutcomeKind::Embedded;
            out.new_value = candidate;
            out.bit = *b;
        } else {
            out.kind = OutcomeKind::Skipped;
            out.new_value = x;
        }
    } else {
        // Shift keeps the error distinguishable from expanded ones.
        const int candidate = (e >= tv) ? x + tv : x - (tv - 1);
        if (in_range(candidate)) {
            out.kind = OutcomeKind::Shifted;
            out.new_value = candidate;
        } else {
            out.kind = OutcomeKind::Skipped;
            out.new_value = x;
        }
    }

    if (out.kind == OutcomeKind::Skipped) {
        assert(is_ambiguous(out.new_value, t));
        out.needs_flag = true;
        out.flag_value = 0;
    } else {
        out.needs_flag = is_ambiguous(out.new_value, t);
        out.flag_value = out.needs_flag ? 1 : 0;
    }
    return out;
}

ExtractClass classify_extract(int xprime, int xhat, Threshold t, std::optional<int> flag) {
    assert(in_range(xprime) && in_range(xhat));
    const int tv = t.value();
    const bool ambiguous = is_ambiguous(xprime, t);
    if (ambiguous && !flag.has_value()) {
        throw Error(ErrorCode::MissingFlag, "ambiguous pixel value without a flag bit");
    }
    assert(ambiguous || !flag.has_value());
    if (ambiguous && *flag == 0) return ExtractClass::Unchanged;

    const int e = prediction_error(xprime, xhat);
    if (e >= -2 * tv + 2 && e <= 2 * tv - 1) return ExtractClass::Embedded;
    return ExtractClass::Shifted;
}

RecoveredPixel recover_pixel(int xprime, int xhat, Threshold t, ExtractClass cls) {
    const int tv = t.value();
    const int e = prediction_error(xprime, xhat);

    RecoveredPixel rec;
    switch (cls) {
        case ExtractClass::Embedded: {
            const int b = ((e % 2) + 2) % 2;  // Euclidean mod, exact for e = 2e0 + b
            const int sum = xprime + xhat - b;
            if (sum % 2 != 0) {
                throw Error(ErrorCode::CorruptStream, "non-integer reconstruction");
            }
            rec.x = sum / 2;
            rec.bit = b;
            break;
        }
        case ExtractClass::Shifted:
            rec.x = (e >= 2 * tv) ? xprime - tv : xprime + (tv - 1);
            break;
        case ExtractClass::Unchanged:
            rec.x = xprime;
            break;
    }
    if (!in_range(rec.x)) {
        throw Error(ErrorCode::CorruptStream, "reconstructed sample out of range");
    }
    return rec;
}

}  // namespace rwm
