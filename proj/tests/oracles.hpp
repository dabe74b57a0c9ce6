// Independent reference implementations used to freeze expected values.
// Everything here deliberately avoids the library's own code paths.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "rwm/predictor.hpp"
#include "rwm/video_model.hpp"

namespace oracle {

// Brute-force interior enumeration: every pixel two or more away from each
// border, optionally filtered by parity (-1 = both sets).
inline std::vector<std::pair<int, int>> interior_coords(int width, int height,
                                                        int parity = -1) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < height; ++i) {
        for (int j = 0; j < width; ++j) {
            const bool inside = i >= 2 && i < height - 2 && j >= 2 && j < width - 2;
            if (!inside) continue;
            if (parity >= 0 && ((i + j) & 1) != parity) continue;
            out.emplace_back(i, j);
        }
    }
    return out;
}

// Recursive Laplace expansion, long double. Slow and simple on purpose.
inline long double det_rec(const std::vector<long double>& m, int n) {
    if (n == 1) return m[0];
    long double sum = 0.0L;
    std::vector<long double> minor(static_cast<size_t>(n - 1) * (n - 1));
    for (int c = 0; c < n; ++c) {
        for (int i = 1; i < n; ++i) {
            int mj = 0;
            for (int j = 0; j < n; ++j) {
                if (j == c) continue;
                minor[static_cast<size_t>(i - 1) * (n - 1) + mj++] =
                    m[static_cast<size_t>(i) * n + j];
            }
        }
        const long double term = m[c] * det_rec(minor, n - 1);
        sum += (c % 2 == 0) ? term : -term;
    }
    return sum;
}

// Normal equations solved by Cramer's rule: an elimination-free route to
// V = (X^T X)^-1 X^T y.
inline std::optional<std::array<double, 6>> solve_normal_equations(
    const rwm::TrainingSystem& sys) {
    std::vector<long double> a(36);
    std::array<long double, 6> b{};
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            long double s = 0.0L;
            for (int m = 0; m < 6; ++m) {
                s += static_cast<long double>(sys.rows[m][i]) * sys.rows[m][j];
            }
            a[static_cast<size_t>(i) * 6 + j] = s;
        }
        long double s = 0.0L;
        for (int m = 0; m < 6; ++m) {
            s += static_cast<long double>(sys.rows[m][i]) * sys.targets[m];
        }
        b[i] = s;
    }

    const long double det = det_rec(a, 6);
    if (std::fabs(static_cast<double>(det)) < 1e-9) return std::nullopt;

    std::array<double, 6> v{};
    for (int col = 0; col < 6; ++col) {
        std::vector<long double> ai = a;
        for (int r = 0; r < 6; ++r) ai[static_cast<size_t>(r) * 6 + col] = b[r];
        v[col] = static_cast<double>(det_rec(ai, 6) / det);
    }
    return v;
}

// Double-loop PSNR, no shared helpers with the library.
inline double psnr_brute(const rwm::FrameSequence& a, const rwm::FrameSequence& b) {
    long double sum = 0.0L;
    long double n = 0.0L;
    for (size_t k = 0; k < a.frames.size(); ++k) {
        for (size_t p = 0; p < a.frames[k].samples.size(); ++p) {
            const long double d =
                static_cast<long double>(a.frames[k].samples[p]) - b.frames[k].samples[p];
            sum += d * d;
            n += 1.0L;
        }
    }
    if (sum == 0.0L) return std::numeric_limits<double>::infinity();
    return static_cast<double>(10.0L * std::log10(255.0L * 255.0L / (sum / n)));
}

inline uint64_t fnv1a64(const std::vector<uint8_t>& bytes) {
    uint64_t h = 1469598103934665603ULL;
    for (uint8_t b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

inline uint64_t sequence_digest(const rwm::FrameSequence& seq) {
    std::vector<uint8_t> all;
    for (const rwm::Frame& f : seq.frames) {
        all.insert(all.end(), f.samples.begin(), f.samples.end());
    }
    return fnv1a64(all);
}

// Test-local randomness, distinct constants from the production generator.
struct TestRng {
    uint64_t state;

    explicit TestRng(uint64_t seed) : state(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

    uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace oracle
