#include "rwm/predictor.hpp"

#include <cassert>
#include <cmath>

namespace rwm {

namespace {

constexpr double kPivotEps = 1e-9;

struct FrameTriple {
    int k;
    int ka;
    int kb;
};

FrameTriple triple_for(const FrameSequence& seq, PixelCoord coord) {
    auto [ka, kb] = context_frames(coord.frame, seq.frame_count());
    return {coord.frame, ka, kb};
}

bool in_interior(const FrameSequence& seq, PixelCoord c) {
    return c.row >= 2 && c.row <= seq.height() - 3 && c.col >= 2 && c.col <= seq.width() - 3;
}

// Reads a sample, substituting the center pixel with its fixed estimate.
double read_sub(const FrameSequence& seq, int frame, int row, int col,
                PixelCoord center, int phat) {
    if (frame == center.frame && row == center.row && col == center.col) {
        return static_cast<double>(phat);
    }
    return static_cast<double>(seq.frames[frame].at(row, col));
}

// Context vector of the pixel at (frame, row, col). Its temporal entries are
// the two remaining frames of the triple, kept in triple order.
ContextVector context_row(const FrameSequence& seq, FrameTriple tri, int frame,
                          int row, int col, PixelCoord center, int phat) {
    int ta, tb;
    if (frame == tri.k) {
        ta = tri.ka;
        tb = tri.kb;
    } else if (frame == tri.ka) {
        ta = tri.k;
        tb = tri.kb;
    } else {
        assert(frame == tri.kb);
        ta = tri.k;
        tb = tri.ka;
    }
    return {
        read_sub(seq, frame, row - 1, col, center, phat),
        read_sub(seq, frame, row + 1, col, center, phat),
        read_sub(seq, frame, row, col - 1, center, phat),
        read_sub(seq, frame, row, col + 1, center, phat),
        read_sub(seq, ta, row, col, center, phat),
        read_sub(seq, tb, row, col, center, phat),
    };
}

}  // namespace

int fixed_estimate(const FrameSequence& seq, PixelCoord coord) {
    assert(in_interior(seq, coord));
    const FrameTriple tri = triple_for(seq, coord);
    const Frame& f = seq.frames[tri.k];
    const int sum = f.at(coord.row - 1, coord.col) + f.at(coord.row + 1, coord.col) +
                    f.at(coord.row, coord.col - 1) + f.at(coord.row, coord.col + 1) +
                    seq.frames[tri.ka].at(coord.row, coord.col);
    // Round half away from zero; the sum is non-negative so this is (2s+5)/10.
    const int est = (2 * sum + 5) / 10;
    assert(est >= 0 && est <= 255);
    return est;
}

ContextVector gather_context(const FrameSequence& seq, PixelCoord coord) {
    assert(in_interior(seq, coord));
    const FrameTriple tri = triple_for(seq, coord);
    const Frame& f = seq.frames[tri.k];
    return {
        static_cast<double>(f.at(coord.row - 1, coord.col)),
        static_cast<double>(f.at(coord.row + 1, coord.col)),
        static_cast<double>(f.at(coord.row, coord.col - 1)),
        static_cast<double>(f.at(coord.row, coord.col + 1)),
        static_cast<double>(seq.frames[tri.ka].at(coord.row, coord.col)),
        static_cast<double>(seq.frames[tri.kb].at(coord.row, coord.col)),
    };
}

TrainingSystem build_training_system(const FrameSequence& seq, PixelCoord coord) {
    assert(in_interior(seq, coord));
    const FrameTriple tri = triple_for(seq, coord);
    const int phat = fixed_estimate(seq, coord);
    const int i = coord.row;
    const int j = coord.col;

    // The six training samples are the context pixels themselves, in context
    // order. None of them is the center, so the targets need no substitution.
    const struct {
        int frame, row, col;
    } ctx[6] = {
        {tri.k, i - 1, j}, {tri.k, i + 1, j}, {tri.k, i, j - 1},
        {tri.k, i, j + 1}, {tri.ka, i, j},    {tri.kb, i, j},
    };

    TrainingSystem sys;
    for (int m = 0; m < 6; ++m) {
        sys.rows[m] = context_row(seq, tri, ctx[m].frame, ctx[m].row, ctx[m].col, coord, phat);
        sys.targets[m] = static_cast<double>(seq.frames[ctx[m].frame].at(ctx[m].row, ctx[m].col));
    }
    return sys;
}

std::optional<PredictorCoefficients> solve_coefficients(const TrainingSystem& sys) {
    // Normal equations: a = [X^T X | X^T y], accumulated in fixed row order.
    double a[6][7];
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            double s = 0.0;
            for (int m = 0; m < 6; ++m) s += sys.rows[m][i] * sys.rows[m][j];
            a[i][j] = s;
        }
        double s = 0.0;
        for (int m = 0; m < 6; ++m) s += sys.rows[m][i] * sys.targets[m];
        a[i][6] = s;
    }

    // Gaussian elimination with partial pivoting, fixed operation order.
    for (int col = 0; col < 6; ++col) {
        int piv = col;
        double best = std::fabs(a[col][col]);
        for (int r = col + 1; r < 6; ++r) {
            const double mag = std::fabs(a[r][col]);
            if (mag > best) {
                best = mag;
                piv = r;
            }
        }
        if (best < kPivotEps) return std::nullopt;
        if (piv != col) {
            for (int c = 0; c < 7; ++c) std::swap(a[col][c], a[piv][c]);
        }
        for (int r = col + 1; r < 6; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 7; ++c) a[r][c] -= f * a[col][c];
        }
    }

    PredictorCoefficients v{};
    for (int i = 5; i >= 0; --i) {
        double s = a[i][6];
        for (int c = i + 1; c < 6; ++c) s -= a[i][c] * v[c];
        v[i] = s / a[i][i];
        if (!std::isfinite(v[i])) return std::nullopt;
    }
    return v;
}

int predict(const PredictorCoefficients& v, const ContextVector& ctx) {
    double acc = 0.0;
    for (int m = 0; m < 6; ++m) acc += v[m] * ctx[m];
    // Clamp in the double domain: ill-fit coefficients can push the sum far
    // outside int range.
    const double fl = std::floor(acc);
    if (!(fl > 0.0)) return 0;
    if (fl > 255.0) return 255;
    return static_cast<int>(fl);
}

int adaptive_predict(const FrameSequence& seq, PixelCoord coord) {
    const TrainingSystem sys = build_training_system(seq, coord);
    const auto v = solve_coefficients(sys);
    if (!v) return fixed_estimate(seq, coord);
    return predict(*v, gather_context(seq, coord));
}

}  // namespace rwm
