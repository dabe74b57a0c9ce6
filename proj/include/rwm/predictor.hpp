#pragma once

#include <array>
#include <optional>

#include "rwm/video_model.hpp"

namespace rwm {

/// Six-pixel spatiotemporal context, fixed entry order:
/// north, south, west, east, temporal-a, temporal-b.
using ContextVector = std::array<double, 6>;

using PredictorCoefficients = std::array<double, 6>;

/// Local least-squares system: one training row per context pixel, target
/// value of that pixel. Reads of the center pixel inside training rows are
/// replaced by the fixed estimate so embed and extract build the same system.
struct TrainingSystem {
    std::array<ContextVector, 6> rows;
    std::array<double, 6> targets;
};

/// Rhombus-plus-temporal average, rounded half away from zero. Used both as
/// the center substitution value and as the fallback when the local system
/// is singular.
int fixed_estimate(const FrameSequence& seq, PixelCoord coord);

/// Current values of the six context pixels of `coord`.
ContextVector gather_context(const FrameSequence& seq, PixelCoord coord);

TrainingSystem build_training_system(const FrameSequence& seq, PixelCoord coord);

/// Least-squares coefficients via the normal equations, solved by Gaussian
/// elimination with partial pivoting in a fixed operation order. Returns
/// nullopt when any pivot magnitude falls below 1e-9.
std::optional<PredictorCoefficients> solve_coefficients(const TrainingSystem& sys);

/// Weighted sum floored toward -infinity, clamped to [0,255].
int predict(const PredictorCoefficients& v, const ContextVector& ctx);

/// Full adaptive prediction: train on the local system, fall back to the
/// fixed estimate when it is singular. Pure function of the sequence bytes.
int adaptive_predict(const FrameSequence& seq, PixelCoord coord);

}  // namespace rwm
