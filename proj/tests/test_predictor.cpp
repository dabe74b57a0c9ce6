#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rwm/predictor.hpp"
#include "rwm/video_model.hpp"

using namespace rwm;

namespace {

FrameSequence constant_sequence(int n, int w, int h, uint8_t level) {
    FrameSequence seq;
    seq.frames.assign(static_cast<size_t>(n), Frame(w, h, level));
    return seq;
}

// Static horizontal ramp: sample value = column index.
FrameSequence hramp_sequence(int n, int w, int h) {
    Frame f(w, h);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) f.set(i, j, j < 255 ? j : 255);
    }
    FrameSequence seq;
    seq.frames.assign(static_cast<size_t>(n), f);
    return seq;
}

}  // namespace

TEST_CASE("fixed_estimate: rhombus plus primary temporal average") {
    SUBCASE("constant input reproduces the constant") {
        const auto seq = constant_sequence(3, 8, 8, 7);
        CHECK(fixed_estimate(seq, {0, 3, 3}) == 7);
    }
    SUBCASE("temporal term participates") {
        auto seq = constant_sequence(3, 8, 8, 10);
        seq.frames[1].set(3, 3, 20);  // frame 1 is the primary partner of frame 0
        CHECK(fixed_estimate(seq, {0, 3, 3}) == 12);
    }
    SUBCASE("rounding is half away from zero") {
        auto seq = constant_sequence(3, 8, 8, 0);
        seq.frames[0].set(1, 2, 1);
        seq.frames[0].set(3, 2, 2);
        seq.frames[0].set(2, 1, 3);
        seq.frames[0].set(2, 3, 4);
        seq.frames[1].set(2, 2, 5);
        CHECK(fixed_estimate(seq, {0, 2, 2}) == 3);

        seq.frames[1].set(2, 2, 2);  // sum 10, 10/5 = 2
        CHECK(fixed_estimate(seq, {0, 2, 2}) == 2);
        seq.frames[1].set(2, 2, 3);  // sum 13, 2.6 rounds to 3
        CHECK(fixed_estimate(seq, {0, 2, 2}) == 3);
    }
}

TEST_CASE("gather_context: fixed entry order") {
    SUBCASE("constant") {
        const auto seq = constant_sequence(3, 8, 8, 42);
        CHECK(gather_context(seq, {0, 3, 3}) == ContextVector{42, 42, 42, 42, 42, 42});
    }
    SUBCASE("static horizontal ramp") {
        const auto seq = hramp_sequence(3, 16, 8);
        CHECK(gather_context(seq, {0, 3, 10}) == ContextVector{10, 10, 9, 11, 10, 10});
    }
    SUBCASE("last frame reads its predecessors") {
        auto seq = constant_sequence(18, 8, 8, 50);
        seq.frames[16].set(3, 3, 60);
        seq.frames[15].set(3, 3, 70);
        const ContextVector ctx = gather_context(seq, {17, 3, 3});
        CHECK(ctx[4] == 60);
        CHECK(ctx[5] == 70);
    }
}

TEST_CASE("build_training_system: constant input gives a constant system") {
    const auto seq = constant_sequence(3, 8, 8, 9);
    const TrainingSystem sys = build_training_system(seq, {0, 3, 3});
    for (int m = 0; m < 6; ++m) {
        CHECK(sys.targets[m] == 9.0);
        for (int c = 0; c < 6; ++c) CHECK(sys.rows[m][c] == 9.0);
    }
}

TEST_CASE("build_training_system: center reads are replaced by the fixed estimate") {
    auto seq = constant_sequence(3, 8, 8, 9);
    seq.frames[0].set(3, 3, 200);  // center value must never leak into the system
    const TrainingSystem sys = build_training_system(seq, {0, 3, 3});
    for (int m = 0; m < 6; ++m) {
        CHECK(sys.targets[m] == 9.0);
        for (int c = 0; c < 6; ++c) CHECK(sys.rows[m][c] == 9.0);
    }
}

TEST_CASE("build_training_system: ramp system is consistent") {
    const auto seq = hramp_sequence(3, 16, 8);
    const TrainingSystem sys = build_training_system(seq, {0, 3, 10});
    const auto v = solve_coefficients(sys);
    if (v) {
        for (int m = 0; m < 6; ++m) {
            double fit = 0.0;
            for (int c = 0; c < 6; ++c) fit += sys.rows[m][c] * (*v)[c];
            CHECK(std::fabs(fit - sys.targets[m]) <= 1e-9);
        }
    } else {
        // Singular is fine; the fixed estimate then reproduces the ramp.
        CHECK(fixed_estimate(seq, {0, 3, 10}) == 10);
    }
}

TEST_CASE("solve_coefficients: identity and scaled systems") {
    TrainingSystem sys{};
    for (int m = 0; m < 6; ++m) {
        sys.rows[m] = ContextVector{0, 0, 0, 0, 0, 0};
        sys.rows[m][m] = 1.0;
    }
    sys.targets = {3, 1, 4, 1, 5, 9};
    auto v = solve_coefficients(sys);
    REQUIRE(v.has_value());
    for (int m = 0; m < 6; ++m) CHECK((*v)[m] == doctest::Approx(sys.targets[m]).epsilon(1e-12));

    for (int m = 0; m < 6; ++m) sys.rows[m][m] = 2.0;
    sys.targets = {2, 2, 2, 2, 2, 2};
    v = solve_coefficients(sys);
    REQUIRE(v.has_value());
    for (int m = 0; m < 6; ++m) CHECK((*v)[m] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_coefficients: equal rows are singular") {
    for (double c : {0.0, 9.0, 100.0, 255.0}) {
        TrainingSystem sys{};
        for (int m = 0; m < 6; ++m) {
            sys.rows[m].fill(c);
            sys.targets[m] = c;
        }
        CHECK_FALSE(solve_coefficients(sys).has_value());
    }
}

TEST_CASE("predict: weighted sum with floor and clamp") {
    CHECK(predict({1, 0, 0, 0, 0, 0}, {42, 7, 7, 7, 7, 7}) == 42);
    const double sixth = 1.0 / 6.0;
    CHECK(predict({sixth, sixth, sixth, sixth, sixth, sixth}, {9, 9, 9, 9, 9, 9}) == 9);
    CHECK(predict({0.5, 0.5, 0, 0, 0, 0}, {10, 11, 0, 0, 0, 0}) == 10);
    CHECK(predict({-1, 0, 0, 0, 0, 0}, {42, 0, 0, 0, 0, 0}) == 0);
    CHECK(predict({9, 9, 9, 9, 9, 9}, {255, 255, 255, 255, 255, 255}) == 255);
}

TEST_CASE("adaptive_predict: singular fallback and exact fits") {
    SUBCASE("constant sequence falls back to the fixed estimate") {
        const auto seq = constant_sequence(3, 8, 8, 9);
        CHECK_FALSE(solve_coefficients(build_training_system(seq, {0, 3, 3})).has_value());
        CHECK(adaptive_predict(seq, {0, 3, 3}) == 9);
        CHECK(adaptive_predict(seq, {0, 3, 3}) == fixed_estimate(seq, {0, 3, 3}));
    }
    SUBCASE("static ramp is predicted exactly") {
        const auto seq = hramp_sequence(3, 16, 8);
        for (int j = 2; j <= 13; ++j) {
            CHECK(adaptive_predict(seq, {0, 3, j}) == j);
        }
    }
    SUBCASE("identical state gives identical predictions") {
        const auto seq = hramp_sequence(3, 16, 8);
        const FrameSequence copy = seq;
        CHECK(adaptive_predict(seq, {1, 4, 7}) == adaptive_predict(copy, {1, 4, 7}));
        CHECK(adaptive_predict(seq, {1, 4, 7}) == adaptive_predict(seq, {1, 4, 7}));
    }
}

TEST_CASE("solve_coefficients matches the Cramer-rule oracle") {
    oracle::TestRng rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        // Diagonally dominant rows keep the system comfortably conditioned.
        TrainingSystem sys{};
        for (int m = 0; m < 6; ++m) {
            for (int c = 0; c < 6; ++c) sys.rows[m][c] = static_cast<double>(rng.below(41));
            sys.rows[m][m] += 300.0 + rng.below(256);
            sys.targets[m] = static_cast<double>(rng.below(256));
        }
        const auto fast = solve_coefficients(sys);
        const auto slow = oracle::solve_normal_equations(sys);
        REQUIRE(fast.has_value());
        REQUIRE(slow.has_value());
        for (int m = 0; m < 6; ++m) {
            CHECK(std::fabs((*fast)[m] - (*slow)[m]) <= 1e-8);
        }

        // Determined systems solve exactly: residual stays tiny.
        double ymax = 0.0;
        for (int m = 0; m < 6; ++m) ymax = std::max(ymax, std::fabs(sys.targets[m]));
        for (int m = 0; m < 6; ++m) {
            double fit = 0.0;
            for (int c = 0; c < 6; ++c) fit += sys.rows[m][c] * (*fast)[c];
            CHECK(std::fabs(fit - sys.targets[m]) <= 1e-6 * (1.0 + ymax));
        }
    }
}
