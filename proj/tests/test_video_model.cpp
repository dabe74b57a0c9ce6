#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "rwm/error.hpp"
#include "rwm/video_model.hpp"

using namespace rwm;

TEST_CASE("traversal_order: 8x8 dot set enumerates the even-parity interior") {
    const std::vector<std::pair<int, int>> expected = {
        {2, 2}, {2, 4}, {3, 3}, {3, 5}, {4, 2}, {4, 4}, {5, 3}, {5, 5}};
    CHECK(traversal_order(8, 8, ParitySet::Dot) == expected);
}

TEST_CASE("traversal_order: frames without an interior yield nothing") {
    CHECK(traversal_order(4, 4, ParitySet::Dot).empty());
    CHECK(traversal_order(1, 1, ParitySet::Cross).empty());
    CHECK(traversal_order(64, 4, ParitySet::Dot).empty());
}

TEST_CASE("traversal_order: dot and cross are a disjoint cover of the interior") {
    for (int w : {5, 6, 8, 9, 13}) {
        for (int h : {5, 8, 11, 12}) {
            const auto dot = traversal_order(w, h, ParitySet::Dot);
            const auto cross = traversal_order(w, h, ParitySet::Cross);

            CHECK(dot == oracle::interior_coords(w, h, 0));
            CHECK(cross == oracle::interior_coords(w, h, 1));

            auto all = dot;
            all.insert(all.end(), cross.begin(), cross.end());
            std::sort(all.begin(), all.end());
            CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
            CHECK(all == oracle::interior_coords(w, h));

            CHECK(std::is_sorted(dot.begin(), dot.end()));
            CHECK(std::is_sorted(cross.begin(), cross.end()));
        }
    }
}

TEST_CASE("context_frames: forward partners, backward for the last two") {
    CHECK(context_frames(0, 18) == std::pair{1, 2});
    CHECK(context_frames(17, 18) == std::pair{16, 15});
    CHECK(context_frames(15, 18) == std::pair{16, 17});
    CHECK(context_frames(16, 18) == std::pair{15, 14});
    CHECK(context_frames(0, 3) == std::pair{1, 2});
    CHECK(context_frames(2, 3) == std::pair{1, 0});
    // Middle frame of a three-frame sequence: one predecessor plus the
    // remaining frame.
    CHECK(context_frames(1, 3) == std::pair{0, 2});
}

TEST_CASE("context_frames: never self, never out of range") {
    for (int n : {3, 4, 5, 18}) {
        for (int k = 0; k < n; ++k) {
            const auto [a, b] = context_frames(k, n);
            CHECK(a != k);
            CHECK(b != k);
            CHECK(a != b);
            CHECK(a >= 0);
            CHECK(a < n);
            CHECK(b >= 0);
            CHECK(b < n);
        }
    }
}

TEST_CASE("context_frames: fewer than three frames is rejected") {
    CHECK_THROWS_AS(context_frames(0, 2), Error);
    CHECK_THROWS_AS(context_frames(0, 0), Error);
}

TEST_CASE("FrameSequence::validate gates count and dimensions") {
    FrameSequence seq;
    seq.frames.assign(2, Frame(8, 8, 0));
    CHECK_THROWS_AS(seq.validate(), Error);

    seq.frames.assign(3, Frame(8, 8, 0));
    CHECK_NOTHROW(seq.validate());

    seq.frames.push_back(Frame(9, 8, 0));
    CHECK_THROWS_AS(seq.validate(), Error);
}
