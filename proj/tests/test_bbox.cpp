#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sphoc/bbox.hpp"
#include "sphoc/error.hpp"

namespace sphoc {
namespace {

TEST(LineToBbox, HorizontalDirectory) {
    const BoundingBox b = line_to_bbox({10, 50, 100, 50}, 9, 200, 200);
    EXPECT_DOUBLE_EQ(b.width, 90.0);
    EXPECT_DOUBLE_EQ(b.height, 10.0);
    EXPECT_DOUBLE_EQ(b.center.x, 55.0);
    EXPECT_DOUBLE_EQ(b.center.y, 50.0);
}

TEST(LineToBbox, VerticalMultipliesByCharacterCount) {
    const BoundingBox b = line_to_bbox({100, 20, 100, 50}, 3, 300, 300);
    EXPECT_DOUBLE_EQ(b.width, 90.0);
    EXPECT_DOUBLE_EQ(b.height, 30.0);
}

TEST(LineToBbox, FortyFiveDegreesIsHorizontal) {
    for (const LineSegment s : {LineSegment{0, 0, 40, 40}, LineSegment{0, 40, 40, 0}}) {
        const BoundingBox b = line_to_bbox_unclipped(s, 4);
        EXPECT_DOUBLE_EQ(b.width, std::hypot(40.0, 40.0));
        EXPECT_DOUBLE_EQ(b.height, std::hypot(40.0, 40.0) / 4);
    }
}

TEST(LineToBbox, ClipsToImage) {
    const BoundingBox b = line_to_bbox({-20, 5, 40, 5}, 2, 100, 100);
    const Rect r = b.rect();
    EXPECT_DOUBLE_EQ(r.x0, 0.0);
    EXPECT_DOUBLE_EQ(r.y0, 0.0);
    EXPECT_DOUBLE_EQ(r.x1, 40.0);
    EXPECT_DOUBLE_EQ(r.y1, 20.0);
}

TEST(LineToBbox, Errors) {
    EXPECT_THROW(line_to_bbox({3, 3, 3, 3}, 2, 10, 10), Error);
    EXPECT_THROW(line_to_bbox({0, 0, 5, 0}, 0, 10, 10), Error);
}

TEST(LineToBboxProperty, RandomSegmentsFollowTheAngleRule) {
    std::mt19937_64 rng(90);
    std::uniform_real_distribution<double> pos(-50.0, 250.0);
    std::uniform_int_distribution<std::size_t> chars(1, 15);
    for (int i = 0; i < 500; ++i) {
        const LineSegment s{pos(rng), pos(rng), pos(rng), pos(rng)};
        const std::size_t n = chars(rng);
        const BoundingBox b = line_to_bbox_unclipped(s, n);
        EXPECT_DOUBLE_EQ(b.center.x, (s.x1 + s.x2) / 2);
        EXPECT_DOUBLE_EQ(b.center.y, (s.y1 + s.y2) / 2);
        double angle = std::atan2(s.y2 - s.y1, s.x2 - s.x1) * 180.0 / std::numbers::pi;
        if (angle <= -90.0) angle += 180.0;
        if (angle > 90.0) angle -= 180.0;
        if (std::abs(angle) <= 45.0) {
            EXPECT_NEAR(b.width / b.height, static_cast<double>(n), 1e-9);
            EXPECT_DOUBLE_EQ(b.width, s.length());
        } else {
            EXPECT_DOUBLE_EQ(b.height, s.length());
        }
        const Rect clipped = line_to_bbox(s, n, 200, 200).rect();
        EXPECT_GE(clipped.x0, 0.0);
        EXPECT_GE(clipped.y0, 0.0);
        EXPECT_LE(clipped.x1, 200.0);
        EXPECT_LE(clipped.y1, 200.0);
    }
}

}  // namespace
}  // namespace sphoc
