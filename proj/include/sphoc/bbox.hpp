#pragma once

#include <cstddef>

#include "sphoc/geometry.hpp"
#include "sphoc/spotting.hpp"

namespace sphoc {

struct BoundingBox {
    Point center;
    double width = 0.0;
    double height = 0.0;

    Rect rect() const {
        return {center.x - width / 2, center.y - height / 2, center.x + width / 2, center.y + height / 2};
    }
    static BoundingBox from_rect(const Rect& r) {
        return {{(r.x0 + r.x1) / 2, (r.y0 + r.y1) / 2}, r.width(), r.height()};
    }
};

/// Box spanned by the segment and a perpendicular axis-aligned cross line.
/// Near-horizontal (|angle| <= 45 deg): width = length, height = length / n.
/// Near-vertical: height = length, width = length * n.
BoundingBox line_to_bbox_unclipped(const LineSegment& segment, std::size_t n_chars);

/// As above, clipped to [0, image_width] x [0, image_height].
BoundingBox line_to_bbox(const LineSegment& segment, std::size_t n_chars, int image_width,
                         int image_height);

}  // namespace sphoc
