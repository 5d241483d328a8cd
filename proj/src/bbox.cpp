#include "sphoc/bbox.hpp"

#include <algorithm>
#include <cmath>

#include "sphoc/error.hpp"

namespace sphoc {

BoundingBox line_to_bbox_unclipped(const LineSegment& segment, std::size_t n_chars) {
    if (n_chars < 1) throw Error(ErrorCode::InvalidArgument, "query must have at least one character");
    const double dx = segment.x2 - segment.x1;
    const double dy = segment.y2 - segment.y1;
    const double length = std::hypot(dx, dy);
    if (length <= 0.0) throw Error(ErrorCode::DegenerateSegment, "segment has zero length");

    const Point mid{(segment.x1 + segment.x2) / 2.0, (segment.y1 + segment.y2) / 2.0};
    const auto n = static_cast<double>(n_chars);
    // |angle| <= 45 deg, boundary included, without going through atan2.
    if (std::abs(dy) <= std::abs(dx)) return {mid, length, length / n};
    return {mid, length * n, length};
}

BoundingBox line_to_bbox(const LineSegment& segment, std::size_t n_chars, int image_width, int image_height) {
    const Rect r = line_to_bbox_unclipped(segment, n_chars).rect();
    // Clamping each edge (rather than intersecting) keeps a box that lies
    // wholly outside the image as a degenerate box on its border.
    const auto w = static_cast<double>(image_width);
    const auto h = static_cast<double>(image_height);
    const Rect clipped{std::clamp(r.x0, 0.0, w), std::clamp(r.y0, 0.0, h), std::clamp(r.x1, 0.0, w),
                       std::clamp(r.y1, 0.0, h)};
    return BoundingBox::from_rect(clipped);
}

}  // namespace sphoc
