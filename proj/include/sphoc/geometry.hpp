#pragma once

#include <array>
#include <cmath>
#include <optional>

namespace sphoc {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Word region, clockwise from top-left (in y-down image coordinates).
using Quad = std::array<Point, 4>;

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() > 0 && height() > 0 ? width() * height() : 0.0; }
    bool contains(Point p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
};

double signed_area(const Quad& q);
bool is_simple(const Quad& q);
/// Boundary-inclusive point-in-polygon.
bool contains(const Quad& q, Point p);
Rect bounding_rect(const Quad& q);
Rect intersect(const Rect& a, const Rect& b);
double iou(const Rect& a, const Rect& b);

/// Mean lengths of the top/bottom and left/right side pairs.
struct SideLengths {
    double horizontal = 0.0;
    double vertical = 0.0;
};
SideLengths mean_side_lengths(const Quad& q);

/// Throws Error{DegenerateQuad} unless the quad is simple with positive area.
void require_valid_quad(const Quad& q);

/// Projective map, row-major 3x3.
class Homography {
public:
    Homography() = default;
    explicit Homography(const std::array<double, 9>& m) : m_(m) {}

    /// Maps each `from[i]` onto `to[i]`. Throws Error{DegenerateQuad} if rank-deficient.
    static Homography from_correspondences(const Quad& from, const Quad& to);

    /// nullopt when the point maps to infinity.
    std::optional<Point> apply(Point p) const;
    const std::array<double, 9>& matrix() const { return m_; }

private:
    std::array<double, 9> m_{1, 0, 0, 0, 1, 0, 0, 0, 1};
};

/// Length of the part of segment [a, b] lying inside q (boundary inclusive).
double clipped_length(const Quad& q, Point a, Point b);

}  // namespace sphoc
