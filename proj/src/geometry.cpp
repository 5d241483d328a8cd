#include "sphoc/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

#include "sphoc/annotation.hpp"
#include "sphoc/error.hpp"

namespace sphoc {
namespace {

constexpr double kEps = 1e-9;

bool on_segment(Point p, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a) <= kEps;
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + t * ab) <= kEps;
}

int orientation(Point a, Point b, Point c) {
    const double v = cross(b - a, c - a);
    if (std::abs(v) <= kEps) return 0;
    return v > 0 ? 1 : -1;
}

bool segments_touch(Point p1, Point p2, Point q1, Point q2) {
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    return (o1 == 0 && on_segment(q1, p1, p2)) || (o2 == 0 && on_segment(q2, p1, p2)) ||
           (o3 == 0 && on_segment(p1, q1, q2)) || (o4 == 0 && on_segment(p2, q1, q2));
}

}  // namespace

double signed_area(const Quad& q) {
    double twice = 0.0;
    for (std::size_t i = 0; i < 4; ++i) twice += cross(q[i], q[(i + 1) % 4]);
    return twice / 2.0;
}

bool is_simple(const Quad& q) {
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (distance(q[i], q[j]) <= kEps) return false;
    return !segments_touch(q[0], q[1], q[2], q[3]) && !segments_touch(q[1], q[2], q[3], q[0]);
}

bool contains(const Quad& q, Point p) {
    bool inside = false;
    for (std::size_t i = 0, j = 3; i < 4; j = i++) {
        if (on_segment(p, q[j], q[i])) return true;
        if ((q[i].y > p.y) != (q[j].y > p.y)) {
            const double x_cross = q[j].x + (p.y - q[j].y) * (q[i].x - q[j].x) / (q[i].y - q[j].y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

Rect bounding_rect(const Quad& q) {
    Rect r{q[0].x, q[0].y, q[0].x, q[0].y};
    for (const Point& p : q) {
        r.x0 = std::min(r.x0, p.x);
        r.y0 = std::min(r.y0, p.y);
        r.x1 = std::max(r.x1, p.x);
        r.y1 = std::max(r.y1, p.y);
    }
    return r;
}

Rect intersect(const Rect& a, const Rect& b) {
    return {std::max(a.x0, b.x0), std::max(a.y0, b.y0), std::min(a.x1, b.x1), std::min(a.y1, b.y1)};
}

double iou(const Rect& a, const Rect& b) {
    const double inter = intersect(a, b).area();
    const double uni = a.area() + b.area() - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

SideLengths mean_side_lengths(const Quad& q) {
    return {(distance(q[0], q[1]) + distance(q[3], q[2])) / 2.0,
            (distance(q[0], q[3]) + distance(q[1], q[2])) / 2.0};
}

void require_valid_quad(const Quad& q) {
    if (std::abs(signed_area(q)) <= kEps || !is_simple(q))
        throw Error(ErrorCode::DegenerateQuad, "quadrilateral is self-intersecting or has zero area");
}

Homography Homography::from_correspondences(const Quad& from, const Quad& to) {
    Eigen::Matrix<double, 8, 8> a;
    Eigen::Matrix<double, 8, 1> b;
    for (int i = 0; i < 4; ++i) {
        const double x = from[i].x, y = from[i].y, u = to[i].x, v = to[i].y;
        a.row(2 * i) << x, y, 1, 0, 0, 0, -u * x, -u * y;
        a.row(2 * i + 1) << 0, 0, 0, x, y, 1, -v * x, -v * y;
        b(2 * i) = u;
        b(2 * i + 1) = v;
    }
    Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(a);
    lu.setThreshold(1e-12);
    if (lu.rank() < 8) throw Error(ErrorCode::DegenerateQuad, "homography is rank-deficient");
    const Eigen::Matrix<double, 8, 1> h = lu.solve(b);
    std::array<double, 9> m{h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), 1.0};
    const Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>> mat(m.data());
    if (std::abs(mat.determinant()) <= 1e-12)
        throw Error(ErrorCode::DegenerateQuad, "homography is singular");
    return Homography(m);
}

std::optional<Point> Homography::apply(Point p) const {
    const double w = m_[6] * p.x + m_[7] * p.y + m_[8];
    if (std::abs(w) < 1e-15) return std::nullopt;
    return Point{(m_[0] * p.x + m_[1] * p.y + m_[2]) / w, (m_[3] * p.x + m_[4] * p.y + m_[5]) / w};
}

double clipped_length(const Quad& q, Point a, Point b) {
    const Point d = b - a;
    const double len = std::hypot(d.x, d.y);
    if (len == 0.0) return 0.0;
    std::vector<double> cuts{0.0, 1.0};
    for (std::size_t i = 0; i < 4; ++i) {
        const Point e0 = q[i];
        const Point e = q[(i + 1) % 4] - e0;
        const double denom = cross(d, e);
        if (std::abs(denom) < 1e-15) continue;
        const double t = cross(e0 - a, e) / denom;
        const double s = cross(e0 - a, d) / denom;
        if (t > 0.0 && t < 1.0 && s >= -kEps && s <= 1.0 + kEps) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    double inside = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double span = cuts[k + 1] - cuts[k];
        if (span <= 0.0) continue;
        const double mid = (cuts[k] + cuts[k + 1]) / 2.0;
        if (contains(q, a + mid * d)) inside += span;
    }
    return inside * len;
}

void clamp_to_image(SceneAnnotation& scene) {
    const double w = scene.image_width;
    const double h = scene.image_height;
    for (WordAnnotation& word : scene.words)
        for (Point& p : word.quad) {
            p.x = std::clamp(p.x, 0.0, w);
            p.y = std::clamp(p.y, 0.0, h);
        }
}

}  // namespace sphoc
