#include "sphoc/spotting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "sphoc/encoder.hpp"
#include "sphoc/error.hpp"
#include "sphoc/simd/kernels.hpp"

namespace sphoc {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct Peak {
    std::size_t theta_index = 0;
    std::size_t rho_index = 0;
    int votes = 0;
};

struct HoughSpace {
    double diag = 0.0;
    std::size_t n_theta = 0;
    std::size_t n_rho = 0;
    std::vector<double> cos_t;
    std::vector<double> sin_t;

    double theta_deg(std::size_t k, double res) const { return static_cast<double>(k) * res; }
    double rho(std::size_t r, double res) const { return static_cast<double>(r) * res - diag; }
};

HoughSpace make_space(std::size_t h, std::size_t w, const SpottingConfig& cfg) {
    HoughSpace space;
    space.diag = std::hypot(static_cast<double>(w), static_cast<double>(h));
    space.n_theta = static_cast<std::size_t>(std::ceil(180.0 / cfg.hough_theta_res - 1e-9));
    space.n_rho = static_cast<std::size_t>(std::floor(2.0 * space.diag / cfg.hough_rho_res + 0.5)) + 1;
    space.cos_t.resize(space.n_theta);
    space.sin_t.resize(space.n_theta);
    for (std::size_t k = 0; k < space.n_theta; ++k) {
        const double angle = space.theta_deg(k, cfg.hough_theta_res) * kDegToRad;
        space.cos_t[k] = std::cos(angle);
        space.sin_t[k] = std::sin(angle);
    }
    return space;
}

// Peaks closer than the NMS window, treating (rho, theta) and (-rho, theta - 180) as the same line.
bool within_window(double rho_a, double theta_a, double rho_b, double theta_b, const SpottingConfig& cfg) {
    const double dtheta = std::abs(theta_a - theta_b);
    if (dtheta <= cfg.nms_theta && std::abs(rho_a - rho_b) <= cfg.nms_rho) return true;
    return 180.0 - dtheta <= cfg.nms_theta && std::abs(rho_a + rho_b) <= cfg.nms_rho;
}

bool mask_at(const Mask& mask, Point p) {
    if (p.x < 0.0 || p.y < 0.0) return false;
    const auto x = static_cast<std::size_t>(p.x);
    const auto y = static_cast<std::size_t>(p.y);
    return x < mask.width() && y < mask.height() && mask(y, x) != 0;
}

// Liang-Barsky clip of origin + t * dir against [0, w] x [0, h].
bool clip_line(Point origin, Point dir, double w, double h, double& t0, double& t1) {
    t0 = -std::numeric_limits<double>::infinity();
    t1 = std::numeric_limits<double>::infinity();
    const double p[4] = {-dir.x, dir.x, -dir.y, dir.y};
    const double q[4] = {origin.x, w - origin.x, origin.y, h - origin.y};
    for (int i = 0; i < 4; ++i) {
        if (std::abs(p[i]) < 1e-12) {
            if (q[i] < 0.0) return false;
            continue;
        }
        const double t = q[i] / p[i];
        if (p[i] < 0.0)
            t0 = std::max(t0, t);
        else
            t1 = std::min(t1, t);
    }
    return t0 < t1;
}

double angular_gap(double a_deg, double b_deg) {
    const double d = std::abs(a_deg - b_deg);
    return std::min(d, 180.0 - d);
}

struct LineFit {
    double rho = 0.0;
    double theta_deg = 0.0;
};

// Principal axis of the mask pixel centres lying within `band` of segment ab.
std::optional<LineFit> refine_line(const Mask& mask, Point a, Point b, Point normal, double band) {
    const double len = distance(a, b);
    const Point dir = (1.0 / len) * (b - a);
    const double x_lo = std::max(0.0, std::floor(std::min(a.x, b.x) - band - 1));
    const double y_lo = std::max(0.0, std::floor(std::min(a.y, b.y) - band - 1));
    const double x_hi = std::min<double>(static_cast<double>(mask.width()), std::ceil(std::max(a.x, b.x) + band + 1));
    const double y_hi = std::min<double>(static_cast<double>(mask.height()), std::ceil(std::max(a.y, b.y) + band + 1));
    double n = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (auto y = static_cast<std::size_t>(y_lo); static_cast<double>(y) < y_hi; ++y)
        for (auto x = static_cast<std::size_t>(x_lo); static_cast<double>(x) < x_hi; ++x) {
            if (!mask(y, x)) continue;
            const Point p{static_cast<double>(x) + 0.5, static_cast<double>(y) + 0.5};
            const double along = dot(p - a, dir);
            if (std::abs(dot(p - a, normal)) > band || along < -band || along > len + band) continue;
            n += 1;
            sx += p.x;
            sy += p.y;
            sxx += p.x * p.x;
            syy += p.y * p.y;
            sxy += p.x * p.y;
        }
    if (n < 2) return std::nullopt;
    const Point mean{sx / n, sy / n};
    const double cxx = sxx / n - mean.x * mean.x;
    const double cyy = syy / n - mean.y * mean.y;
    const double cxy = sxy / n - mean.x * mean.y;
    // Direction of largest spread; the normal is perpendicular to it.
    const double axis = 0.5 * std::atan2(2.0 * cxy, cxx - cyy);
    double theta = axis / kDegToRad + 90.0;
    theta = std::fmod(theta, 180.0);
    if (theta < 0.0) theta += 180.0;
    const double rho = mean.x * std::cos(theta * kDegToRad) + mean.y * std::sin(theta * kDegToRad);
    return LineFit{rho, theta};
}

std::optional<LineSegment> trim_to_support(const Mask& mask, double rho, double theta_deg, int votes,
                                           const SpottingConfig& cfg) {
    const double angle = theta_deg * kDegToRad;
    const Point normal{std::cos(angle), std::sin(angle)};
    const Point dir{-normal.y, normal.x};
    const Point origin = rho * normal;
    const double w = static_cast<double>(mask.width());
    const double h = static_cast<double>(mask.height());
    double t0 = 0.0, t1 = 0.0;
    if (!clip_line(origin, dir, w, h, t0, t1)) return std::nullopt;

    std::vector<double> offsets;
    for (double s = -cfg.band_halfwidth; s < cfg.band_halfwidth; s += 1.0) offsets.push_back(s);
    offsets.push_back(cfg.band_halfwidth);

    const auto steps = static_cast<std::size_t>(std::floor(t1 - t0));
    std::ptrdiff_t run_start = -1, run_last = -1;
    std::ptrdiff_t best_start = -1, best_last = -1;
    for (std::size_t k = 0; k <= steps; ++k) {
        const Point q = origin + (t0 + static_cast<double>(k)) * dir;
        const bool supported =
            std::any_of(offsets.begin(), offsets.end(), [&](double s) { return mask_at(mask, q + s * normal); });
        if (!supported) continue;
        const auto kk = static_cast<std::ptrdiff_t>(k);
        if (run_start < 0 || static_cast<double>(kk - run_last - 1) > cfg.gap_bridge) run_start = kk;
        run_last = kk;
        if (best_start < 0 || run_last - run_start > best_last - best_start) {
            best_start = run_start;
            best_last = run_last;
        }
    }
    if (best_start < 0 || best_last == best_start) return std::nullopt;

    Point a = origin + (t0 + static_cast<double>(best_start)) * dir;
    Point b = origin + (t0 + static_cast<double>(best_last)) * dir;

    // The accumulator only resolves the line to one bin; a total-least-squares
    // fit over the supporting pixels recovers the sub-bin position. Thick
    // regions give a strip along the bin's own direction, so they are unaffected.
    // Re-fitting moves the band onto the fitted line, so a couple of passes settle it.
    const double gate = std::max(cfg.hough_theta_res, cfg.nms_theta);
    Point n = normal;
    for (int pass = 0; pass < 3; ++pass) {
        const auto fit = refine_line(mask, a, b, n, cfg.band_halfwidth);
        if (!fit || angular_gap(fit->theta_deg, theta_deg) > gate) break;
        rho = fit->rho;
        theta_deg = fit->theta_deg;
        n = {std::cos(theta_deg * kDegToRad), std::sin(theta_deg * kDegToRad)};
        a = a - (dot(a, n) - rho) * n;
        b = b - (dot(b, n) - rho) * n;
    }

    const auto clamp_point = [&](Point p) { return Point{std::clamp(p.x, 0.0, w), std::clamp(p.y, 0.0, h)}; };
    a = clamp_point(a);
    b = clamp_point(b);
    if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);
    return LineSegment{a.x, a.y, b.x, b.y, rho, theta_deg, votes};
}

std::vector<double> channel_norms(const Descriptor& d) {
    std::vector<double> norms(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) norms[i] = simd::dot(d[i], d[i]);
    return norms;
}

double cosine_cost(const ClassVector& a, double aa, const ClassVector& b, double bb) {
    if (std::sqrt(aa) < 1e-12 || std::sqrt(bb) < 1e-12) return 1.0;
    const double similarity = simd::dot(a, b) / std::sqrt(aa * bb);
    return std::max(0.0, 1.0 - similarity);
}

}  // namespace

void validate(const SpottingConfig& cfg) {
    if (!(cfg.heatmap_threshold > 0.0 && cfg.heatmap_threshold < 1.0))
        throw Error(ErrorCode::InvalidArgument, "heatmap_threshold must lie in (0, 1)");
    if (!(cfg.hough_rho_res > 0.0) || !(cfg.hough_theta_res > 0.0) || cfg.hough_theta_res > 180.0)
        throw Error(ErrorCode::InvalidArgument, "Hough resolutions must be positive");
    if (cfg.hough_min_votes < 1) throw Error(ErrorCode::InvalidArgument, "hough_min_votes must be >= 1");
    if (cfg.nms_rho < 0.0 || cfg.nms_theta < 0.0 || cfg.gap_bridge < 0.0 || cfg.band_halfwidth < 0.0)
        throw Error(ErrorCode::InvalidArgument, "NMS window, gap bridge and band must be >= 0");
    if (cfg.max_candidates < 1) throw Error(ErrorCode::InvalidArgument, "max_candidates must be >= 1");
    if (cfg.query_samples_per_char < 1)
        throw Error(ErrorCode::InvalidArgument, "query_samples_per_char must be >= 1");
}

BigramHeatmap bigram_heatmap(const SoftPhocTensor& prob, std::string_view query) {
    const std::vector<CharClassId> classes = transcription_to_classes(query);
    if (classes.size() == 1) return prob.channel_plane(classes.front().index);

    std::map<std::uint8_t, Grid<double>> planes;
    for (CharClassId c : classes)
        if (!planes.contains(c.index)) planes.emplace(c.index, prob.channel_plane(c.index));

    BigramHeatmap heat(prob.height(), prob.width());
    for (std::size_t i = 0; i + 1 < classes.size(); ++i)
        simd::multiply_accumulate(planes.at(classes[i].index).values(),
                                  planes.at(classes[i + 1].index).values(), heat.values());
    return heat;
}

double query_peak_response(std::string_view query, const SpottingConfig& cfg) {
    const std::vector<CharClassId> classes = transcription_to_classes(query);
    const std::size_t width = cfg.query_samples_per_char * classes.size();
    const std::vector<double> profile = encode_word_profile(query, width);
    double peak = 0.0;
    for (std::size_t x = 0; x < width; ++x) {
        const double* column = profile.data() + x * kNumClasses;
        double value = 0.0;
        if (classes.size() == 1) {
            value = column[classes.front().index];
        } else {
            for (std::size_t i = 0; i + 1 < classes.size(); ++i)
                value += column[classes[i].index] * column[classes[i + 1].index];
        }
        peak = std::max(peak, value);
    }
    return peak;
}

Mask threshold_mask(const BigramHeatmap& heatmap, double threshold) {
    Mask mask(heatmap.height(), heatmap.width());
    simd::threshold_ge(heatmap.values(), threshold, mask.values());
    return mask;
}

std::vector<LineSegment> hough_lines(const Mask& mask, const SpottingConfig& cfg) {
    validate(cfg);
    const std::size_t h = mask.height();
    const std::size_t w = mask.width();
    if (std::none_of(mask.values().begin(), mask.values().end(), [](std::uint8_t v) { return v != 0; }))
        return {};

    const HoughSpace space = make_space(h, w, cfg);
    std::vector<std::int32_t> accumulator(space.n_theta * space.n_rho, 0);
    std::vector<std::int32_t> bins(space.n_theta);
    const simd::Kernels& kernels = simd::active();
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) {
            if (!mask(y, x)) continue;
            kernels.hough_bins(static_cast<double>(x) + 0.5, static_cast<double>(y) + 0.5, space.cos_t.data(),
                               space.sin_t.data(), space.diag, 1.0 / cfg.hough_rho_res, bins.data(),
                               space.n_theta);
            for (std::size_t k = 0; k < space.n_theta; ++k) {
                const auto r = static_cast<std::size_t>(std::clamp<std::int32_t>(bins[k], 0, static_cast<std::int32_t>(space.n_rho) - 1));
                ++accumulator[k * space.n_rho + r];
            }
        }

    std::vector<Peak> peaks;
    for (std::size_t k = 0; k < space.n_theta; ++k)
        for (std::size_t r = 0; r < space.n_rho; ++r) {
            const int votes = accumulator[k * space.n_rho + r];
            if (votes >= cfg.hough_min_votes) peaks.push_back({k, r, votes});
        }
    std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
        if (a.votes != b.votes) return a.votes > b.votes;
        if (a.rho_index != b.rho_index) return a.rho_index < b.rho_index;
        return a.theta_index < b.theta_index;
    });

    std::vector<LineSegment> segments;
    std::vector<std::pair<double, double>> kept;  // (rho, theta) of accepted peaks
    for (const Peak& peak : peaks) {
        if (segments.size() >= cfg.max_candidates) break;
        const double rho = space.rho(peak.rho_index, cfg.hough_rho_res);
        const double theta = space.theta_deg(peak.theta_index, cfg.hough_theta_res);
        const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](const auto& other) {
            return within_window(rho, theta, other.first, other.second, cfg);
        });
        if (suppressed) continue;
        kept.emplace_back(rho, theta);
        auto segment = trim_to_support(mask, rho, theta, peak.votes, cfg);
        if (!segment) continue;
        // Two grid peaks can refine onto the same line.
        const bool duplicate = std::any_of(segments.begin(), segments.end(), [&](const LineSegment& other) {
            return within_window(segment->rho, segment->theta, other.rho, other.theta, cfg);
        });
        if (!duplicate) segments.push_back(*segment);
    }
    return segments;
}

Descriptor sample_line_descriptor(const SoftPhocTensor& prob, const LineSegment& segment) {
    Point a = segment.start();
    Point b = segment.end();
    if (a == b) throw Error(ErrorCode::DegenerateSegment, "segment endpoints coincide");
    if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);
    if (prob.height() == 0 || prob.width() == 0) throw Error(ErrorCode::ShapeMismatch, "empty tensor");

    const double length = distance(a, b);
    const Point dir = (1.0 / length) * (b - a);
    const auto count = static_cast<std::size_t>(std::floor(length)) + 1;
    const double max_x = static_cast<double>(prob.width() - 1);
    const double max_y = static_cast<double>(prob.height() - 1);

    Descriptor out(count);
    for (std::size_t k = 0; k < count; ++k) {
        const Point p = a + static_cast<double>(k) * dir;
        const double fx = std::clamp(p.x - 0.5, 0.0, max_x);
        const double fy = std::clamp(p.y - 0.5, 0.0, max_y);
        const auto x0 = static_cast<std::size_t>(std::floor(fx));
        const auto y0 = static_cast<std::size_t>(std::floor(fy));
        const std::size_t x1 = std::min(x0 + 1, prob.width() - 1);
        const std::size_t y1 = std::min(y0 + 1, prob.height() - 1);
        const double ax = fx - static_cast<double>(x0);
        const double ay = fy - static_cast<double>(y0);

        ClassVector& v = out[k];
        v.fill(0.0);
        simd::axpy((1.0 - ax) * (1.0 - ay), prob.pixel(y0, x0), v);
        simd::axpy(ax * (1.0 - ay), prob.pixel(y0, x1), v);
        simd::axpy((1.0 - ax) * ay, prob.pixel(y1, x0), v);
        simd::axpy(ax * ay, prob.pixel(y1, x1), v);
    }
    return out;
}

Descriptor query_descriptor(std::string_view query, const SpottingConfig& cfg) {
    const std::size_t n = decode_utf8(query).size();
    const std::size_t width = cfg.query_samples_per_char * std::max<std::size_t>(n, 1);
    const std::vector<double> profile = encode_word_profile(query, width);
    Descriptor out(width);
    for (std::size_t x = 0; x < width; ++x)
        std::copy_n(profile.begin() + static_cast<std::ptrdiff_t>(x * kNumClasses), kNumClasses, out[x].begin());
    return out;
}

double cosine_distance(std::span<const double, kNumClasses> a, std::span<const double, kNumClasses> b) {
    const double aa = simd::dot(a, a);
    const double bb = simd::dot(b, b);
    if (std::sqrt(aa) < 1e-12 || std::sqrt(bb) < 1e-12) return 1.0;
    return std::max(0.0, 1.0 - simd::dot(a, b) / std::sqrt(aa * bb));
}

double dtw_distance(const Descriptor& a, const Descriptor& b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySequence, "DTW needs two non-empty sequences");
    const std::vector<double> norms_a = channel_norms(a);
    const std::vector<double> norms_b = channel_norms(b);
    const std::size_t m = b.size();

    std::vector<double> prev(m), curr(m);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double cost = cosine_cost(a[i], norms_a[i], b[j], norms_b[j]);
            double best;
            if (i == 0 && j == 0)
                best = 0.0;
            else if (i == 0)
                best = curr[j - 1];
            else if (j == 0)
                best = prev[j];
            else
                best = std::min({prev[j], curr[j - 1], prev[j - 1]});
            curr[j] = cost + best;
        }
        std::swap(prev, curr);
    }
    return prev[m - 1] / static_cast<double>(a.size() + m);
}

std::optional<Detection> spot(const SoftPhocTensor& prob, std::string_view query, const SpottingConfig& cfg) {
    validate(cfg);
    const BigramHeatmap heat = bigram_heatmap(prob, query);
    double threshold = cfg.heatmap_threshold;
    if (cfg.heatmap_scaling == HeatmapScaling::QueryPeak) threshold *= query_peak_response(query, cfg);
    const std::vector<LineSegment> candidates = hough_lines(threshold_mask(heat, threshold), cfg);
    if (candidates.empty()) return std::nullopt;

    const Descriptor target = query_descriptor(query, cfg);
    std::optional<Detection> best;
    for (const LineSegment& segment : candidates) {
        if (segment.length() <= 0.0) continue;
        const double d = dtw_distance(sample_line_descriptor(prob, segment), target);
        const auto better = [&](const Detection& cur) {
            if (d != cur.dtw_distance) return d < cur.dtw_distance;
            if (segment.votes != cur.segment.votes) return segment.votes > cur.segment.votes;
            if (segment.rho != cur.segment.rho) return segment.rho < cur.segment.rho;
            return segment.theta < cur.segment.theta;
        };
        if (!best || better(*best)) best = Detection{std::string(query), segment, d, 0};
    }
    if (best) best->candidates_considered = candidates.size();
    return best;
}

}  // namespace sphoc
