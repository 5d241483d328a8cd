#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sphoc/alphabet.hpp"
#include "sphoc/geometry.hpp"
#include "sphoc/tensor.hpp"

namespace sphoc {

struct LineSegment {
    double x1 = 0.0;
    double y1 = 0.0;
    double x2 = 0.0;
    double y2 = 0.0;
    double rho = 0.0;    // pixels
    double theta = 0.0;  // degrees in [0, 180)
    int votes = 0;

    Point start() const { return {x1, y1}; }
    Point end() const { return {x2, y2}; }
    double length() const { return std::hypot(x2 - x1, y2 - y1); }
};

using ClassVector = std::array<double, kNumClasses>;
using Descriptor = std::vector<ClassVector>;

enum class HeatmapScaling {
    None,       // threshold the raw pairwise-product sum
    QueryPeak,  // divide by the query's own peak response before thresholding
};

struct SpottingConfig {
    double heatmap_threshold = 0.2;
    HeatmapScaling heatmap_scaling = HeatmapScaling::QueryPeak;
    double hough_rho_res = 1.0;    // pixels
    double hough_theta_res = 1.0;  // degrees
    int hough_min_votes = 20;
    double nms_rho = 5.0;    // pixels
    double nms_theta = 5.0;  // degrees
    std::size_t max_candidates = 20;
    double gap_bridge = 5.0;      // pixels
    double band_halfwidth = 2.0;  // pixels
    std::size_t query_samples_per_char = 10;
};

/// Throws Error{InvalidArgument} on out-of-range fields.
void validate(const SpottingConfig& cfg);

struct Detection {
    std::string query;
    LineSegment segment;
    double dtw_distance = 0.0;
    std::size_t candidates_considered = 0;
};

/// Sum over consecutive query characters of the product of their channels;
/// the single channel itself for one-character queries.
BigramHeatmap bigram_heatmap(const SoftPhocTensor& prob, std::string_view query);

/// Peak of bigram_heatmap over the query's own descriptor. Used for QueryPeak scaling.
double query_peak_response(std::string_view query, const SpottingConfig& cfg);

/// mask = heatmap >= threshold (inclusive).
Mask threshold_mask(const BigramHeatmap& heatmap, double threshold);

/// Standard (rho, theta) voting over pixel centres, greedy non-maximum
/// suppression, then each peak is trimmed to its longest supported run.
std::vector<LineSegment> hough_lines(const Mask& mask, const SpottingConfig& cfg);

/// Bilinear samples at 1 px steps, ordered left to right (top to bottom on ties).
/// Throws Error{DegenerateSegment} if the endpoints coincide.
Descriptor sample_line_descriptor(const SoftPhocTensor& prob, const LineSegment& segment);

Descriptor query_descriptor(std::string_view query, const SpottingConfig& cfg);

/// 1 - cosine similarity; 1 when either vector is (near) zero.
double cosine_distance(std::span<const double, kNumClasses> a, std::span<const double, kNumClasses> b);

/// Symmetric-step DTW with cosine local cost, normalized by |a| + |b|.
/// Throws Error{EmptySequence}.
double dtw_distance(const Descriptor& a, const Descriptor& b);

/// Best-scoring candidate line for `query`, or nullopt when none survives.
std::optional<Detection> spot(const SoftPhocTensor& prob, std::string_view query,
                              const SpottingConfig& cfg = {});

}  // namespace sphoc
