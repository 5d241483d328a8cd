#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sphoc/annotation.hpp"
#include "sphoc/bbox.hpp"
#include "sphoc/spotting.hpp"

namespace sphoc {

struct EvalReport {
    std::size_t true_positives = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;

    double precision() const;
    double recall() const;
    /// TP / (TP + FP + FN); 1 when all counts are zero.
    double accuracy() const;
    double hmean() const;

    EvalReport& operator+=(const EvalReport& other);
};

/// clipped length / max(segment length, longer mean side pair of the quad).
double line_box_overlap(const LineSegment& segment, const Quad& quad);

/// Line protocol. `queries` lists every query that was issued (found or not);
/// GT words with a queried transcription that end up unmatched count as FN.
EvalReport evaluate_lines(std::span<const Detection> detections, const SceneAnnotation& gt,
                          double threshold, std::span<const std::string> queries);

/// Same, with every GT transcription treated as queried.
EvalReport evaluate_lines(std::span<const Detection> detections, const SceneAnnotation& gt,
                          double threshold);

using BoxDetection = std::pair<std::string, BoundingBox>;

/// Bounding-box protocol: IoU against each GT quad's bounding rectangle.
EvalReport evaluate_bboxes(std::span<const BoxDetection> boxes, const SceneAnnotation& gt,
                           double iou_threshold, std::span<const std::string> queries);
EvalReport evaluate_bboxes(std::span<const BoxDetection> boxes, const SceneAnnotation& gt,
                           double iou_threshold = 0.5);

}  // namespace sphoc
