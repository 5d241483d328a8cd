#include "sphoc/evaluation.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "sphoc/error.hpp"

namespace sphoc {
namespace {

struct Candidate {
    double score;
    std::size_t detection;
    std::size_t word;
};

template <typename Score>
EvalReport greedy_match(std::span<const std::string> det_queries, const SceneAnnotation& gt, double threshold,
                        std::span<const std::string> queries, Score score) {
    std::vector<std::string> gt_keys;
    gt_keys.reserve(gt.words.size());
    for (const WordAnnotation& w : gt.words) gt_keys.push_back(fold_case(w.transcription));

    std::vector<Candidate> candidates;
    for (std::size_t d = 0; d < det_queries.size(); ++d) {
        const std::string key = fold_case(det_queries[d]);
        for (std::size_t g = 0; g < gt.words.size(); ++g) {
            if (gt_keys[g] != key) continue;
            const double s = score(d, g);
            if (s >= threshold) candidates.push_back({s, d, g});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(b.score, a.detection, a.word) < std::tie(a.score, b.detection, b.word);
    });

    std::vector<bool> det_used(det_queries.size(), false);
    std::vector<bool> gt_used(gt.words.size(), false);
    EvalReport report;
    for (const Candidate& c : candidates) {
        if (det_used[c.detection] || gt_used[c.word]) continue;
        det_used[c.detection] = true;
        gt_used[c.word] = true;
        ++report.true_positives;
    }
    report.false_positives = det_queries.size() - report.true_positives;

    std::set<std::string> queried;
    for (const std::string& q : queries) queried.insert(fold_case(q));
    for (const std::string& q : det_queries) queried.insert(fold_case(q));
    for (std::size_t g = 0; g < gt.words.size(); ++g)
        if (!gt_used[g] && queried.contains(gt_keys[g])) ++report.false_negatives;
    return report;
}

std::vector<std::string> all_transcriptions(const SceneAnnotation& gt) {
    std::vector<std::string> out;
    for (const WordAnnotation& w : gt.words) out.push_back(w.transcription);
    return out;
}

void require_threshold(double t) {
    if (!(t > 0.0 && t <= 1.0)) throw Error(ErrorCode::InvalidArgument, "threshold must lie in (0, 1]");
}

}  // namespace

double EvalReport::precision() const {
    const std::size_t denom = true_positives + false_positives;
    return denom == 0 ? 1.0 : static_cast<double>(true_positives) / static_cast<double>(denom);
}

double EvalReport::recall() const {
    const std::size_t denom = true_positives + false_negatives;
    return denom == 0 ? 1.0 : static_cast<double>(true_positives) / static_cast<double>(denom);
}

double EvalReport::accuracy() const {
    const std::size_t denom = true_positives + false_positives + false_negatives;
    return denom == 0 ? 1.0 : static_cast<double>(true_positives) / static_cast<double>(denom);
}

double EvalReport::hmean() const {
    const double p = precision();
    const double r = recall();
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

EvalReport& EvalReport::operator+=(const EvalReport& other) {
    true_positives += other.true_positives;
    false_positives += other.false_positives;
    false_negatives += other.false_negatives;
    return *this;
}

double line_box_overlap(const LineSegment& segment, const Quad& quad) {
    const double length = segment.length();
    if (length <= 0.0) throw Error(ErrorCode::DegenerateSegment, "segment has zero length");
    require_valid_quad(quad);
    const SideLengths sides = mean_side_lengths(quad);
    const double major = std::max(sides.horizontal, sides.vertical);
    const double inside = clipped_length(quad, segment.start(), segment.end());
    return std::clamp(inside / std::max(length, major), 0.0, 1.0);
}

EvalReport evaluate_lines(std::span<const Detection> detections, const SceneAnnotation& gt, double threshold,
                          std::span<const std::string> queries) {
    require_threshold(threshold);
    std::vector<std::string> det_queries;
    for (const Detection& d : detections) det_queries.push_back(d.query);
    return greedy_match(det_queries, gt, threshold, queries, [&](std::size_t d, std::size_t g) {
        if (detections[d].segment.length() <= 0.0) return 0.0;
        return line_box_overlap(detections[d].segment, gt.words[g].quad);
    });
}

EvalReport evaluate_lines(std::span<const Detection> detections, const SceneAnnotation& gt, double threshold) {
    const std::vector<std::string> queries = all_transcriptions(gt);
    return evaluate_lines(detections, gt, threshold, queries);
}

EvalReport evaluate_bboxes(std::span<const BoxDetection> boxes, const SceneAnnotation& gt, double iou_threshold,
                           std::span<const std::string> queries) {
    require_threshold(iou_threshold);
    std::vector<std::string> det_queries;
    for (const BoxDetection& b : boxes) det_queries.push_back(b.first);
    return greedy_match(det_queries, gt, iou_threshold, queries, [&](std::size_t d, std::size_t g) {
        return iou(boxes[d].second.rect(), bounding_rect(gt.words[g].quad));
    });
}

EvalReport evaluate_bboxes(std::span<const BoxDetection> boxes, const SceneAnnotation& gt, double iou_threshold) {
    const std::vector<std::string> queries = all_transcriptions(gt);
    return evaluate_bboxes(boxes, gt, iou_threshold, queries);
}

}  // namespace sphoc
