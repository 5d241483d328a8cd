#include <gtest/gtest.h>

#include <random>

#include "sphoc/error.hpp"
#include "sphoc/evaluation.hpp"
#include "support/oracles.hpp"
#include "support/synthetic_scene.hpp"

namespace sphoc {
namespace {

Quad box(double x0, double y0, double x1, double y1) {
    return {Point{x0, y0}, Point{x1, y0}, Point{x1, y1}, Point{x0, y1}};
}

Detection detection(std::string query, LineSegment s) {
    Detection d;
    d.query = std::move(query);
    d.segment = s;
    return d;
}

TEST(LineBoxOverlap, MidlineIsFullOverlap) {
    EXPECT_DOUBLE_EQ(line_box_overlap({10, 30, 110, 30}, box(10, 20, 110, 40)), 1.0);
}

TEST(LineBoxOverlap, OutsideIsZero) {
    EXPECT_EQ(line_box_overlap({0, 80, 50, 90}, box(10, 20, 110, 40)), 0.0);
}

TEST(LineBoxOverlap, HalfInsideMatchesSamplingOracle) {
    const Quad q = box(100, 0, 200, 30);
    const LineSegment s{50, 15, 150, 15};
    const double oracle = testing::sampled_inside_length(q, s.start(), s.end()) / 100.0;
    EXPECT_NEAR(oracle, 0.5, 1e-3);
    EXPECT_NEAR(line_box_overlap(s, q), oracle, 1e-3);
}

TEST(LineBoxOverlap, Errors) {
    EXPECT_THROW(line_box_overlap({1, 1, 1, 1}, box(0, 0, 5, 5)), Error);
    EXPECT_THROW(line_box_overlap({0, 0, 5, 5}, box(0, 0, 0, 5)), Error);
}

TEST(LineBoxOverlapProperty, MatchesOracleAndStaysInUnitRange) {
    std::mt19937_64 rng(70);
    std::uniform_real_distribution<double> pos(0.0, 200.0);
    for (int i = 0; i < 100; ++i) {
        const Quad q = testing::rotated_box(100, 100, 80, 24, pos(rng) - 100.0);
        const LineSegment s{pos(rng), pos(rng), pos(rng), pos(rng)};
        if (s.length() < 1.0) continue;
        const double got = line_box_overlap(s, q);
        EXPECT_GE(got, 0.0);
        EXPECT_LE(got, 1.0);
        const double oracle = testing::sampled_inside_length(q, s.start(), s.end(), 50000) / std::max(s.length(), 80.0);
        EXPECT_NEAR(got, oracle, 1e-2);
    }
}

TEST(EvaluateLines, PerfectDetections) {
    const SceneAnnotation gt{200, 100, {{box(10, 10, 90, 30), "Exit"}, {box(10, 50, 150, 80), "carpark"}}};
    const std::vector<Detection> dets{detection("exit", {10, 20, 90, 20}), detection("CARPARK", {10, 65, 150, 65})};
    for (double t : {0.1, 0.5, 1.0}) {
        const EvalReport r = evaluate_lines(dets, gt, t);
        EXPECT_EQ(r.true_positives, 2u);
        EXPECT_DOUBLE_EQ(r.precision(), 1.0);
        EXPECT_DOUBLE_EQ(r.recall(), 1.0);
        EXPECT_DOUBLE_EQ(r.accuracy(), 1.0);
    }
}

TEST(EvaluateLines, NoDetections) {
    SceneAnnotation gt{300, 100, {}};
    for (int i = 0; i < 5; ++i) gt.words.push_back({box(10 + 50 * i, 10, 50 + 50 * i, 30), "w" + std::to_string(i)});
    const EvalReport r = evaluate_lines({}, gt, 0.5);
    EXPECT_DOUBLE_EQ(r.precision(), 1.0);
    EXPECT_DOUBLE_EQ(r.recall(), 0.0);
    EXPECT_DOUBLE_EQ(r.accuracy(), 0.0);
    EXPECT_EQ(r.false_negatives, 5u);
}

TEST(EvaluateLines, UnqueriedWordsAreNotMissed) {
    const SceneAnnotation gt{200, 100, {{box(10, 10, 90, 30), "exit"}, {box(10, 50, 150, 80), "carpark"}}};
    const std::vector<std::string> queries{"exit"};
    const EvalReport r = evaluate_lines({}, gt, 0.5, queries);
    EXPECT_EQ(r.false_negatives, 1u);
}

TEST(EvaluateLines, EachWordMatchesOnce) {
    const SceneAnnotation gt{200, 100, {{box(10, 10, 90, 30), "exit"}}};
    const std::vector<Detection> dets{detection("exit", {10, 20, 90, 20}), detection("exit", {12, 21, 88, 21})};
    const EvalReport r = evaluate_lines(dets, gt, 0.5);
    EXPECT_EQ(r.true_positives, 1u);
    EXPECT_EQ(r.false_positives, 1u);
    EXPECT_EQ(r.false_negatives, 0u);
}

TEST(EvaluateLines, InvalidThreshold) {
    EXPECT_THROW(evaluate_lines({}, SceneAnnotation{}, 0.0), Error);
    EXPECT_THROW(evaluate_lines({}, SceneAnnotation{}, 1.5), Error);
}

TEST(EvaluateBboxes, IdenticalAndDisjoint) {
    const SceneAnnotation gt{200, 100, {{box(10, 10, 90, 30), "exit"}}};
    const std::vector<BoxDetection> same{{"exit", BoundingBox::from_rect({10, 10, 90, 30})}};
    EXPECT_EQ(evaluate_bboxes(same, gt).true_positives, 1u);
    const std::vector<BoxDetection> apart{{"exit", BoundingBox::from_rect({120, 50, 180, 90})}};
    const EvalReport r = evaluate_bboxes(apart, gt);
    EXPECT_EQ(r.true_positives, 0u);
    EXPECT_EQ(r.false_positives, 1u);
    EXPECT_EQ(r.false_negatives, 1u);
    EXPECT_DOUBLE_EQ(r.hmean(), 0.0);
}

TEST(EvalReport, HmeanAndSums) {
    EvalReport a{3, 1, 2};
    EXPECT_DOUBLE_EQ(a.precision(), 0.75);
    EXPECT_DOUBLE_EQ(a.recall(), 0.6);
    EXPECT_NEAR(a.hmean(), 2 * 0.75 * 0.6 / 1.35, 1e-15);
    a += EvalReport{1, 1, 1};
    EXPECT_EQ(a.true_positives, 4u);
    EXPECT_EQ(a.false_positives, 2u);
    EXPECT_EQ(a.false_negatives, 3u);
}

TEST(EvaluationProperty, ThresholdMonotoneAndAccuracyBound) {
    std::mt19937_64 rng(71);
    std::normal_distribution<double> jitter(0.0, 15.0);
    for (int trial = 0; trial < 30; ++trial) {
        const SceneAnnotation gt = testing::random_scene(rng);
        std::vector<Detection> dets;
        for (const auto& w : gt.words) {
            const Point a = 0.5 * (w.quad[0] + w.quad[3]);
            const Point b = 0.5 * (w.quad[1] + w.quad[2]);
            dets.push_back(detection(w.transcription, {a.x + jitter(rng), a.y + jitter(rng), b.x + jitter(rng),
                                                      b.y + jitter(rng)}));
        }
        std::size_t previous = dets.size() + 1;
        for (double t = 0.05; t <= 1.0; t += 0.05) {
            const EvalReport r = evaluate_lines(dets, gt, t);
            EXPECT_LE(r.true_positives, previous);
            previous = r.true_positives;
            if (r.true_positives > 0) EXPECT_LE(r.accuracy(), std::min(r.precision(), r.recall()));
        }
    }
}

}  // namespace
}  // namespace sphoc
