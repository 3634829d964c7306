#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pce/evaluation.hpp"

using namespace pce;

namespace {

BoundingBox gt(double x0, double y0, double x1, double y1, int class_id = 0) {
    return BoundingBox{x0, y0, x1, y1, class_id, std::nullopt};
}

BoundingBox det(double x0, double y0, double x1, double y1, double conf,
                int class_id = 0) {
    return BoundingBox{x0, y0, x1, y1, class_id, conf};
}

} // namespace

TEST_CASE("iou basics: identity, disjoint, hand geometry") {
    CHECK(iou(gt(0, 0, 2, 2), gt(0, 0, 2, 2)) == 1.0);
    CHECK(iou(gt(0, 0, 1, 1), gt(5, 5, 6, 6)) == 0.0);
    // (0,0,2,2) vs (1,0,3,2): intersection 2, union 6
    CHECK(iou(gt(0, 0, 2, 2), gt(1, 0, 3, 2)) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("iou is symmetric and bounded on random boxes") {
    std::mt19937_64 rng(3);
    auto real = [&rng](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    for (int i = 0; i < 300; ++i) {
        const auto a = gt(real(0, 50), real(0, 50), real(50, 100), real(50, 100));
        const auto b = gt(real(0, 50), real(0, 50), real(50, 100), real(50, 100));
        const double ab = iou(a, b);
        CHECK(ab == iou(b, a));
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
        CHECK(iou(a, a) == 1.0);
    }
}

TEST_CASE("one detection hitting one truth at IoU 0.6") {
    // boxes with IoU exactly 60/100
    const auto truth = gt(0, 0, 10, 10);
    const auto hit = det(0, 0, 10, 6, 0.9);
    CHECK(iou(hit, truth) == doctest::Approx(0.6));
    const std::vector<BoundingBox> dets{hit};
    const std::vector<BoundingBox> truths{truth};
    CHECK(*average_precision(dets, truths, 0.50) == 1.0);
    CHECK(*average_precision(dets, truths, 0.60) == 1.0); // >= is inclusive
    CHECK(*average_precision(dets, truths, 0.65) == 0.0);
}

TEST_CASE("empty-side conventions") {
    const std::vector<BoundingBox> none;
    const std::vector<BoundingBox> truths{gt(0, 0, 1, 1)};
    const std::vector<BoundingBox> dets{det(0, 0, 1, 1, 0.5)};
    CHECK(*average_precision(dets, none, 0.5) == 0.0);
    CHECK(*average_precision(none, truths, 0.5) == 0.0);
    CHECK(!average_precision(none, none, 0.5).has_value());
}

TEST_CASE("hand-derived three-detection precision-recall curve gives 5/6") {
    const std::vector<BoundingBox> truths{gt(0, 0, 10, 10), gt(50, 50, 60, 60)};
    const std::vector<BoundingBox> dets{
        det(0, 0, 10, 10, 0.9),    // hits truth A
        det(80, 80, 90, 90, 0.8),  // misses
        det(50, 50, 60, 60, 0.7),  // hits truth B
    };
    const double ap = *average_precision(dets, truths, 0.5);
    CHECK(ap == doctest::Approx(5.0 / 6.0));
    CHECK(ap == doctest::Approx(
                    pce_test::brute_force_average_precision(dets, truths, 0.5)));
}

TEST_CASE("evaluator reproduces the 0.3 mAP single-pair sweep") {
    std::vector<ChunkLabel> truth(1);
    truth[0] = {0, {gt(0, 0, 10, 10)}};
    std::vector<ChunkLabel> dets(1);
    dets[0] = {0, {det(0, 0, 10, 6, 0.9)}};
    EvalConfig config;
    const APReport report = evaluate(dets, truth, config);
    CHECK(report.mean_ap == doctest::Approx(0.3));
    // passes 0.50/0.55/0.60 only
    CHECK(report.cells[0][0].ap == 1.0);
    CHECK(report.cells[0][1].ap == 1.0);
    CHECK(report.cells[0][2].ap == 1.0);
    CHECK(report.cells[0][3].ap == 0.0);
    // person class has no truth: excluded from the mean
    CHECK(std::isnan(report.class_mean_ap[1]));
}

TEST_CASE("perfect detections give mAP 1.0 with zero FP/FN") {
    std::vector<ChunkLabel> truth(3);
    std::vector<ChunkLabel> dets(3);
    std::mt19937_64 rng(9);
    for (int k = 0; k < 3; ++k) {
        truth[k].chunk_index = k;
        dets[k].chunk_index = k;
        const double x0 = static_cast<double>(rng() % 40);
        const double y0 = static_cast<double>(rng() % 40);
        const auto t = gt(x0, y0, x0 + 10, y0 + 8, k % 2);
        truth[k].boxes.push_back(t);
        auto d = t;
        d.confidence = 1.0;
        dets[k].boxes.push_back(d);
    }
    const APReport report = evaluate(dets, truth, EvalConfig{});
    CHECK(report.mean_ap == 1.0);
    for (std::size_t c = 0; c < report.class_names.size(); ++c) {
        for (const auto& cell : report.cells[c]) {
            if (!cell.applicable) continue;
            CHECK(cell.ap == 1.0);
            CHECK(cell.false_positives == 0);
            CHECK(cell.false_negatives == 0);
        }
    }
}

TEST_CASE("no detections give mAP 0 with FN equal to the truth count") {
    std::vector<ChunkLabel> truth(2);
    truth[0] = {0, {gt(0, 0, 5, 5, 0)}};
    truth[1] = {1, {gt(3, 3, 9, 9, 0)}};
    const APReport report = evaluate({}, truth, EvalConfig{});
    CHECK(report.mean_ap == 0.0);
    for (const auto& cell : report.cells[0]) {
        CHECK(cell.false_negatives == 2);
        CHECK(cell.true_positives == 0);
    }
}

TEST_CASE("AP is monotone non-increasing in the IoU threshold") {
    std::mt19937_64 rng(31);
    auto real = [&rng](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<BoundingBox> truths;
        std::vector<BoundingBox> dets;
        const int n_truth = 1 + static_cast<int>(rng() % 4);
        const int n_det = static_cast<int>(rng() % 5);
        for (int i = 0; i < n_truth; ++i) {
            const double x0 = real(0, 60);
            const double y0 = real(0, 60);
            truths.push_back(gt(x0, y0, x0 + real(4, 30), y0 + real(4, 30)));
        }
        for (int i = 0; i < n_det; ++i) {
            // jittered copies of random truths plus occasional noise boxes
            if (rng() % 4 != 0) {
                const auto& base = truths[rng() % truths.size()];
                const double dx = real(-4, 4), dy = real(-4, 4);
                dets.push_back(det(base.x_min + dx, base.y_min + dy,
                                   base.x_max + dx, base.y_max + dy,
                                   real(0.1, 1.0)));
            } else {
                const double x0 = real(0, 80);
                const double y0 = real(0, 80);
                dets.push_back(det(x0, y0, x0 + real(2, 15), y0 + real(2, 15),
                                   real(0.1, 1.0)));
            }
        }
        double previous = 2.0;
        for (double threshold : default_iou_thresholds()) {
            const auto ap = average_precision(dets, truths, threshold);
            REQUIRE(ap.has_value());
            CHECK(*ap <= previous + 1e-12);
            previous = *ap;
        }
    }
}

TEST_CASE("evaluate matches the brute-force scorer on small random instances") {
    std::mt19937_64 rng(101);
    auto real = [&rng](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    for (int trial = 0; trial < 100; ++trial) {
        // single class, single chunk, <= 4 boxes each side
        std::vector<BoundingBox> truths;
        std::vector<BoundingBox> dets;
        const int n_truth = 1 + static_cast<int>(rng() % 4);
        const int n_det = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < n_truth; ++i) {
            const double x0 = real(0, 50);
            const double y0 = real(0, 50);
            truths.push_back(gt(x0, y0, x0 + real(5, 25), y0 + real(5, 25)));
        }
        for (int i = 0; i < n_det; ++i) {
            const auto& base = truths[rng() % truths.size()];
            const double dx = real(-6, 6), dy = real(-6, 6);
            dets.push_back(det(base.x_min + dx, base.y_min + dy,
                               base.x_max + dx, base.y_max + dy,
                               real(0.05, 1.0)));
        }
        for (double threshold : {0.5, 0.75, 0.9}) {
            const auto fast = average_precision(dets, truths, threshold);
            const double slow = pce_test::brute_force_average_precision(
                dets, truths, threshold);
            REQUIRE(fast.has_value());
            CHECK(*fast == doctest::Approx(slow).epsilon(1e-12));
        }
    }
}

TEST_CASE("pooled evaluation equals per-chunk brute force on a known case") {
    // Two chunks, one class: pooling must rank all detections together.
    std::vector<ChunkLabel> truth(2);
    truth[0] = {0, {gt(0, 0, 10, 10)}};
    truth[1] = {1, {gt(0, 0, 10, 10)}};
    std::vector<ChunkLabel> dets(2);
    dets[0] = {0, {det(0, 0, 10, 10, 0.9)}};          // TP at conf .9
    dets[1] = {1, {det(30, 30, 40, 40, 0.95)}};        // FP at conf .95
    const APReport report = evaluate(dets, truth, EvalConfig{});
    // Order: FP(.95), TP(.9): precisions 0, 1/2 at recalls 0, 1/2.
    // Envelope AP = 1/2 * 1/2 = 1/4.
    CHECK(report.cells[0][0].ap == doctest::Approx(0.25));
}

TEST_CASE("misaligned chunk indices raise an alignment error") {
    std::vector<ChunkLabel> truth(1);
    truth[0] = {0, {gt(0, 0, 5, 5)}};
    std::vector<ChunkLabel> dets(1);
    dets[0] = {4, {det(0, 0, 5, 5, 0.9)}};
    CHECK_THROWS_AS(evaluate(dets, truth, EvalConfig{}), AlignmentError);
    // declared counts that disagree also fail
    std::vector<ChunkLabel> ok_dets(1);
    ok_dets[0] = {0, {det(0, 0, 5, 5, 0.9)}};
    CHECK_THROWS_AS(evaluate(ok_dets, truth, EvalConfig{}, 5, 1),
                    AlignmentError);
}

TEST_CASE("invalid threshold configurations are rejected") {
    std::vector<ChunkLabel> truth(1);
    truth[0] = {0, {gt(0, 0, 5, 5)}};
    EvalConfig config;
    config.iou_thresholds = {0.5, 0.5};
    CHECK_THROWS_AS(evaluate({}, truth, config), ParameterError);
    config.iou_thresholds = {0.0, 0.5};
    CHECK_THROWS_AS(evaluate({}, truth, config), ParameterError);
    config.iou_thresholds.clear();
    CHECK_THROWS_AS(evaluate({}, truth, config), ParameterError);
}

TEST_CASE("detections without confidence are rejected") {
    std::vector<ChunkLabel> truth(1);
    truth[0] = {0, {gt(0, 0, 5, 5)}};
    std::vector<ChunkLabel> dets(1);
    dets[0] = {0, {gt(0, 0, 5, 5)}};
    CHECK_THROWS_AS(evaluate(dets, truth, EvalConfig{}), ParameterError);
}

TEST_CASE("report serializations carry the threshold layout") {
    std::vector<ChunkLabel> truth(1);
    truth[0] = {0, {gt(0, 0, 10, 10)}};
    std::vector<ChunkLabel> dets(1);
    dets[0] = {0, {det(0, 0, 10, 10, 1.0)}};
    const APReport report = evaluate(dets, truth, EvalConfig{});
    const std::string csv = report.to_csv();
    CHECK(csv.find("class,AP@0.50,AP@0.55") != std::string::npos);
    CHECK(csv.find("AP@0.95,meanAP") != std::string::npos);
    CHECK(csv.find("ap_method: all-point-envelope") != std::string::npos);
    const std::string json = report.to_json();
    CHECK(json.find("\"map\": 1") != std::string::npos);
    CHECK(json.find("\"car\"") != std::string::npos);
}
