#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "learner.hpp"
#include "metrics.hpp"
#include "rng.hpp"

using namespace alseg;

namespace {

ImageTensor random_image(Rng& rng, int h, int w, int c) {
    ImageTensor img(h, w, c);
    for (auto& v : img.values) v = rng.uniform();
    return img;
}

BinaryMask random_mask(Rng& rng, int h, int w) {
    BinaryMask m(h, w);
    for (auto& b : m.bits) b = rng.uniform() < 0.5;
    return m;
}

struct Instance {
    std::vector<FeatureMap> features;
    std::vector<BinaryMask> masks;
    std::vector<TrainItem> items;
};

Instance random_instance(Rng& rng, int n_items, double weight, int h = 4, int w = 5) {
    Instance inst;
    inst.features.reserve(static_cast<std::size_t>(n_items));
    inst.masks.reserve(static_cast<std::size_t>(n_items));
    for (int i = 0; i < n_items; ++i) {
        inst.features.push_back(extract_features(random_image(rng, h, w, 3)));
        inst.masks.push_back(random_mask(rng, h, w));
    }
    for (int i = 0; i < n_items; ++i)
        inst.items.push_back({i, &inst.features[static_cast<std::size_t>(i)],
                              &inst.masks[static_cast<std::size_t>(i)], weight});
    return inst;
}

SegmenterModel random_model(Rng& rng, int channels) {
    SegmenterModel m;
    m.channels = channels;
    m.weights.resize(static_cast<std::size_t>(feature_count(channels)));
    for (auto& w : m.weights) w = rng.uniform(-1.0, 1.0);
    m.bias = rng.uniform(-1.0, 1.0);
    return m;
}

// Central finite differences of the objective, the independent oracle for
// the analytic gradient.
std::vector<double> fd_gradient(const SegmenterModel& model,
                                const std::vector<TrainItem>& items, double l2,
                                double step = 1e-5) {
    std::vector<double> grad(model.weights.size() + 1);
    for (std::size_t j = 0; j <= model.weights.size(); ++j) {
        SegmenterModel lo = model, hi = model;
        if (j < model.weights.size()) {
            lo.weights[j] -= step;
            hi.weights[j] += step;
        } else {
            lo.bias -= step;
            hi.bias += step;
        }
        grad[j] = (objective(hi, items, l2) - objective(lo, items, l2)) / (2.0 * step);
    }
    return grad;
}

double rel_err(double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-8});
}

}  // namespace

TEST_CASE("feature map basics on a constant gray image") {
    ImageTensor img(4, 4, 1, 0.5);
    FeatureMap fm = extract_features(img);
    CHECK(fm.count == 4);  // intensity, x, y, local mean
    for (std::size_t px = 0; px < fm.pixel_count(); ++px) {
        CHECK(fm.at(px)[0] == 0.5);
        CHECK(fm.at(px)[3] == doctest::Approx(0.5).epsilon(1e-15));
    }
    // Corner coordinates.
    CHECK(fm.at(0)[1] == 0.0);
    CHECK(fm.at(0)[2] == 0.0);
    const double* last = fm.at(fm.pixel_count() - 1);
    CHECK(last[1] == doctest::Approx(3.0 / 4.0));
    CHECK(last[2] == doctest::Approx(3.0 / 4.0));
}

TEST_CASE("3x3 local mean matches a brute-force windowed mean on a ramp") {
    ImageTensor img(4, 4, 1);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) img.at(0, y, x) = (y * 4 + x) / 16.0;
    FeatureMap fm = extract_features(img);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) {
            double sum = 0.0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    int yy = std::min(std::max(y + dy, 0), 3);
                    int xx = std::min(std::max(x + dx, 0), 3);
                    sum += img.at(0, yy, xx);
                }
            CHECK(fm.at(static_cast<std::size_t>(y * 4 + x))[3] ==
                  doctest::Approx(sum / 9.0).epsilon(1e-15));
        }
}

TEST_CASE("predict: zero weights give an all-0.5 map, calls are bit-identical") {
    SegmenterModel m;
    m.channels = 3;
    m.weights.assign(static_cast<std::size_t>(feature_count(3)), 0.0);
    m.bias = 0.0;
    Rng rng(31);
    ImageTensor img = random_image(rng, 5, 5, 3);
    ProbabilityMap p = predict(m, img);
    for (double v : p.values) CHECK(v == 0.5);

    SegmenterModel m2 = random_model(rng, 3);
    ProbabilityMap a = predict(m2, img);
    ProbabilityMap b = predict(m2, img);
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("predict on a hand-set 1x2 image matches scalar arithmetic") {
    // One channel: features are [intensity, x/W, y/H, mean3x3].
    ImageTensor img(1, 2, 1);
    img.at(0, 0, 0) = 0.2;
    img.at(0, 0, 1) = 0.8;
    SegmenterModel m;
    m.channels = 1;
    m.weights = {1.0, -0.5, 0.25, 2.0};
    m.bias = 0.1;
    ProbabilityMap p = predict(m, img);
    // Edge replication duplicates the edge pixel, so the 3x3 window of
    // pixel 0 holds {0.2, 0.2, 0.8} per row: mean 0.4 (and 0.6 for pixel 1).
    double z0 = 1.0 * 0.2 - 0.5 * 0.0 + 0.25 * 0.0 + 2.0 * 0.4 + 0.1;
    double z1 = 1.0 * 0.8 - 0.5 * 0.5 + 0.25 * 0.0 + 2.0 * 0.6 + 0.1;
    CHECK(p.at(0, 0) == doctest::Approx(1.0 / (1.0 + std::exp(-z0))).epsilon(1e-15));
    CHECK(p.at(0, 1) == doctest::Approx(1.0 / (1.0 + std::exp(-z1))).epsilon(1e-15));
}

TEST_CASE("binarize threshold convention: p >= threshold is foreground") {
    ProbabilityMap half(2, 2, 0.5);
    BinaryMask all_fg = binarize(half, 0.5);
    CHECK(all_fg.foreground_count() == 4);

    ProbabilityMap p(1, 2);
    p.values = {0.4, 0.6};
    BinaryMask m = binarize(p, 0.5);
    CHECK_FALSE(m.at(0, 0));
    CHECK(m.at(0, 1));
    CHECK_THROWS_AS(binarize(half, 0.0), DomainError);
}

TEST_CASE("gradient check: analytic objective gradient vs central differences") {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        Instance labeled = random_instance(rng, 2, 1.0);
        Instance pseudo = random_instance(rng, 2, 0.37);
        std::vector<TrainItem> items = labeled.items;
        items.insert(items.end(), pseudo.items.begin(), pseudo.items.end());
        SegmenterModel model = random_model(rng, 3);

        std::vector<double> analytic;
        objective(model, items, 1e-3, &analytic);
        std::vector<double> fd = fd_gradient(model, items, 1e-3);
        REQUIRE(analytic.size() == fd.size());
        for (std::size_t j = 0; j < fd.size(); ++j)
            CHECK(rel_err(analytic[j], fd[j]) < 1e-5);
    }
}

TEST_CASE("doubling lambda exactly doubles the pseudo gradient") {
    Rng rng(55);
    Instance pseudo = random_instance(rng, 3, 0.0);
    SegmenterModel model = random_model(rng, 3);

    for (double lambda : {0.1, 0.37, 1.0}) {
        auto items_at = [&](double lam) {
            auto items = pseudo.items;
            for (auto& it : items) it.weight = lam;
            return items;
        };
        std::vector<double> g1, g2;
        objective(model, items_at(lambda), 0.0, &g1);
        objective(model, items_at(2.0 * lambda), 0.0, &g2);
        for (std::size_t j = 0; j < g1.size(); ++j) CHECK(g2[j] == 2.0 * g1[j]);
    }
}

TEST_CASE("full-batch descent is monotone on a 4-sample instance") {
    Rng rng(77);
    Instance inst = random_instance(rng, 4, 1.0);
    SegmenterModel model = random_model(rng, 3);
    std::vector<double> grad;
    double prev = objective(model, inst.items, 1e-4, &grad);
    for (int step = 0; step < 50; ++step) {
        for (std::size_t j = 0; j < model.weights.size(); ++j)
            model.weights[j] -= 0.05 * grad[j];
        model.bias -= 0.05 * grad.back();
        double now = objective(model, inst.items, 1e-4, &grad);
        CHECK(now <= prev + 1e-12);
        prev = now;
    }
}

TEST_CASE("lambda = 0 training walks the labeled-only trajectory exactly") {
    Rng rng(303);
    Instance labeled = random_instance(rng, 3, 1.0, 6, 6);
    Instance pseudo = random_instance(rng, 4, 1.0, 6, 6);
    // Pseudo item ids offset so per-item batch seeds stay distinct.
    for (std::size_t i = 0; i < pseudo.items.size(); ++i)
        pseudo.items[i].id = 100 + static_cast<int>(i);

    LearnerConfig cfg;
    cfg.lambda = 0.0;
    cfg.epochs = 4;
    cfg.learning_rate = 0.3;
    cfg.batch_pixels = 16;
    cfg.train_seed = 9;

    SegmenterModel start = init_model(3, 1234);
    SegmenterModel with_pseudo = train(start, labeled.items, pseudo.items, cfg);
    SegmenterModel without = train(start, labeled.items, {}, cfg);
    for (std::size_t j = 0; j < with_pseudo.weights.size(); ++j)
        CHECK(with_pseudo.weights[j] == without.weights[j]);
    CHECK(with_pseudo.bias == without.bias);
}

TEST_CASE("re-training with identical seeds reproduces identical weights") {
    Rng rng(404);
    Instance labeled = random_instance(rng, 2, 1.0, 6, 6);
    Instance pseudo = random_instance(rng, 2, 1.0, 6, 6);
    LearnerConfig cfg;
    cfg.lambda = 0.5;
    cfg.epochs = 3;
    cfg.train_seed = 11;
    SegmenterModel start = init_model(3, 77);
    SegmenterModel a = train(start, labeled.items, pseudo.items, cfg);
    SegmenterModel b = train(start, labeled.items, pseudo.items, cfg);
    for (std::size_t j = 0; j < a.weights.size(); ++j) CHECK(a.weights[j] == b.weights[j]);
    CHECK(a.bias == b.bias);
}

TEST_CASE("training overfits a single all-foreground sample") {
    Rng rng(505);
    ImageTensor img = random_image(rng, 8, 8, 3);
    FeatureMap fm = extract_features(img);
    BinaryMask mask(8, 8, true);
    std::vector<TrainItem> labeled = {{0, &fm, &mask, 1.0}};

    LearnerConfig cfg;
    cfg.epochs = 200;
    cfg.learning_rate = 1.0;
    cfg.l2 = 0.0;
    cfg.train_seed = 3;
    SegmenterModel model = train(init_model(3, 9), labeled, {}, cfg);

    ProbabilityMap p = predict(model, fm);
    double mean = 0.0;
    for (double v : p.values) mean += v;
    mean /= static_cast<double>(p.values.size());
    CHECK(mean > 0.9);
    CHECK(dice(binarize(p, 0.5), mask) > 0.95);
}

TEST_CASE("one epoch of SGD lowers the objective from the initial weights") {
    Rng rng(606);
    Instance labeled = random_instance(rng, 3, 1.0, 8, 8);
    // Structured masks (top half foreground) so there is signal to fit.
    for (auto& m : labeled.masks)
        for (int y = 0; y < m.height; ++y)
            for (int x = 0; x < m.width; ++x) m.set(y, x, y < m.height / 2);

    LearnerConfig cfg;
    cfg.epochs = 1;
    cfg.learning_rate = 0.5;
    cfg.train_seed = 5;
    SegmenterModel start = init_model(3, 21);
    double before = objective(start, labeled.items, cfg.l2);
    SegmenterModel after = train(start, labeled.items, {}, cfg);
    CHECK(objective(after, labeled.items, cfg.l2) < before);
}

TEST_CASE("training requires a non-empty labeled set") {
    LearnerConfig cfg;
    CHECK_THROWS_AS(train(init_model(3, 1), {}, {}, cfg), TrainError);
}

TEST_CASE("predict_stochastic: rate 0 equals predict, fixed seed is stable") {
    Rng rng(707);
    SegmenterModel m = random_model(rng, 3);
    FeatureMap fm = extract_features(random_image(rng, 6, 6, 3));
    ProbabilityMap plain = predict(m, fm);
    ProbabilityMap zero_rate = predict_stochastic(m, fm, 0.0, 99);
    for (std::size_t i = 0; i < plain.values.size(); ++i)
        CHECK(plain.values[i] == zero_rate.values[i]);

    ProbabilityMap a = predict_stochastic(m, fm, 0.4, 99);
    ProbabilityMap b = predict_stochastic(m, fm, 0.4, 99);
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
    CHECK_THROWS_AS(predict_stochastic(m, fm, 1.0, 1), DomainError);
}

TEST_CASE("high dropout with zero bias pushes the mean map toward 0.5") {
    Rng rng(808);
    SegmenterModel m = random_model(rng, 3);
    m.bias = 0.0;
    FeatureMap fm = extract_features(random_image(rng, 6, 6, 3));
    double mean = 0.0;
    int passes = 200;
    for (int pass = 0; pass < passes; ++pass) {
        ProbabilityMap p = predict_stochastic(m, fm, 0.99, derive_seed(5, 1, pass));
        for (double v : p.values) mean += v;
    }
    mean /= static_cast<double>(passes) * fm.pixel_count();
    CHECK(std::fabs(mean - 0.5) < 0.08);
}

TEST_CASE("model checkpoints round-trip exactly and reject foreign files") {
    namespace fs = std::filesystem;
    Rng rng(909);
    SegmenterModel m = random_model(rng, 3);
    LearnerConfig cfg;
    fs::path path = fs::temp_directory_path() / "alseg_test_model.txt";
    save_model(path.string(), m, cfg);
    SegmenterModel loaded = load_model(path.string());
    CHECK(loaded.channels == m.channels);
    REQUIRE(loaded.weights.size() == m.weights.size());
    for (std::size_t j = 0; j < m.weights.size(); ++j)
        CHECK(loaded.weights[j] == m.weights[j]);
    CHECK(loaded.bias == m.bias);
    fs::remove(path);

    fs::path bogus = fs::temp_directory_path() / "alseg_test_bogus.txt";
    {
        std::ofstream out(bogus);
        out << "not a checkpoint\n";
    }
    CHECK_THROWS_AS(load_model(bogus.string()), IoError);
    fs::remove(bogus);
}
