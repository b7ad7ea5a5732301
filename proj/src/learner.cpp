#include "learner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "rng.hpp"

namespace alseg {

void LearnerConfig::validate() const {
    if (lambda < 0) throw ConfigError("learner: lambda must be >= 0");
    if (epochs < 1) throw ConfigError("learner: epochs must be >= 1");
    if (!(learning_rate > 0)) throw ConfigError("learner: learning_rate must be > 0");
    if (l2 < 0) throw ConfigError("learner: l2 must be >= 0");
    if (batch_pixels < 1) throw ConfigError("learner: batch_pixels must be >= 1");
}

SegmenterModel init_model(int channels, std::uint64_t init_seed) {
    SegmenterModel m;
    m.channels = channels;
    m.weights.resize(static_cast<std::size_t>(feature_count(channels)));
    Rng rng(derive_seed(init_seed, seed_tag::model_init));
    for (auto& w : m.weights) w = rng.uniform(-0.01, 0.01);
    m.bias = rng.uniform(-0.01, 0.01);
    return m;
}

namespace {

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + e^z) - m*z, computed without overflow.
double bce_from_logit(double z, double m) {
    double softplus = (z > 0 ? z : 0.0) + std::log1p(std::exp(-std::fabs(z)));
    return softplus - m * z;
}

double dot(const std::vector<double>& w, const double* f) {
    double z = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * f[j];
    return z;
}

void check_item(const TrainItem& item, std::size_t n_features) {
    if (!item.features || !item.mask)
        throw TrainError("train: item " + std::to_string(item.id) + " incomplete");
    if (item.features->count != static_cast<int>(n_features))
        throw TrainError("train: feature count mismatch for item " + std::to_string(item.id));
    if (item.mask->pixel_count() != item.features->pixel_count())
        throw TrainError("train: mask/feature size mismatch for item " +
                         std::to_string(item.id));
}

}  // namespace

double objective(const SegmenterModel& model, const std::vector<TrainItem>& items,
                 double l2, std::vector<double>* grad) {
    const std::size_t nw = model.weights.size();
    if (grad) grad->assign(nw + 1, 0.0);

    double loss = 0.0;
    for (const auto& item : items) {
        check_item(item, nw);
        if (item.weight == 0.0) continue;
        const std::size_t n = item.features->pixel_count();
        const double scale = item.weight / static_cast<double>(n);
        double item_loss = 0.0;
        for (std::size_t px = 0; px < n; ++px) {
            const double* f = item.features->at(px);
            double z = dot(model.weights, f) + model.bias;
            double m = item.mask->bits[px] ? 1.0 : 0.0;
            item_loss += bce_from_logit(z, m);
            if (grad) {
                double g = scale * (sigmoid(z) - m);
                for (std::size_t j = 0; j < nw; ++j) (*grad)[j] += g * f[j];
                (*grad)[nw] += g;
            }
        }
        loss += item.weight * item_loss / static_cast<double>(n);
    }

    for (std::size_t j = 0; j < nw; ++j) {
        loss += l2 * model.weights[j] * model.weights[j];
        if (grad) (*grad)[j] += 2.0 * l2 * model.weights[j];
    }
    if (!std::isfinite(loss))
        throw TrainError("objective: non-finite loss");
    return loss;
}

SegmenterModel train(const SegmenterModel& start, const std::vector<TrainItem>& labeled,
                     const std::vector<TrainItem>& pseudo, const LearnerConfig& cfg) {
    cfg.validate();
    if (labeled.empty()) throw TrainError("train: labeled set is empty");

    const std::size_t nw = start.weights.size();
    std::vector<TrainItem> order;
    order.reserve(labeled.size() + pseudo.size());
    for (const auto& it : labeled) {
        check_item(it, nw);
        order.push_back(it);
        order.back().weight = 1.0;
    }
    if (cfg.lambda > 0.0)
        for (const auto& it : pseudo) {
            check_item(it, nw);
            order.push_back(it);
            order.back().weight = cfg.lambda;
        }

    SegmenterModel model = start;
    std::vector<std::uint32_t> idx;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (const auto& item : order) {
            const std::size_t n = item.features->pixel_count();
            idx.resize(n);
            for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
            Rng rng(derive_seed(cfg.train_seed, seed_tag::train,
                                static_cast<std::uint64_t>(epoch),
                                static_cast<std::uint64_t>(item.id)));
            rng.shuffle(idx);

            for (std::size_t b = 0; b < n; b += static_cast<std::size_t>(cfg.batch_pixels)) {
                std::size_t end = std::min(n, b + static_cast<std::size_t>(cfg.batch_pixels));
                std::vector<double> grad(nw + 1, 0.0);
                const double scale = item.weight / static_cast<double>(n);
                for (std::size_t i = b; i < end; ++i) {
                    const double* f = item.features->at(idx[i]);
                    double z = dot(model.weights, f) + model.bias;
                    double m = item.mask->bits[idx[i]] ? 1.0 : 0.0;
                    double g = scale * (sigmoid(z) - m);
                    for (std::size_t j = 0; j < nw; ++j) grad[j] += g * f[j];
                    grad[nw] += g;
                }
                for (std::size_t j = 0; j < nw; ++j)
                    model.weights[j] -=
                        cfg.learning_rate * (grad[j] + 2.0 * cfg.l2 * model.weights[j]);
                model.bias -= cfg.learning_rate * grad[nw];
                if (!std::isfinite(model.bias))
                    throw TrainError("train: diverged (non-finite weights) at epoch " +
                                     std::to_string(epoch));
            }
        }
    }
    for (double w : model.weights)
        if (!std::isfinite(w)) throw TrainError("train: non-finite final weights");
    return model;
}

ProbabilityMap predict(const SegmenterModel& model, const FeatureMap& features) {
    if (features.count != static_cast<int>(model.weights.size()))
        throw DomainError("predict: feature/model shape mismatch");
    ProbabilityMap out(features.height, features.width);
    for (std::size_t px = 0; px < features.pixel_count(); ++px)
        out.values[px] = sigmoid(dot(model.weights, features.at(px)) + model.bias);
    return out;
}

ProbabilityMap predict(const SegmenterModel& model, const ImageTensor& image) {
    return predict(model, extract_features(image));
}

ProbabilityMap predict_stochastic(const SegmenterModel& model, const FeatureMap& features,
                                  double rate, std::uint64_t seed) {
    if (!(rate >= 0.0 && rate < 1.0))
        throw DomainError("predict_stochastic: rate must lie in [0,1)");
    if (rate == 0.0) return predict(model, features);

    Rng rng(seed);
    std::vector<double> dropped(model.weights.size());
    const double keep_scale = 1.0 / (1.0 - rate);
    for (std::size_t j = 0; j < dropped.size(); ++j)
        dropped[j] = rng.uniform() < rate ? 0.0 : model.weights[j] * keep_scale;

    ProbabilityMap out(features.height, features.width);
    for (std::size_t px = 0; px < features.pixel_count(); ++px)
        out.values[px] = sigmoid(dot(dropped, features.at(px)) + model.bias);
    return out;
}

void save_model(const std::string& path, const SegmenterModel& model,
                const LearnerConfig& cfg) {
    std::ofstream out(path);
    if (!out) throw IoError("save_model: cannot write " + path);
    char buf[64];
    out << "ALSEG-MODEL-1\n";
    out << "channels = " << model.channels << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.lambda);
    out << "lambda = " << buf << "\n";
    out << "epochs = " << cfg.epochs << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.learning_rate);
    out << "learning_rate = " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.l2);
    out << "l2 = " << buf << "\n";
    out << "batch_pixels = " << cfg.batch_pixels << "\n";
    out << "weights = " << model.weights.size() + 1 << "\n";
    for (double w : model.weights) {
        std::snprintf(buf, sizeof(buf), "%.17g", w);
        out << buf << "\n";
    }
    std::snprintf(buf, sizeof(buf), "%.17g", model.bias);
    out << buf << "\n";
    if (!out) throw IoError("save_model: write failed for " + path);
}

SegmenterModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_model: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "ALSEG-MODEL-1")
        throw IoError("load_model: " + path + " is not an ALSEG-MODEL-1 checkpoint");

    SegmenterModel model;
    std::size_t n_values = 0;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) break;  // first bare value line
        std::string key = line.substr(0, line.find(' '));
        std::string value = line.substr(eq + 1);
        if (key == "channels") model.channels = std::stoi(value);
        if (key == "weights") {
            n_values = static_cast<std::size_t>(std::stoul(value));
            break;
        }
    }
    if (model.channels == 0 || n_values == 0)
        throw IoError("load_model: malformed header in " + path);
    std::vector<double> values;
    values.reserve(n_values);
    while (values.size() < n_values && std::getline(in, line))
        values.push_back(std::stod(line));
    if (values.size() != n_values)
        throw IoError("load_model: expected " + std::to_string(n_values) +
                      " weight lines in " + path);
    model.bias = values.back();
    values.pop_back();
    model.weights = std::move(values);
    if (model.weights.size() != static_cast<std::size_t>(feature_count(model.channels)))
        throw IoError("load_model: weight count does not match channels in " + path);
    return model;
}

}  // namespace alseg
