#include "metrics.hpp"

#include <cmath>

#include "common.hpp"

namespace alseg {

double dice(const BinaryMask& pred, const BinaryMask& gt) {
    if (pred.height != gt.height || pred.width != gt.width)
        throw DomainError("dice: mask dimensions differ");
    std::size_t inter = 0, a = 0, b = 0;
    for (std::size_t i = 0; i < pred.bits.size(); ++i) {
        a += pred.bits[i];
        b += gt.bits[i];
        inter += pred.bits[i] & gt.bits[i];
    }
    if (a + b == 0) return 1.0;
    return 2.0 * static_cast<double>(inter) / static_cast<double>(a + b);
}

double auc_dice(const std::vector<double>& curve) {
    if (curve.empty()) throw DomainError("auc_dice: empty curve");
    if (curve.size() == 1) return curve[0];
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        area += 0.5 * (curve[i - 1] + curve[i]);
    return area / static_cast<double>(curve.size() - 1);
}

MeanStd mean_std(const std::vector<double>& values) {
    if (values.empty()) throw DomainError("mean_std: no values");
    MeanStd out;
    for (double v : values) out.mean += v;
    out.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return out;
}

MethodAggregate aggregate_method(const std::string& method,
                                 const std::vector<std::vector<double>>& dice_curves) {
    if (dice_curves.empty()) throw DomainError("aggregate: no replications for " + method);
    std::size_t rounds = dice_curves.front().size();
    for (const auto& c : dice_curves)
        if (c.size() != rounds)
            throw DomainError("aggregate: replications of " + method +
                              " disagree on round count");

    MethodAggregate agg;
    agg.method = method;
    std::vector<double> aucs;
    aucs.reserve(dice_curves.size());
    for (const auto& c : dice_curves) aucs.push_back(auc_dice(c));
    agg.auc = mean_std(aucs);

    agg.per_round.resize(rounds);
    for (std::size_t r = 0; r < rounds; ++r) {
        std::vector<double> at_round;
        at_round.reserve(dice_curves.size());
        for (const auto& c : dice_curves) at_round.push_back(c[r]);
        agg.per_round[r] = mean_std(at_round);
    }
    return agg;
}

}  // namespace alseg
