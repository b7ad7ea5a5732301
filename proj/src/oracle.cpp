#include "oracle.hpp"

#include "common.hpp"

namespace alseg {

double Evaluator::pseudo_dice(const PoolState& pool) const {
    if (pool.pseudo().empty())
        throw DomainError("pseudo_dice: P is empty");
    double sum = 0.0;
    for (int id : pool.pseudo())
        sum += dice(pool.pseudo_mask(id), ground_truth(id));
    return sum / static_cast<double>(pool.pseudo().size());
}

}  // namespace alseg
