#include "pool.hpp"

#include <string>

#include "common.hpp"

namespace alseg {

PoolState::PoolState(const std::vector<int>& training_ids)
    : universe_(training_ids.begin(), training_ids.end()),
      unlabeled_(universe_) {
    if (universe_.size() != training_ids.size())
        throw DomainError("PoolState: duplicate training ids");
    check_partition();
}

void PoolState::require_known(int id) const {
    if (!universe_.count(id))
        throw DomainError("pool: id " + std::to_string(id) + " not in training set");
}

void PoolState::promote_to_labeled(const std::vector<int>& ids) {
    for (int id : ids) {
        require_known(id);
        if (labeled_.count(id))
            throw DomainError("pool: id " + std::to_string(id) + " already labeled");
        if (!unlabeled_.count(id) && !pseudo_.count(id))
            throw DomainError("pool: id " + std::to_string(id) + " in no source pool");
    }
    for (int id : ids) {
        unlabeled_.erase(id);
        if (pseudo_.erase(id)) pseudo_masks_.erase(id);
        labeled_.insert(id);
    }
    check_partition();
}

void PoolState::promote_to_pseudo(const std::vector<int>& ids,
                                  const std::map<int, BinaryMask>& masks) {
    for (int id : ids) {
        require_known(id);
        if (labeled_.count(id) || pseudo_.count(id))
            throw DomainError("pool: id " + std::to_string(id) +
                              " not unlabeled, cannot pseudo-label");
        if (!masks.count(id))
            throw DomainError("pool: missing pseudo-mask for id " + std::to_string(id));
    }
    for (int id : ids) {
        unlabeled_.erase(id);
        pseudo_.insert(id);
        pseudo_masks_[id] = masks.at(id);
    }
    check_partition();
}

void PoolState::refresh_pseudo_mask(int id, BinaryMask mask) {
    if (!pseudo_.count(id))
        throw DomainError("pool: id " + std::to_string(id) + " not in pseudo set");
    pseudo_masks_[id] = std::move(mask);
    check_partition();
}

const BinaryMask& PoolState::pseudo_mask(int id) const {
    auto it = pseudo_masks_.find(id);
    if (it == pseudo_masks_.end())
        throw DomainError("pool: no pseudo-mask for id " + std::to_string(id));
    return it->second;
}

void PoolState::check_partition() const {
    ++checks_;
    if (unlabeled_.size() + labeled_.size() + pseudo_.size() != universe_.size())
        throw DomainError("pool: U+L+P size mismatch with training set");
    for (int id : universe_) {
        int member = (unlabeled_.count(id) ? 1 : 0) + (labeled_.count(id) ? 1 : 0) +
                     (pseudo_.count(id) ? 1 : 0);
        if (member != 1)
            throw DomainError("pool: id " + std::to_string(id) +
                              " in " + std::to_string(member) + " pools");
    }
    if (pseudo_masks_.size() != pseudo_.size())
        throw DomainError("pool: pseudo-mask store out of sync");
    for (int id : pseudo_)
        if (!pseudo_masks_.count(id))
            throw DomainError("pool: pseudo id " + std::to_string(id) + " lacks a mask");
}

}  // namespace alseg
