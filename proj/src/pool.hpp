#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "image.hpp"

namespace alseg {

// Disjoint partition of the training ids into unlabeled / oracle-labeled /
// pseudo-labeled, with round-indexed transitions. Every mutation re-checks
// the partition invariant; the check counter lets tests assert that no
// mutation slipped through unvalidated.
class PoolState {
public:
    PoolState() = default;
    explicit PoolState(const std::vector<int>& training_ids);

    int round() const { return round_; }
    void advance_round() { ++round_; }

    const std::set<int>& unlabeled() const { return unlabeled_; }
    const std::set<int>& labeled() const { return labeled_; }
    const std::set<int>& pseudo() const { return pseudo_; }

    bool is_unlabeled(int id) const { return unlabeled_.count(id) != 0; }
    bool is_labeled(int id) const { return labeled_.count(id) != 0; }
    bool is_pseudo(int id) const { return pseudo_.count(id) != 0; }

    std::size_t universe_size() const { return universe_.size(); }

    // Moves ids into L. Permitted from U always; from P only under the
    // exhaustion fallback (the caller decides when that is, this type just
    // executes the transition). A promoted pseudo sample loses its stored
    // pseudo-mask; the oracle mask is attached by the caller on the Sample.
    void promote_to_labeled(const std::vector<int>& ids);

    // Moves ids from U into P with their predicted masks. `masks` must cover
    // exactly `ids`.
    void promote_to_pseudo(const std::vector<int>& ids,
                           const std::map<int, BinaryMask>& masks);

    // Replaces the stored mask of an id already in P.
    void refresh_pseudo_mask(int id, BinaryMask mask);

    const BinaryMask& pseudo_mask(int id) const;

    // Throws DomainError if U, L, P fail to partition the training ids or a
    // pseudo member is missing its mask.
    void check_partition() const;
    std::uint64_t partition_checks() const { return checks_; }

private:
    void require_known(int id) const;

    int round_ = 0;
    std::set<int> universe_;
    std::set<int> unlabeled_;
    std::set<int> labeled_;
    std::set<int> pseudo_;
    std::map<int, BinaryMask> pseudo_masks_;
    mutable std::uint64_t checks_ = 0;
};

}  // namespace alseg
