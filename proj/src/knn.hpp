#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "histogram.hpp"
#include "pool.hpp"

namespace alseg {

struct Neighbor {
    int id = -1;
    double divergence = 0.0;
};

// Per-class exact k-NN adjacency over training descriptors. Neighbor lists
// hold only same-class ids, never the query itself, sorted by
// (divergence ascending, id ascending), length min(k, class_size - 1).
// Built once per session; only the L membership test varies per round.
class NeighborIndex {
public:
    int k() const { return k_; }
    const std::vector<Neighbor>& neighbors(int id) const;
    bool contains(int id) const { return lists_.count(id) != 0; }

    // Distances come from JSD over the descriptors.
    static NeighborIndex build(const std::map<int, Descriptor>& descriptors,
                               const std::map<int, int>& class_labels, int k);

    // Same construction from an arbitrary symmetric distance; lets tests
    // drive the selection logic from hand-built geometries.
    static NeighborIndex build_from_distance(
        const std::vector<int>& ids, const std::map<int, int>& class_labels, int k,
        const std::function<double(int, int)>& distance);

private:
    int k_ = 0;
    std::map<int, std::vector<Neighbor>> lists_;
};

// U'': unlabeled samples with at least one oracle-labeled sample among their
// k nearest same-class neighbors. Anchoring at the unlabeled side is the
// production rule; it yields the larger candidate set.
std::set<int> select_pseudo_candidates(const NeighborIndex& index, const PoolState& pool);

// The smaller variant kept for comparison: unlabeled samples appearing in
// the neighbor list of some labeled sample.
std::set<int> select_pseudo_candidates_labeled_anchored(const NeighborIndex& index,
                                                        const PoolState& pool);

}  // namespace alseg
