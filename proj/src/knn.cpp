#include "knn.hpp"

#include <algorithm>

#include "common.hpp"

namespace alseg {

const std::vector<Neighbor>& NeighborIndex::neighbors(int id) const {
    auto it = lists_.find(id);
    if (it == lists_.end())
        throw DomainError("neighbor index: unknown id " + std::to_string(id));
    return it->second;
}

NeighborIndex NeighborIndex::build_from_distance(
    const std::vector<int>& ids, const std::map<int, int>& class_labels, int k,
    const std::function<double(int, int)>& distance) {
    if (k < 1) throw DomainError("neighbor index: k must be >= 1");

    std::map<int, std::vector<int>> by_class;
    for (int id : ids) {
        auto it = class_labels.find(id);
        if (it == class_labels.end())
            throw DomainError("neighbor index: no class label for id " + std::to_string(id));
        by_class[it->second].push_back(id);
    }

    NeighborIndex index;
    index.k_ = k;
    for (auto& [label, members] : by_class) {
        std::sort(members.begin(), members.end());
        for (int query : members) {
            std::vector<Neighbor> cand;
            cand.reserve(members.size() - 1);
            for (int other : members) {
                if (other == query) continue;
                cand.push_back({other, distance(query, other)});
            }
            std::sort(cand.begin(), cand.end(), [](const Neighbor& a, const Neighbor& b) {
                if (a.divergence != b.divergence) return a.divergence < b.divergence;
                return a.id < b.id;
            });
            if (cand.size() > static_cast<std::size_t>(k))
                cand.resize(static_cast<std::size_t>(k));
            index.lists_.emplace(query, std::move(cand));
        }
    }
    return index;
}

NeighborIndex NeighborIndex::build(const std::map<int, Descriptor>& descriptors,
                                   const std::map<int, int>& class_labels, int k) {
    std::vector<int> ids;
    ids.reserve(descriptors.size());
    for (const auto& [id, _] : descriptors) ids.push_back(id);
    return build_from_distance(ids, class_labels, k, [&](int a, int b) {
        return jsd(descriptors.at(a), descriptors.at(b));
    });
}

std::set<int> select_pseudo_candidates(const NeighborIndex& index, const PoolState& pool) {
    std::set<int> out;
    for (int id : pool.unlabeled()) {
        for (const Neighbor& n : index.neighbors(id)) {
            if (pool.is_labeled(n.id)) {
                out.insert(id);
                break;
            }
        }
    }
    return out;
}

std::set<int> select_pseudo_candidates_labeled_anchored(const NeighborIndex& index,
                                                        const PoolState& pool) {
    std::set<int> out;
    for (int id : pool.labeled())
        for (const Neighbor& n : index.neighbors(id))
            if (pool.is_unlabeled(n.id)) out.insert(n.id);
    return out;
}

}  // namespace alseg
