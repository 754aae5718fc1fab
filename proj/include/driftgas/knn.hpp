#pragma once

#include <cstddef>
#include <vector>

#include "driftgas/core.hpp"

namespace driftgas {

// Labeled reference points for nearest-neighbor queries. Insertion order is
// part of the contract: distance ties are broken by insertion index.
class ReferenceSet {
public:
    ReferenceSet() = default;
    ReferenceSet(std::vector<Vec> positions, std::vector<ClassId> labels);

    void add(Vec position, ClassId label);
    void pop_oldest(std::size_t count);  // sliding-window eviction

    std::size_t size() const { return positions_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<Vec>& positions() const { return positions_; }
    const std::vector<ClassId>& labels() const { return labels_; }

private:
    std::vector<Vec> positions_;
    std::vector<ClassId> labels_;
    std::size_t dim_ = 0;
};

// Majority label among the k Euclidean-nearest references (k clamped to the
// set size). Vote ties: smaller summed voter distance wins, then smaller
// class id. Exact brute-force search.
ClassId knn_predict(const Vec& query, const ReferenceSet& refs, std::size_t k);

std::vector<ClassId> knn_predict_batch(const std::vector<Vec>& queries,
                                       const ReferenceSet& refs, std::size_t k);

}  // namespace driftgas
