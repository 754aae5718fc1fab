#include "driftgas/knn.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace driftgas {

ReferenceSet::ReferenceSet(std::vector<Vec> positions, std::vector<ClassId> labels)
    : positions_(std::move(positions)), labels_(std::move(labels)) {
    require(positions_.size() == labels_.size(), "knn: positions/labels size mismatch");
    require(!positions_.empty(), "knn: empty reference set");
    dim_ = positions_.front().size();
    for (const auto& p : positions_)
        require(p.size() == dim_, "knn: reference dimension mismatch");
}

void ReferenceSet::add(Vec position, ClassId label) {
    if (positions_.empty())
        dim_ = position.size();
    else
        require(position.size() == dim_, "knn: reference dimension mismatch");
    positions_.push_back(std::move(position));
    labels_.push_back(label);
}

void ReferenceSet::pop_oldest(std::size_t count) {
    count = std::min(count, positions_.size());
    positions_.erase(positions_.begin(), positions_.begin() + static_cast<std::ptrdiff_t>(count));
    labels_.erase(labels_.begin(), labels_.begin() + static_cast<std::ptrdiff_t>(count));
}

ClassId knn_predict(const Vec& query, const ReferenceSet& refs, std::size_t k) {
    require(refs.size() > 0, "knn: empty reference set");
    require(query.size() == refs.dim(), "knn: query dimension mismatch");
    require(k >= 1, "knn: k must be >= 1");
    k = std::min(k, refs.size());

    // (squared distance, insertion index); partial sort gives the k nearest
    // with the documented tie rule for free.
    std::vector<std::pair<double, std::size_t>> order(refs.size());
    for (std::size_t i = 0; i < refs.size(); ++i)
        order[i] = {squared_distance(query, refs.positions()[i]), i};
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                      order.end());

    // vote: count per class, ties by summed voter distance, then class id
    std::map<ClassId, std::pair<std::size_t, double>> tally;  // class -> (votes, sum dist)
    for (std::size_t i = 0; i < k; ++i) {
        auto& slot = tally[refs.labels()[order[i].second]];
        slot.first += 1;
        slot.second += std::sqrt(order[i].first);
    }

    ClassId best = tally.begin()->first;
    auto best_score = tally.begin()->second;
    for (const auto& [cls, score] : tally) {
        if (score.first > best_score.first ||
            (score.first == best_score.first && score.second < best_score.second)) {
            best = cls;
            best_score = score;
        }
    }
    return best;
}

std::vector<ClassId> knn_predict_batch(const std::vector<Vec>& queries,
                                       const ReferenceSet& refs, std::size_t k) {
    std::vector<ClassId> out;
    out.reserve(queries.size());
    for (const auto& q : queries) out.push_back(knn_predict(q, refs, k));
    return out;
}

}  // namespace driftgas
