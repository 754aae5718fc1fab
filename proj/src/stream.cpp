#include "driftgas/stream.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace driftgas {

StreamSplit split_stream(const std::vector<LabeledInstance>& instances,
                         double labeled_fraction) {
    require(!instances.empty(), "split_stream: empty input");
    require(labeled_fraction > 0.0 && labeled_fraction < 1.0,
            "split_stream: labeled_fraction must be in (0,1)");

    const double expected_prefix =
        static_cast<double>(instances.size()) * labeled_fraction;
    const auto prefix_len = static_cast<std::size_t>(std::floor(expected_prefix));
    require(prefix_len >= 1, "split_stream: fraction yields an empty supervised prefix");
    // less than one instance of mass left for the suffix counts as empty
    require(expected_prefix <= static_cast<double>(instances.size() - 1),
            "split_stream: fraction yields an empty unsupervised suffix");

    StreamSplit split;
    split.t_s = prefix_len;

    std::vector<ClassId> seen;
    for (const auto& inst : instances) {
        require(inst.label.has_value(), "split_stream: instance without ground-truth label");
        require(is_finite(inst.features), "split_stream: non-finite feature vector");
        if (std::find(seen.begin(), seen.end(), *inst.label) == seen.end())
            seen.push_back(*inst.label);
    }
    std::sort(seen.begin(), seen.end());
    split.classes = std::move(seen);

    split.supervised.assign(instances.begin(),
                            instances.begin() + static_cast<std::ptrdiff_t>(prefix_len));
    split.unsupervised.reserve(instances.size() - prefix_len);
    split.eval_labels.reserve(instances.size() - prefix_len);
    for (std::size_t i = prefix_len; i < instances.size(); ++i) {
        split.eval_labels.push_back(*instances[i].label);
        split.unsupervised.push_back({instances[i].features, std::nullopt});
    }
    return split;
}

std::vector<Batch> batch_iter(const StreamSplit& split, std::size_t num_batches) {
    require(num_batches >= 1, "batch_iter: num_batches must be >= 1");
    require(!split.unsupervised.empty(), "batch_iter: empty unsupervised suffix");

    const std::size_t len = split.unsupervised.size();
    const std::size_t batch_size = (len + num_batches - 1) / num_batches;

    std::vector<Batch> batches;
    int index = 1;
    for (std::size_t off = 0; off < len; off += batch_size) {
        Batch b;
        b.index = index++;
        b.offset = off;
        const std::size_t end = std::min(off + batch_size, len);
        b.instances.assign(split.unsupervised.begin() + static_cast<std::ptrdiff_t>(off),
                           split.unsupervised.begin() + static_cast<std::ptrdiff_t>(end));
        batches.push_back(std::move(b));
    }
    return batches;
}

double class_imbalance_ratio(const std::vector<LabeledInstance>& supervised,
                             const std::vector<ClassId>& classes) {
    require(!classes.empty(), "class_imbalance_ratio: empty class set");
    std::map<ClassId, std::size_t> counts;
    for (ClassId c : classes) counts[c] = 0;
    for (const auto& inst : supervised) {
        require(inst.label.has_value(), "class_imbalance_ratio: unlabeled instance");
        auto it = counts.find(*inst.label);
        require(it != counts.end(), "class_imbalance_ratio: label outside declared class set");
        ++it->second;
    }

    std::size_t lo = supervised.size(), hi = 0;
    for (const auto& [cls, n] : counts) {
        if (n == 0)
            throw std::invalid_argument(
                "class_imbalance_ratio: class " + std::to_string(cls) +
                " absent from the supervised prefix");
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
    return static_cast<double>(hi) / static_cast<double>(lo);
}

}  // namespace driftgas
