#include "firmcore/node_set.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace firmcore {

NodeSet::NodeSet(std::vector<NodeId> sorted_ids) : ids_(std::move(sorted_ids)) {
    for (std::size_t i = 1; i < ids_.size(); ++i) {
        if (ids_[i - 1] >= ids_[i]) {
            throw std::invalid_argument("NodeSet ids must be strictly increasing");
        }
    }
}

NodeSet NodeSet::from_unsorted(std::vector<NodeId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    NodeSet s;
    s.ids_ = std::move(ids);
    return s;
}

NodeSet NodeSet::all(std::size_t n) {
    NodeSet s;
    s.ids_.resize(n);
    std::iota(s.ids_.begin(), s.ids_.end(), NodeId{0});
    return s;
}

NodeSet NodeSet::from_mask(std::span<const bool> mask) {
    NodeSet s;
    for (std::size_t v = 0; v < mask.size(); ++v) {
        if (mask[v]) s.ids_.push_back(static_cast<NodeId>(v));
    }
    return s;
}

NodeSet NodeSet::from_mask(const std::vector<bool>& mask) {
    NodeSet s;
    for (std::size_t v = 0; v < mask.size(); ++v) {
        if (mask[v]) s.ids_.push_back(static_cast<NodeId>(v));
    }
    return s;
}

bool NodeSet::contains(NodeId v) const noexcept {
    return std::binary_search(ids_.begin(), ids_.end(), v);
}

bool NodeSet::is_subset_of(const NodeSet& other) const noexcept {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

std::vector<bool> NodeSet::to_mask(std::size_t n) const {
    std::vector<bool> mask(n, false);
    for (NodeId v : ids_) {
        if (v >= n) throw std::out_of_range("node id out of range");
        mask[v] = true;
    }
    return mask;
}

}  // namespace firmcore
