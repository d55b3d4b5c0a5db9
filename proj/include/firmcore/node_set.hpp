#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace firmcore {

using NodeId = std::uint32_t;
using LayerId = std::uint32_t;
// Identifier as it appears in the input file.
using Label = std::uint64_t;

/// Strictly increasing list of internal node ids.
class NodeSet {
public:
    NodeSet() = default;

    /// Takes ownership of an already sorted, duplicate-free list.
    /// Throws std::invalid_argument if the order invariant is violated.
    explicit NodeSet(std::vector<NodeId> sorted_ids);

    /// Sorts and deduplicates.
    static NodeSet from_unsorted(std::vector<NodeId> ids);

    /// {0, 1, ..., n-1}
    static NodeSet all(std::size_t n);

    /// Nodes v with mask[v] set.
    static NodeSet from_mask(std::span<const bool> mask);
    static NodeSet from_mask(const std::vector<bool>& mask);

    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }
    bool contains(NodeId v) const noexcept;
    bool is_subset_of(const NodeSet& other) const noexcept;

    std::span<const NodeId> ids() const noexcept { return ids_; }
    auto begin() const noexcept { return ids_.begin(); }
    auto end() const noexcept { return ids_.end(); }
    NodeId operator[](std::size_t i) const noexcept { return ids_[i]; }

    /// Membership mask of length n. Throws std::out_of_range if an id >= n.
    std::vector<bool> to_mask(std::size_t n) const;

    friend bool operator==(const NodeSet&, const NodeSet&) = default;

private:
    std::vector<NodeId> ids_;
};

}  // namespace firmcore
