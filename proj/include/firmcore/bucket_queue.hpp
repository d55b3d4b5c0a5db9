#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "firmcore/node_set.hpp"

namespace firmcore {

/// Nodes grouped into buckets by an integer key, FIFO within a bucket.
/// Insert, remove, move and pop are O(1); each node is in at most one bucket.
class BucketQueue {
public:
    BucketQueue(std::size_t num_nodes, std::size_t num_buckets);

    void push(NodeId v, std::uint32_t bucket);
    void remove(NodeId v);
    void move(NodeId v, std::uint32_t bucket);
    std::optional<NodeId> pop(std::uint32_t bucket);

    bool empty(std::uint32_t bucket) const noexcept { return head_[bucket] == npos; }
    bool contains(NodeId v) const noexcept { return bucket_of_[v] != npos; }
    std::uint32_t bucket_of(NodeId v) const noexcept { return bucket_of_[v]; }
    std::size_t num_buckets() const noexcept { return head_.size(); }

private:
    static constexpr std::uint32_t npos = UINT32_MAX;

    std::vector<std::uint32_t> head_;
    std::vector<std::uint32_t> tail_;
    std::vector<std::uint32_t> next_;
    std::vector<std::uint32_t> prev_;
    std::vector<std::uint32_t> bucket_of_;
};

}  // namespace firmcore
