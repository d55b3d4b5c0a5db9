#include "firmcore/bucket_queue.hpp"

#include <cassert>

namespace firmcore {

BucketQueue::BucketQueue(std::size_t num_nodes, std::size_t num_buckets)
    : head_(num_buckets, npos),
      tail_(num_buckets, npos),
      next_(num_nodes, npos),
      prev_(num_nodes, npos),
      bucket_of_(num_nodes, npos) {}

void BucketQueue::push(NodeId v, std::uint32_t bucket) {
    assert(!contains(v) && bucket < head_.size());
    bucket_of_[v] = bucket;
    next_[v] = npos;
    prev_[v] = tail_[bucket];
    if (tail_[bucket] == npos) {
        head_[bucket] = v;
    } else {
        next_[tail_[bucket]] = v;
    }
    tail_[bucket] = v;
}

void BucketQueue::remove(NodeId v) {
    assert(contains(v));
    const std::uint32_t b = bucket_of_[v];
    if (prev_[v] == npos) {
        head_[b] = next_[v];
    } else {
        next_[prev_[v]] = next_[v];
    }
    if (next_[v] == npos) {
        tail_[b] = prev_[v];
    } else {
        prev_[next_[v]] = prev_[v];
    }
    bucket_of_[v] = npos;
}

void BucketQueue::move(NodeId v, std::uint32_t bucket) {
    if (bucket_of_[v] == bucket) return;
    remove(v);
    push(v, bucket);
}

std::optional<NodeId> BucketQueue::pop(std::uint32_t bucket) {
    const std::uint32_t v = head_[bucket];
    if (v == npos) return std::nullopt;
    remove(v);
    return v;
}

}  // namespace firmcore
