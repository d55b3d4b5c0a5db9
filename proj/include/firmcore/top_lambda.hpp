#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace firmcore {

/// The lambda-th largest entry of `degrees` (duplicates counted, 1-based).
/// Throws std::invalid_argument unless 1 <= lambda <= degrees.size().
std::uint32_t top_lambda(std::span<const std::uint32_t> degrees, std::size_t lambda);

/// How a node's Top-lambda degree is refreshed after one neighbor removal.
enum class TopLambdaUpdate {
    // Linear scan when lambda >= c * |L| / log2 |L|, selection otherwise.
    hybrid,
    // Count entries >= the current value; keep it if at least lambda do,
    // otherwise decrement. O(|L|).
    linear_scan,
    // Recompute the lambda-th largest from scratch. O(|L|) expected.
    selection,
};

/// Refreshes Top-lambda degrees after removals that lower every per-layer
/// entry by at most one, so the value itself drops by at most one.
class TopLambdaUpdater {
public:
    TopLambdaUpdater(std::size_t num_layers, std::size_t lambda, TopLambdaUpdate strategy,
                     double hybrid_constant = 1.0);

    /// New Top-lambda of `degrees`, given that it was `previous` before the
    /// last decrement round.
    std::uint32_t operator()(std::span<const std::uint32_t> degrees, std::uint32_t previous);

    bool uses_linear_scan() const noexcept { return linear_; }

private:
    std::size_t lambda_;
    bool linear_;
    std::vector<std::uint32_t> scratch_;
};

}  // namespace firmcore
