#include "firmcore/top_lambda.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace firmcore {

std::uint32_t top_lambda(std::span<const std::uint32_t> degrees, std::size_t lambda) {
    if (lambda < 1 || lambda > degrees.size()) {
        throw std::invalid_argument("lambda must lie in [1, number of layers]");
    }
    std::vector<std::uint32_t> copy(degrees.begin(), degrees.end());
    const auto nth = copy.begin() + static_cast<std::ptrdiff_t>(lambda - 1);
    std::nth_element(copy.begin(), nth, copy.end(), std::greater<>());
    return *nth;
}

TopLambdaUpdater::TopLambdaUpdater(std::size_t num_layers, std::size_t lambda, TopLambdaUpdate strategy,
                                   double hybrid_constant)
    : lambda_(lambda), scratch_(num_layers) {
    switch (strategy) {
        case TopLambdaUpdate::linear_scan:
            linear_ = true;
            break;
        case TopLambdaUpdate::selection:
            linear_ = false;
            break;
        case TopLambdaUpdate::hybrid:
            if (num_layers < 2) {
                linear_ = true;
            } else {
                const double layers = static_cast<double>(num_layers);
                linear_ = static_cast<double>(lambda) >= hybrid_constant * layers / std::log2(layers);
            }
            break;
    }
}

std::uint32_t TopLambdaUpdater::operator()(std::span<const std::uint32_t> degrees, std::uint32_t previous) {
    if (linear_) {
        std::size_t at_least = 0;
        for (std::uint32_t d : degrees) at_least += d >= previous ? 1 : 0;
        return at_least >= lambda_ ? previous : previous - 1;
    }
    std::copy(degrees.begin(), degrees.end(), scratch_.begin());
    const auto nth = scratch_.begin() + static_cast<std::ptrdiff_t>(lambda_ - 1);
    std::nth_element(scratch_.begin(), nth, scratch_.end(), std::greater<>());
    return *nth;
}

}  // namespace firmcore
