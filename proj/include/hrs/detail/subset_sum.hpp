#ifndef HRS_DETAIL_SUBSET_SUM_HPP
#define HRS_DETAIL_SUBSET_SUM_HPP

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hrs::detail {

/// Picks a subset of `weights` whose sum lies in [lo, hi]. Among all such
/// subsets the one with the smallest sum wins, then the lexicographically
/// smallest list of positions. Returns positions into `weights`.
inline std::optional<std::vector<std::size_t>> pick_subset(std::span<const long long> weights, long long lo,
                                                           long long hi) {
    if (lo < 0) lo = 0;
    if (hi < lo) return std::nullopt;
    if (lo == 0) return std::vector<std::size_t>{};

    const auto n = weights.size();
    const auto width = static_cast<std::size_t>(hi) + 1;
    // suffix[i] holds the sums reachable using weights[i..n).
    std::vector<boost::dynamic_bitset<>> suffix(n + 1, boost::dynamic_bitset<>(width));
    suffix[n].set(0);
    for (std::size_t i = n; i-- > 0;) {
        suffix[i] = suffix[i + 1];
        const auto w = weights[i];
        if (w <= hi) suffix[i] |= suffix[i + 1] << static_cast<std::size_t>(w);
    }

    long long target = -1;
    for (long long t = lo; t <= hi; ++t) {
        if (suffix[0].test(static_cast<std::size_t>(t))) {
            target = t;
            break;
        }
    }
    if (target < 0) return std::nullopt;

    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < n && target > 0; ++i) {
        const auto w = weights[i];
        if (w <= target && suffix[i + 1].test(static_cast<std::size_t>(target - w))) {
            picked.push_back(i);
            target -= w;
        }
    }
    return picked;
}

}  // namespace hrs::detail

#endif
