#ifndef CCDIV_SOLUTION_HPP
#define CCDIV_SOLUTION_HPP

#include <cstdint>
#include <numeric>
#include <vector>

namespace ccdiv {

// A subset of nodes as a fixed-length bit vector; bits[i] == 1 selects node i.
struct Solution {
    std::vector<std::uint8_t> bits;

    Solution() = default;
    explicit Solution(int n) : bits(static_cast<std::size_t>(n), 0) {}

    int size() const { return static_cast<int>(bits.size()); }

    int ones() const {
        return std::accumulate(bits.begin(), bits.end(), 0,
                               [](int acc, std::uint8_t b) { return acc + (b != 0); });
    }

    bool operator==(const Solution&) const = default;
};

}  // namespace ccdiv

#endif
