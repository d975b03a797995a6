#pragma once

#include <cstdint>
#include <vector>

#include "sdlab/errors.hpp"
#include "sdlab/rational.hpp"

namespace sdlab {

// Finite symmetric window on the character group: all integer combinations
// sum c_i * g_i with |c_i| <= bound.  Always contains 0 and -y for every y.
struct TestBox {
    std::vector<Rational> generators;
    int bound = 1;

    // sorted ascending, duplicates merged
    std::vector<Rational> points() const;

    // (2*bound+1)^k before merging
    std::uint64_t raw_count() const;
};

inline std::uint64_t TestBox::raw_count() const {
    std::uint64_t n = 1;
    const std::uint64_t per = 2 * static_cast<std::uint64_t>(bound) + 1;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (n > (1u << 21)) throw BudgetExceeded("test box is too large to enumerate");
        n *= per;
    }
    return n;
}

}  // namespace sdlab
