#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace sdlab {

// Trial-division number theory; operands here are denominators and matrix
// entries, all far below 2^32, so nothing fancier is warranted.

bool is_prime(std::int64_t n);

// prime -> exponent, ascending, for n >= 1 (empty for 1)
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

// p-adic valuation of n != 0
int valuation(std::int64_t n, std::int64_t p);

std::int64_t next_prime(std::int64_t n);  // smallest prime > n

}  // namespace sdlab
