#include "galdir/combinadic.hpp"

#include <bit>
#include <stdexcept>

namespace galdir {

std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        const std::uint64_t num = n - k + i;
        if (r > ~0ull / num) throw std::overflow_error("binomial overflow");
        r = r * num / i;   // r*(n-k+i) is divisible by i at this point
    }
    return r;
}

std::uint64_t subset_rank(std::uint64_t mask) {
    std::uint64_t rank = 0;
    unsigned i = 1;
    while (mask) {
        const unsigned c = std::countr_zero(mask);
        rank += binomial(c, i);
        ++i;
        mask &= mask - 1;
    }
    return rank;
}

std::uint64_t subset_unrank(std::uint64_t rank, unsigned k) {
    std::uint64_t mask = 0;
    for (unsigned i = k; i >= 1; --i) {
        // largest c with C(c, i) <= rank
        unsigned c = i - 1;
        while (binomial(c + 1, i) <= rank) ++c;
        rank -= binomial(c, i);
        mask |= 1ull << c;
    }
    return mask;
}

std::uint64_t next_same_popcount(std::uint64_t mask) {
    const std::uint64_t low = mask & -mask;
    const std::uint64_t ripple = mask + low;
    const std::uint64_t ones = ((mask ^ ripple) >> 2) / low;
    return ripple | ones;
}

}  // namespace galdir
