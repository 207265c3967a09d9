#pragma once

// Bit-packed sets of affine points of AG(n,q), addressed by affine rank.

#include <cstdint>
#include <vector>

#include "galdir/pg.hpp"

namespace galdir {

namespace bits {

inline constexpr std::size_t words_for(std::uint64_t n) { return (n + 63) / 64; }

inline bool test(const std::vector<std::uint64_t>& w, std::uint64_t i) {
    return (w[i >> 6] >> (i & 63)) & 1;
}
inline void set(std::vector<std::uint64_t>& w, std::uint64_t i) { w[i >> 6] |= 1ull << (i & 63); }
inline void clear(std::vector<std::uint64_t>& w, std::uint64_t i) {
    w[i >> 6] &= ~(1ull << (i & 63));
}
std::uint64_t popcount(const std::vector<std::uint64_t>& w);
/// popcount of (a AND b); the vectors must have equal length.
std::uint64_t popcount_and(const std::vector<std::uint64_t>& a,
                           const std::vector<std::uint64_t>& b);
/// true iff (a AND b) == a, i.e. a is a subset of b.
bool subset_of(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);
/// Calls fn(i) for every set bit of (a AND b) in increasing order.
template <class Fn>
void for_each_and(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                  Fn&& fn) {
    for (std::size_t w = 0; w < a.size(); ++w) {
        std::uint64_t m = a[w] & b[w];
        while (m) {
            fn((static_cast<std::uint64_t>(w) << 6) + __builtin_ctzll(m));
            m &= m - 1;
        }
    }
}

}  // namespace bits

class PointSet {
public:
    explicit PointSet(Space space)
        : space_(std::move(space)), words_(bits::words_for(space_.affine_count()), 0) {}

    static PointSet full(Space space);

    const Space& space() const { return space_; }
    std::uint64_t universe() const { return space_.affine_count(); }
    std::uint64_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool contains(std::uint64_t rank) const;
    void add(std::uint64_t rank);
    void add_point(const Vec& affine) { add(space_.affine_rank(affine)); }
    void remove(std::uint64_t rank);

    /// Set ranks in increasing order.
    std::vector<std::uint64_t> ranks() const;
    /// Affine coordinate vectors, in rank order.
    std::vector<Vec> points() const;

    const std::vector<std::uint64_t>& words() const { return words_; }

    /// Same field, dimension and members.
    bool operator==(const PointSet& other) const;

private:
    void check_rank(std::uint64_t rank) const;

    Space space_;
    std::vector<std::uint64_t> words_;
    std::uint64_t size_ = 0;
};

/// Uniformly random subset of the given size, reproducible across platforms
/// for a fixed seed (mt19937_64 with explicit rejection sampling).
PointSet random_subset(const Space& space, std::uint64_t size, std::uint64_t seed);

}  // namespace galdir
