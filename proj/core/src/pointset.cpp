#include "galdir/pointset.hpp"

#include <bit>
#include <random>
#include <stdexcept>

namespace galdir {

namespace bits {

std::uint64_t popcount(const std::vector<std::uint64_t>& w) {
    std::uint64_t n = 0;
    for (std::uint64_t x : w) n += std::popcount(x);
    return n;
}

std::uint64_t popcount_and(const std::vector<std::uint64_t>& a,
                           const std::vector<std::uint64_t>& b) {
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += std::popcount(a[i] & b[i]);
    return n;
}

bool subset_of(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

}  // namespace bits

PointSet PointSet::full(Space space) {
    PointSet s(std::move(space));
    for (std::uint64_t r = 0; r < s.universe(); ++r) s.add(r);
    return s;
}

void PointSet::check_rank(std::uint64_t rank) const {
    if (rank >= universe()) throw std::out_of_range("affine point rank out of range");
}

bool PointSet::contains(std::uint64_t rank) const {
    check_rank(rank);
    return bits::test(words_, rank);
}

void PointSet::add(std::uint64_t rank) {
    check_rank(rank);
    if (!bits::test(words_, rank)) {
        bits::set(words_, rank);
        ++size_;
    }
}

void PointSet::remove(std::uint64_t rank) {
    check_rank(rank);
    if (bits::test(words_, rank)) {
        bits::clear(words_, rank);
        --size_;
    }
}

std::vector<std::uint64_t> PointSet::ranks() const {
    std::vector<std::uint64_t> rs;
    rs.reserve(size_);
    bits::for_each_and(words_, words_, [&](std::uint64_t r) { rs.push_back(r); });
    return rs;
}

std::vector<Vec> PointSet::points() const {
    std::vector<Vec> ps;
    ps.reserve(size_);
    for (std::uint64_t r : ranks()) ps.push_back(space_.affine_unrank(r));
    return ps;
}

bool PointSet::operator==(const PointSet& other) const {
    return space_.field() == other.space_.field() && space_.n() == other.space_.n() &&
           words_ == other.words_;
}

PointSet random_subset(const Space& space, std::uint64_t size, std::uint64_t seed) {
    const std::uint64_t total = space.affine_count();
    if (size > total) throw std::invalid_argument("subset size exceeds the point count");
    std::mt19937_64 rng(seed);
    // bounded uniform draw by rejection; avoids the library-defined
    // distributions so that seeds reproduce everywhere
    auto draw = [&rng](std::uint64_t bound) {
        const std::uint64_t limit = ~0ull - ~0ull % bound;
        for (;;) {
            const std::uint64_t x = rng();
            if (x < limit) return x % bound;
        }
    };
    std::vector<std::uint64_t> pool(total);
    for (std::uint64_t i = 0; i < total; ++i) pool[i] = i;
    PointSet s(space);
    for (std::uint64_t i = 0; i < size; ++i) {
        const std::uint64_t j = i + draw(total - i);
        std::swap(pool[i], pool[j]);
        s.add(pool[i]);
    }
    return s;
}

}  // namespace galdir
