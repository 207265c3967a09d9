#include "galdir/determine.hpp"

#include <algorithm>
#include <stdexcept>

namespace galdir {

namespace detail {

// small incremental echelon accumulator over the field
class RankAccumulator {
public:
    RankAccumulator(const Field& f, std::size_t width) : f_(&f), width_(width) {}

    int rank() const { return static_cast<int>(rows_.size()); }

    // reduce v by the current rows; absorb it if independent
    void insert(Vec v) {
        for (const auto& [pivot, row] : rows_) {
            const Elem c = v[pivot];
            if (c == 0) continue;
            for (std::size_t j = pivot; j < width_; ++j)
                v[j] = f_->sub(v[j], f_->mul(c, row[j]));
        }
        for (std::size_t j = 0; j < width_; ++j) {
            if (v[j] == 0) continue;
            const Elem s = f_->inv(v[j]);
            for (std::size_t t = j; t < width_; ++t) v[t] = f_->mul(v[t], s);
            rows_.emplace_back(j, std::move(v));
            std::sort(rows_.begin(), rows_.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            return;
        }
    }

private:
    const Field* f_;
    std::size_t width_;
    std::vector<std::pair<std::size_t, Vec>> rows_;
};

int affine_span_dim(const Space& space, std::span<const Vec> points, int stop_at) {
    if (points.empty()) return -1;
    const Vec& base = points.front();
    RankAccumulator acc(space.field(), space.n());
    for (std::size_t i = 1; i < points.size(); ++i) {
        Vec d(space.n());
        for (int j = 0; j < space.n(); ++j) d[j] = space.field().sub(points[i][j], base[j]);
        acc.insert(std::move(d));
        if (acc.rank() >= stop_at) break;
    }
    return acc.rank();
}

}  // namespace detail

bool spans_flat(const Space& space, std::span<const Vec> points, const AffineFlat& flat) {
    for (const Vec& p : points)
        if (!space.flat_contains(flat, p))
            throw std::invalid_argument("point outside the flat");
    const int k1 = flat.adim();
    if (points.size() < static_cast<std::size_t>(k1) + 1) return false;
    return detail::affine_span_dim(space, points, k1) == k1;
}

namespace {

void check_direction(const Space& space, const Subspace& S) {
    const int k = S.dim();
    if (k < 0 || k > space.n() - 2)
        throw std::invalid_argument("direction dimension must be in [0, n-2]");
    if (!space.in_hyperplane_at_infinity(S))
        throw std::invalid_argument("direction subspace must lie in the hyperplane at infinity");
}

}  // namespace

bool is_determined(const PointSet& U, const Subspace& S) {
    const Space& space = U.space();
    check_direction(space, S);
    const int k = S.dim();
    for (const AffineFlat& flat : space.parallel_flats(S)) {
        std::vector<Vec> inside;
        for (std::uint64_t r : space.flat_points(flat))
            if (U.contains(r)) inside.push_back(space.affine_unrank(r));
        if (inside.size() < static_cast<std::size_t>(k) + 2) continue;
        if (detail::affine_span_dim(space, inside, k + 1) == k + 1) return true;
    }
    return false;
}

std::vector<Subspace> undetermined_set(const PointSet& U, int k) {
    DirectionEngine engine(U.space(), k);
    std::vector<Subspace> out;
    for (std::size_t i : engine.undetermined_indices(U)) out.push_back(engine.directions()[i]);
    return out;
}

FlatProfile flat_profile(const PointSet& U, const Subspace& S) {
    const Space& space = U.space();
    check_direction(space, S);
    const int k = S.dim();
    std::uint64_t complete_size = 1;
    for (int i = 0; i < k; ++i) complete_size *= space.q();

    FlatProfile profile{S, {}};
    for (const AffineFlat& flat : space.parallel_flats(S)) {
        FlatRecord rec{flat, 0, -1, false};
        std::vector<Vec> inside;
        for (std::uint64_t r : space.flat_points(flat))
            if (U.contains(r)) inside.push_back(space.affine_unrank(r));
        rec.count = inside.size();
        rec.span_dim = detail::affine_span_dim(space, inside, k + 1);
        rec.complete = rec.count == complete_size && rec.span_dim == k;
        profile.records.push_back(std::move(rec));
    }
    return profile;
}

DirectionEngine::DirectionEngine(Space space, int k) : space_(std::move(space)), k_(k) {
    if (k < 0 || k > space_.n() - 2)
        throw std::invalid_argument("direction dimension must be in [0, n-2]");
    directions_ = space_.ideal_subspaces(k);
    masks_.reserve(directions_.size());
    const std::size_t words = bits::words_for(space_.affine_count());
    for (const Subspace& S : directions_) {
        std::vector<std::vector<std::uint64_t>> flats;
        for (const AffineFlat& flat : space_.parallel_flats(S)) {
            std::vector<std::uint64_t> mask(words, 0);
            for (std::uint64_t r : space_.flat_points(flat)) bits::set(mask, r);
            flats.push_back(std::move(mask));
        }
        masks_.push_back(std::move(flats));
    }
}

std::optional<std::size_t> DirectionEngine::index_of(const Subspace& S) const {
    const auto it = std::lower_bound(directions_.begin(), directions_.end(), S, subspace_less);
    if (it == directions_.end() || !(*it == S)) return std::nullopt;
    return static_cast<std::size_t>(it - directions_.begin());
}

bool DirectionEngine::flat_spanned(const PointSet& U, const std::vector<std::uint64_t>& mask) const {
    const std::uint64_t pc = bits::popcount_and(U.words(), mask);
    if (pc < static_cast<std::uint64_t>(k_) + 2) return false;
    std::vector<Vec> inside;
    inside.reserve(pc);
    bits::for_each_and(U.words(), mask,
                       [&](std::uint64_t r) { inside.push_back(space_.affine_unrank(r)); });
    return detail::affine_span_dim(space_, inside, k_ + 1) == k_ + 1;
}

bool DirectionEngine::determined(const PointSet& U, std::size_t index) const {
    for (const auto& mask : masks_[index])
        if (flat_spanned(U, mask)) return true;
    return false;
}

std::vector<std::size_t> DirectionEngine::undetermined_indices(const PointSet& U) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < directions_.size(); ++i)
        if (!determined(U, i)) out.push_back(i);
    return out;
}

}  // namespace galdir
