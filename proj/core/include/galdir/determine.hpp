#pragma once

// Which k-subspaces of the hyperplane at infinity a point set determines.
//
// A k-subspace S of H-inf is determined by U when some affine (k+1)-flat
// with hyperplane at infinity S contains k+2 affinely independent points of
// U, i.e. U meets the flat in a spanning set.  An empty U determines
// nothing.  Evaluating one S walks its q^{n-k-1} parallel flats; the
// DirectionEngine precomputes per-flat membership masks for every ideal
// k-subspace so that each flat intersection is a word-AND plus popcount,
// with point coordinates materialized only when a flat holds at least k+2
// points and a rank check is needed.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "galdir/pg.hpp"
#include "galdir/pointset.hpp"

namespace galdir {

/// Per-flat accounting for one direction subspace.
struct FlatRecord {
    AffineFlat flat;
    std::uint64_t count = 0;   ///< |U meet flat|
    int span_dim = -1;         ///< affine dimension of the span of U meet flat
    bool complete = false;     ///< U meet flat is one complete k-flat (q^k points, dim k)
};

struct FlatProfile {
    Subspace direction;
    std::vector<FlatRecord> records;   ///< one per parallel flat, canonical order
};

/// True iff the affine span of the points is the whole flat.  Every point
/// must lie on the flat (std::invalid_argument otherwise).
bool spans_flat(const Space& space, std::span<const Vec> points, const AffineFlat& flat);

/// Direct evaluation for a single S (dim k, 0 <= k <= n-2, S in H-inf).
bool is_determined(const PointSet& U, const Subspace& S);

/// All undetermined k-subspaces of H-inf, in canonical enumeration order.
std::vector<Subspace> undetermined_set(const PointSet& U, int k);

/// Full per-flat profile of U against S.
FlatProfile flat_profile(const PointSet& U, const Subspace& S);

/// Precomputed flat masks for every k-subspace of H-inf of one space.
/// Immutable after construction; safe to share across threads.
class DirectionEngine {
public:
    DirectionEngine(Space space, int k);

    const Space& space() const { return space_; }
    int k() const { return k_; }

    const std::vector<Subspace>& directions() const { return directions_; }
    /// Index of S in directions(), by binary search over the canonical order.
    std::optional<std::size_t> index_of(const Subspace& S) const;

    bool determined(const PointSet& U, std::size_t index) const;
    std::vector<std::size_t> undetermined_indices(const PointSet& U) const;

    /// Membership masks of the parallel flats of one direction.
    const std::vector<std::vector<std::uint64_t>>& flat_masks(std::size_t index) const {
        return masks_[index];
    }

private:
    bool flat_spanned(const PointSet& U, const std::vector<std::uint64_t>& mask) const;

    Space space_;
    int k_;
    std::vector<Subspace> directions_;
    std::vector<std::vector<std::vector<std::uint64_t>>> masks_;  // [dir][flat][word]
};

namespace detail {
/// Rank of the difference vectors of a point list (affine span dimension).
/// Early-exits once the rank reaches stop_at.
int affine_span_dim(const Space& space, std::span<const Vec> points, int stop_at);
}  // namespace detail

}  // namespace galdir
