#pragma once

// Points, subspaces, flats and incidence in PG(n,q) and AG(n,q).
//
// Coordinates are homogeneous (X0,...,Xn); the hyperplane at infinity is
// fixed as {X0 = 0} and affine points embed as X0 = 1.  A subspace is
// represented by the reduced row echelon basis of its homogeneous span,
// which makes equality bitwise and gives every subspace one canonical form.
//
// Enumeration order (points and subspaces alike): RREF pivot-column
// patterns in lexicographic order, then the free entries in odometer order
// (row-major reading, last position fastest).  Point ranks follow the same
// rule, so the q^n affine points occupy projective ranks [0, q^n) and the
// affine rank of (x1,...,xn) is the base-q numeral x1 x2 ... xn.

#include <cstdint>
#include <functional>
#include <vector>

#include "galdir/gf.hpp"

namespace galdir {

/// Coordinate vector over a Field (homogeneous or affine depending on use).
using Vec = std::vector<Elem>;

/// Projective subspace in canonical RREF form.  dim() is the projective
/// dimension: -1 for the empty subspace, 0 for points, and so on.
struct Subspace {
    int ambient = -1;             ///< projective dimension n of the ambient space
    std::vector<Vec> basis;       ///< RREF rows, each of length ambient+1

    int dim() const { return static_cast<int>(basis.size()) - 1; }
    bool is_empty() const { return basis.empty(); }
    std::vector<int> pivots() const;

    bool operator==(const Subspace&) const = default;
};

/// Enumeration order: pivot pattern lexicographically, then entries.
bool subspace_less(const Subspace& a, const Subspace& b);

/// An affine flat of AG(n,q): its hyperplane at infinity (a subspace of
/// H-inf, the "direction") plus one affine point.  With direction.dim() = k
/// the flat has affine dimension k+1 and q^{k+1} points.
struct AffineFlat {
    Subspace direction;   ///< subspace of H-inf; the flat's hyperplane at infinity
    Vec rep;              ///< affine coordinates (x1..xn) of a point of the flat

    /// Affine dimension of the flat (= direction.dim() + 1).
    int adim() const { return direction.dim() + 1; }
};

/// Number of b-dimensional vector subspaces of GF(q)^a.
std::uint64_t gaussian_binomial(unsigned a, unsigned b, std::uint64_t q);

/// Reduced row echelon form of arbitrary equal-width rows over the field;
/// zero rows are dropped.
std::vector<Vec> rref_rows(const Field& field, std::vector<Vec> rows);

/// AG(n,q) inside PG(n,q) with H-inf = {X0 = 0}.
class Space {
public:
    Space(Field field, int n);

    const Field& field() const { return field_; }
    int n() const { return n_; }
    std::uint32_t q() const { return field_.q(); }

    std::uint64_t affine_count() const { return affine_count_; }   // q^n
    std::uint64_t proj_count() const;                               // (q^{n+1}-1)/(q-1)

    // ---- points ----------------------------------------------------------

    std::uint64_t affine_rank(const Vec& x) const;
    Vec affine_unrank(std::uint64_t r) const;

    /// Scales a nonzero homogeneous vector so its first nonzero entry is 1.
    Vec proj_normalize(Vec X) const;
    std::uint64_t proj_rank(const Vec& X) const;
    Vec proj_unrank(std::uint64_t r) const;

    Vec embed_affine(const Vec& x) const;         // (x1..xn) -> (1,x1..xn)
    bool is_affine(const Vec& X) const { return X.at(0) != 0; }
    Vec to_affine(const Vec& X) const;            // normalize, drop X0

    // ---- subspaces --------------------------------------------------------

    /// Canonical RREF span of arbitrary row vectors (length n+1 each).
    Subspace rref(std::vector<Vec> rows) const;

    Subspace empty_subspace() const { return Subspace{n_, {}}; }
    Subspace whole_space() const;
    Subspace hyperplane_at_infinity() const;
    Subspace point_subspace(const Vec& X) const;  // homogeneous point as dim-0 subspace

    Subspace span(const Subspace& a, const Subspace& b) const;
    Subspace meet(const Subspace& a, const Subspace& b) const;
    /// Basis of {x : r.x = 0 for all rows r of S} (dual with the standard form).
    Subspace nullspace(const Subspace& S) const;

    /// Remainder of v after elimination by the RREF rows of S;
    /// zero iff v lies in the span.
    Vec reduce(const Subspace& S, Vec v) const;
    bool member(const Subspace& S, const Vec& v) const;
    bool contains(const Subspace& outer, const Subspace& inner) const;
    bool in_hyperplane_at_infinity(const Subspace& S) const;

    /// All points of a subspace as normalized homogeneous vectors
    /// ((q^{d+1}-1)/(q-1) of them for dimension d).
    std::vector<Vec> subspace_points(const Subspace& S) const;

    // ---- enumeration ------------------------------------------------------

    /// Visits every k-subspace of PG(n,q) in canonical order.
    void for_each_subspace(int k, const std::function<void(const Subspace&)>& fn) const;
    std::vector<Subspace> subspaces(int k) const;

    /// Every k-subspace of the given ambient subspace, canonical order.
    std::vector<Subspace> subspaces_of(const Subspace& ambient, int k) const;

    /// Every k-subspace of H-inf, canonical order (ranks in the ambient
    /// enumeration restricted to H-inf keep this order).
    std::vector<Subspace> ideal_subspaces(int k) const;

    // ---- flats ------------------------------------------------------------

    /// The q^{n-k-1} pairwise disjoint affine flats whose hyperplane at
    /// infinity is S (which must lie in H-inf).  Representatives are chosen
    /// by smallest affine rank not covered by an earlier flat, so the result
    /// is a canonical partition of the affine points.
    std::vector<AffineFlat> parallel_flats(const Subspace& S) const;

    /// Affine ranks of the q^{k+1} points of a flat (unsorted).
    std::vector<std::uint64_t> flat_points(const AffineFlat& flat) const;
    bool flat_contains(const AffineFlat& flat, const Vec& x) const;

    /// Projective closure of a flat: span(direction, rep embedded).
    Subspace flat_closure(const AffineFlat& flat) const;

    // ---- projection -------------------------------------------------------

    /// target-meet-span(V, W): the image of W under projection from center V
    /// onto target.  Requires V and target disjoint.
    Subspace project_from(const Subspace& V, const Subspace& W, const Subspace& target) const;

private:
    void check_vec(const Vec& v, std::size_t len) const;
    void check_subspace(const Subspace& S) const;
    // subspaces of an abstract PG(d,q) as RREF matrices with d+1 columns
    void for_each_abstract(int d, int k, const std::function<void(std::vector<Vec>&)>& fn) const;

    Field field_;
    int n_;
    std::uint64_t affine_count_;
};

}  // namespace galdir
