#pragma once

// Builders for the special extremal point sets: cones (cylinders) over a
// base set, and affine parts of nonsingular quadrics tangent to the
// hyperplane at infinity, together with generator enumeration and the
// generator-count formula.

#include <array>
#include <cstdint>
#include <vector>

#include "galdir/determine.hpp"
#include "galdir/pg.hpp"
#include "galdir/pointset.hpp"

namespace galdir {

// ---- cones ------------------------------------------------------------------

struct Cone {
    PointSet points;    ///< in AG(n,q); size |base| * q^{n-m}
    Subspace vertex;    ///< ideal subspace spanned by the last n-m coordinate axes
};

/// Cylinder over base (in AG(m,q)) inside AG(n,q), n > m: every base point
/// (u1..um) is extended by all q^{n-m} tails (x_{m+1}..x_n).
Cone cone(const PointSet& base, int n);

/// Outcome of checking the projection correspondence between undetermined
/// subspaces of a cone and of its base, for one dimension r.
struct ConeCorrespondence {
    int r = 0;
    std::uint64_t checked = 0;              ///< W with projected dimension in range
    std::uint64_t agreed = 0;
    std::uint64_t skipped_in_vertex = 0;    ///< W inside the vertex (projects to nothing)
    std::uint64_t skipped_out_of_range = 0; ///< projected dimension outside [0, m-2]
    std::vector<Subspace> disagreements;

    bool ok() const { return agreed == checked; }
};

/// For every r-subspace W of H-inf of the cone's space: W is undetermined by
/// the cone iff its projection from the vertex onto the embedded base space
/// is undetermined by the base.  W whose projected dimension r - dim(W meet
/// vertex) - 1 falls outside [0, m-2] are counted separately, not asserted.
/// Requires |base| = q^{m-1}.
ConeCorrespondence cone_correspondence_check(const PointSet& base, int n, int r);

// ---- quadrics ---------------------------------------------------------------

enum class QuadricCharacter : int {
    Elliptic = 0,
    Parabolic = 1,
    Hyperbolic = 2,
};

const char* to_string(QuadricCharacter w);
QuadricCharacter quadric_character_from_string(const std::string& s);

/// The quadric X0*Xn = phi(X1..X_{n-1}) with phi nondegenerate in standard
/// shape, so that H-inf = {X0 = 0} is a tangent hyperplane.
/// Character w: 0 elliptic, 1 parabolic, 2 hyperbolic; the projective index
/// (generator dimension) is g = (n + w - 3)/2.
struct QuadricSpec {
    int n = 0;
    QuadricCharacter character = QuadricCharacter::Parabolic;
    /// Monomials of phi: {i, j, coeff} stands for coeff * X_i * X_j, with
    /// 1 <= i <= j <= n-1.
    std::vector<std::array<Elem, 3>> phi;

    int w() const { return static_cast<int>(character); }
    int g() const { return (n + w() - 3) / 2; }
};

/// Standard-shape quadric; throws std::invalid_argument when the parity of n
/// does not match the character (elliptic/hyperbolic need n odd, parabolic
/// needs n even).  The elliptic binary part X1^2 + b X1X2 + c X2^2 uses the
/// lexicographically least (b, c) making it irreducible over GF(q).
/// Nonsingularity of the full form is verified after construction.
QuadricSpec make_quadric(const Field& field, int n, QuadricCharacter character);

/// phi evaluated on affine coordinates (x1..x_{n-1}).
Elem eval_phi(const Field& field, const QuadricSpec& spec, const Vec& x);

/// The homogeneous form X0*Xn - phi evaluated on a projective point.
Elem quadric_eval(const Field& field, const QuadricSpec& spec, const Vec& X);

/// The graph {(x1..x_{n-1}, phi(x))}: exactly q^{n-1} affine points.
PointSet quadric_affine_part(const Space& space, const QuadricSpec& spec);

/// All g-dimensional subspaces of H-inf lying entirely on the quadric,
/// canonical order.
std::vector<Subspace> generators_at_infinity(const Space& space, const QuadricSpec& spec);

/// Number of generators of the quadric through a fixed j-dimensional
/// subspace contained in it: the product of (q^i + 1) for
/// i = 2-w .. (n-2j-1-w)/2.
std::uint64_t rho_through(std::uint32_t q, int n, int w, int j);

/// rho_through at j = g-1, the value compared against enumeration.
std::uint64_t rho(std::uint32_t q, int n, int w);

/// Generators (over the whole space, not only H-inf) containing F, counted
/// by extending F with one quadric point at a time.  F must lie on the
/// quadric and have dimension g-1.
std::uint64_t count_generators_through(const Space& space, const QuadricSpec& spec,
                                       const Subspace& F);

/// True iff every point of S satisfies the quadric equation.
bool subspace_on_quadric(const Space& space, const QuadricSpec& spec, const Subspace& S);

}  // namespace galdir
