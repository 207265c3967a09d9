#pragma once

// Classification of q^2-point sets of AG(3,q) by their undetermined ideal
// lines, structural recognizers (cylinder, hyperbolic quadric), hierarchy
// checks, and an exhaustive survey over all q^2-subsets for q in {2,3}.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "galdir/determine.hpp"
#include "galdir/pg.hpp"
#include "galdir/pointset.hpp"

namespace galdir {

/// Raised when a point set contradicts the classification: a verdict's
/// witness cannot be reconstructed.  The survey catches these and records
/// them as violations.
struct theorem_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Verdict : int {
    AllDetermined = 0,
    OneUndetermined = 1,
    TwoUndeterminedQuadric = 2,
    TwoUndeterminedCylinder = 3,
    ManyUndeterminedCylinder = 4,
    Planar = 5,
};
inline constexpr int kVerdictCount = 6;
const char* to_string(Verdict v);

/// If U (of size q^2) is a union of q parallel affine lines, the ideal point
/// of those lines (smallest projective rank on ties); otherwise nullopt.
std::optional<Vec> cylinder_direction(const PointSet& U);

/// Quaternary quadratic form by its 10 coefficients, in the monomial order
/// X0^2, X0X1, X0X2, X0X3, X1^2, X1X2, X1X3, X2^2, X2X3, X3^2.
struct QuadricFit {
    std::array<Elem, 10> coeffs{};
};
Elem eval_fit(const Field& field, const QuadricFit& fit, const Vec& X);

/// Solves for a quadratic form vanishing on all given projective points of
/// PG(3,q).  Succeeds only when the solution space is one-dimensional and
/// the zero set is a hyperbolic quadric: (q+1)^2 points containing two
/// disjoint lines.
std::optional<QuadricFit> fit_quadric3(const Space& space, const std::vector<Vec>& points);

struct PlaneLineWitness {
    AffineFlat plane;
    std::vector<std::uint64_t> line;   ///< affine ranks of the complete line U meets it in
};

struct Verdict3D {
    Verdict tag = Verdict::AllDetermined;
    std::vector<Subspace> undetermined;               ///< N, canonical order
    std::optional<Vec> cylinder_dir;                  ///< cylinder verdicts
    std::optional<QuadricFit> quadric;                ///< quadric verdict
    std::vector<PlaneLineWitness> plane_lines;        ///< OneUndetermined verdict
    std::optional<AffineFlat> plane;                  ///< Planar verdict
};

/// Classification context for one AG(3,q); holds the line engine.
class Classifier3 {
public:
    explicit Classifier3(Space space);

    const Space& space() const { return engine_.space(); }
    const DirectionEngine& lines() const { return engine_; }

    /// Classifies U (|U| = q^2); throws theorem_violation when no case of
    /// the classification fits.
    Verdict3D classify(const PointSet& U) const;

    /// Re-validates a verdict's witness with independent predicates
    /// (translation closure, form evaluation, per-plane recounts).
    /// Returns a failure description, or nullopt when everything holds.
    std::optional<std::string> verify(const PointSet& U, const Verdict3D& v) const;

private:
    DirectionEngine engine_;   // k = 1
};

/// One-shot convenience over a fresh Classifier3.
Verdict3D classify_3d(const PointSet& U);

struct SurveyViolation {
    std::uint64_t subset_rank = 0;         ///< colex rank among q^2-subsets
    std::vector<std::uint64_t> points;     ///< affine ranks of the subset
    std::string reason;
};

struct SurveyTally {
    std::uint32_t q = 0;
    std::uint64_t total = 0;                        ///< subsets examined
    std::array<std::uint64_t, kVerdictCount> counts{};
    std::vector<SurveyViolation> violations;

    std::uint64_t count(Verdict v) const { return counts[static_cast<int>(v)]; }
};

/// Classifies every q^2-subset of AG(3,q); q must be 2 or 3.  Splits the
/// colex rank range over the given number of workers (0 = hardware threads).
/// Every verdict with a witness is re-validated; failures land in
/// violations, which stays empty when the classification holds.
SurveyTally survey_exhaustive(std::uint32_t q, unsigned threads = 0);

struct HierarchyReport {
    bool passed = true;
    std::vector<std::string> violations;
};

/// For an extremal set (|U| = q^{n-1}, n >= 3) checks, over all applicable
/// k: (i) every determined k-subspace lies in a determined (k+1)-subspace;
/// (ii) every determined k-subspace lies in a determined (n-2)-subspace;
/// (iii) every undetermined (n-2)-subspace contains an undetermined
/// k-subspace for each k <= n-3; (iv) the set of determined directions is
/// exactly the union of the fully-determined (n-2)-subspaces of H-inf.
HierarchyReport hierarchy_check(const PointSet& U);

}  // namespace galdir
