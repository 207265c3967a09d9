#include "galdir/classify.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <thread>

#include "galdir/combinadic.hpp"

namespace galdir {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::AllDetermined: return "all_determined";
        case Verdict::OneUndetermined: return "one_undetermined";
        case Verdict::TwoUndeterminedQuadric: return "two_undetermined_quadric";
        case Verdict::TwoUndeterminedCylinder: return "two_undetermined_cylinder";
        case Verdict::ManyUndeterminedCylinder: return "many_undetermined_cylinder";
        case Verdict::Planar: return "planar";
    }
    return "?";
}

namespace {

std::string subspace_brief(const Subspace& S) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < S.basis.size(); ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < S.basis[i].size(); ++j) {
            if (j) os << " ";
            os << S.basis[i][j];
        }
    }
    os << "]";
    return os.str();
}

// U closed under translation by every multiple of the direction vector
bool translation_closed(const PointSet& U, const Vec& dir_vector) {
    const Space& space = U.space();
    const Field& f = space.field();
    for (std::uint64_t r : U.ranks()) {
        const Vec x = space.affine_unrank(r);
        for (Elem c = 1; c < f.q(); ++c) {
            Vec y(space.n());
            for (int j = 0; j < space.n(); ++j) y[j] = f.add(x[j], f.mul(c, dir_vector[j]));
            if (!U.contains(space.affine_rank(y))) return false;
        }
    }
    return true;
}

}  // namespace

std::optional<Vec> cylinder_direction(const PointSet& U) {
    const Space& space = U.space();
    const std::uint64_t expected =
        static_cast<std::uint64_t>(space.q()) * space.q();
    if (space.n() != 3 || U.size() != expected)
        throw std::invalid_argument("cylinder test expects a q^2-point set of AG(3,q)");
    for (const Subspace& d : space.ideal_subspaces(0)) {
        const Vec& row = d.basis.front();
        const Vec v(row.begin() + 1, row.end());
        if (translation_closed(U, v)) return row;   // enumeration order = rank order
    }
    return std::nullopt;
}

Elem eval_fit(const Field& field, const QuadricFit& fit, const Vec& X) {
    static constexpr std::array<std::pair<int, int>, 10> kMonomials = {
        {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}};
    Elem s = 0;
    for (int t = 0; t < 10; ++t) {
        if (fit.coeffs[t] == 0) continue;
        s = field.add(s, field.mul(fit.coeffs[t],
                                   field.mul(X[kMonomials[t].first], X[kMonomials[t].second])));
    }
    return s;
}

std::optional<QuadricFit> fit_quadric3(const Space& space, const std::vector<Vec>& points) {
    if (space.n() != 3) throw std::invalid_argument("quadric fit works in PG(3,q)");
    const Field& f = space.field();
    static constexpr std::array<std::pair<int, int>, 10> kMonomials = {
        {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}};

    std::vector<Vec> rows;
    rows.reserve(points.size());
    for (const Vec& P : points) {
        Vec row(10);
        for (int t = 0; t < 10; ++t)
            row[t] = f.mul(P[kMonomials[t].first], P[kMonomials[t].second]);
        rows.push_back(std::move(row));
    }
    const std::vector<Vec> R = rref_rows(f, std::move(rows));
    if (R.size() != 9) return std::nullopt;   // kernel dimension must be 1

    // kernel vector from the one free column
    std::vector<int> pivots;
    for (const Vec& row : R)
        for (int j = 0; j < 10; ++j)
            if (row[j] != 0) {
                pivots.push_back(j);
                break;
            }
    std::vector<bool> is_pivot(10, false);
    for (int p : pivots) is_pivot[p] = true;
    int free_col = -1;
    for (int j = 0; j < 10; ++j)
        if (!is_pivot[j]) free_col = j;

    QuadricFit fit;
    fit.coeffs[free_col] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
        fit.coeffs[pivots[i]] = f.neg(R[i][free_col]);
    // normalize: first nonzero coefficient 1
    for (Elem c : fit.coeffs)
        if (c != 0) {
            const Elem s = f.inv(c);
            for (Elem& e : fit.coeffs) e = f.mul(e, s);
            break;
        }

    // the zero set must be a hyperbolic quadric: (q+1)^2 points and two
    // disjoint full lines
    const std::uint64_t want =
        static_cast<std::uint64_t>(space.q() + 1) * (space.q() + 1);
    std::uint64_t zero_points = 0;
    for (std::uint64_t r = 0; r < space.proj_count(); ++r)
        if (eval_fit(f, fit, space.proj_unrank(r)) == 0) ++zero_points;
    if (zero_points != want) return std::nullopt;

    std::vector<Subspace> contained;
    bool disjoint_pair = false;
    space.for_each_subspace(1, [&](const Subspace& line) {
        if (disjoint_pair) return;
        for (const Vec& P : space.subspace_points(line))
            if (eval_fit(f, fit, P) != 0) return;
        for (const Subspace& other : contained)
            if (space.meet(line, other).is_empty()) {
                disjoint_pair = true;
                return;
            }
        contained.push_back(line);
    });
    if (!disjoint_pair) return std::nullopt;
    return fit;
}

Classifier3::Classifier3(Space space) : engine_(std::move(space), 1) {
    if (engine_.space().n() != 3)
        throw std::invalid_argument("classification works in AG(3,q)");
}

Verdict3D Classifier3::classify(const PointSet& U) const {
    const Space& space = engine_.space();
    const Field& f = space.field();
    const std::uint64_t q = space.q();
    if (U.size() != q * q) throw std::invalid_argument("classification expects |U| = q^2");

    Verdict3D v;
    for (std::size_t i : engine_.undetermined_indices(U))
        v.undetermined.push_back(engine_.directions()[i]);
    const std::size_t nundet = v.undetermined.size();

    // planar sets (|U| = q^2 means U is a full affine plane)
    const std::vector<Vec> pts = U.points();
    if (detail::affine_span_dim(space, pts, 3) <= 2) {
        std::vector<Vec> ideal_diffs;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            Vec d(space.n() + 1, 0);
            for (int j = 0; j < space.n(); ++j) d[j + 1] = f.sub(pts[i][j], pts[0][j]);
            ideal_diffs.push_back(std::move(d));
        }
        const Subspace direction = space.rref(std::move(ideal_diffs));
        if (direction.dim() != 1)
            throw theorem_violation("planar set whose direction space is not a line");
        v.tag = Verdict::Planar;
        v.plane = AffineFlat{direction, pts[0]};
        if (nundet != q * q + q)
            throw theorem_violation("planar set with unexpected undetermined count");
        return v;
    }

    if (nundet == 0) {
        v.tag = Verdict::AllDetermined;
        return v;
    }

    if (nundet == 1) {
        const Subspace& line = v.undetermined.front();
        for (const AffineFlat& flat : space.parallel_flats(line)) {
            std::vector<std::uint64_t> inside;
            for (std::uint64_t r : space.flat_points(flat))
                if (U.contains(r)) inside.push_back(r);
            std::vector<Vec> coords;
            for (std::uint64_t r : inside) coords.push_back(space.affine_unrank(r));
            if (inside.size() != q || detail::affine_span_dim(space, coords, 2) != 1)
                throw theorem_violation("plane through the undetermined line without a complete line");
            std::sort(inside.begin(), inside.end());
            v.plane_lines.push_back(PlaneLineWitness{flat, std::move(inside)});
        }
        v.tag = Verdict::OneUndetermined;
        return v;
    }

    if (nundet == 2) {
        std::vector<Vec> proj;
        for (const Vec& x : pts) proj.push_back(space.embed_affine(x));
        for (int t = 0; t < 2; ++t)
            for (const Vec& P : space.subspace_points(v.undetermined[t])) proj.push_back(P);
        const std::optional<QuadricFit> fit = fit_quadric3(space, proj);
        const std::optional<Vec> cyl = cylinder_direction(U);
        if (fit && cyl)
            throw theorem_violation("set matches both the quadric and the cylinder case");
        if (fit) {
            v.tag = Verdict::TwoUndeterminedQuadric;
            v.quadric = fit;
            return v;
        }
        if (cyl) {
            v.tag = Verdict::TwoUndeterminedCylinder;
            v.cylinder_dir = cyl;
            return v;
        }
        throw theorem_violation("two undetermined lines but neither quadric nor cylinder");
    }

    const std::optional<Vec> cyl = cylinder_direction(U);
    if (!cyl) throw theorem_violation("three or more undetermined lines but not a cylinder");
    v.tag = Verdict::ManyUndeterminedCylinder;
    v.cylinder_dir = cyl;
    return v;
}

std::optional<std::string> Classifier3::verify(const PointSet& U, const Verdict3D& v) const {
    const Space& space = engine_.space();
    const Field& f = space.field();
    const std::uint64_t q = space.q();

    auto fail = [](const std::string& s) { return std::optional<std::string>(s); };

    switch (v.tag) {
        case Verdict::AllDetermined:
            if (!v.undetermined.empty()) return fail("all-determined verdict with undetermined lines");
            return std::nullopt;

        case Verdict::OneUndetermined: {
            if (v.undetermined.size() != 1) return fail("one-undetermined verdict with |N| != 1");
            if (v.plane_lines.size() != q) return fail("witness does not cover all q planes");
            std::uint64_t covered = 0;
            for (const PlaneLineWitness& w : v.plane_lines) {
                if (!(w.plane.direction == v.undetermined.front()))
                    return fail("witness plane not through the undetermined line");
                if (w.line.size() != q) return fail("witness line has wrong size");
                std::vector<Vec> coords;
                for (std::uint64_t r : w.line) {
                    if (!U.contains(r)) return fail("witness line point outside U");
                    if (!space.flat_contains(w.plane, space.affine_unrank(r)))
                        return fail("witness line point outside its plane");
                    coords.push_back(space.affine_unrank(r));
                }
                if (detail::affine_span_dim(space, coords, 2) != 1)
                    return fail("witness line is not a line");
                covered += w.line.size();
            }
            if (covered != U.size()) return fail("witness lines do not exhaust U");
            return std::nullopt;
        }

        case Verdict::TwoUndeterminedQuadric: {
            if (v.undetermined.size() != 2) return fail("quadric verdict with |N| != 2");
            if (!v.quadric) return fail("quadric verdict without a form");
            for (const Vec& x : U.points())
                if (eval_fit(f, *v.quadric, space.embed_affine(x)) != 0)
                    return fail("form does not vanish on U");
            for (const Subspace& line : v.undetermined)
                for (const Vec& P : space.subspace_points(line))
                    if (eval_fit(f, *v.quadric, P) != 0)
                        return fail("form does not vanish on an undetermined line");
            std::uint64_t zeros = 0;
            for (std::uint64_t r = 0; r < space.proj_count(); ++r)
                if (eval_fit(f, *v.quadric, space.proj_unrank(r)) == 0) ++zeros;
            if (zeros != (q + 1) * (q + 1)) return fail("zero set is not a hyperbolic quadric");
            return std::nullopt;
        }

        case Verdict::TwoUndeterminedCylinder:
        case Verdict::ManyUndeterminedCylinder: {
            const std::size_t least = v.tag == Verdict::TwoUndeterminedCylinder ? 2 : 3;
            if (v.undetermined.size() != 2 && least == 2) return fail("cylinder verdict with |N| != 2");
            if (least == 3 && v.undetermined.size() < 3)
                return fail("many-cylinder verdict with |N| < 3");
            if (!v.cylinder_dir) return fail("cylinder verdict without a direction");
            const Vec dir_vector(v.cylinder_dir->begin() + 1, v.cylinder_dir->end());
            if (!translation_closed(U, dir_vector)) return fail("U is not closed under the direction");
            for (const Subspace& line : v.undetermined)
                if (!space.member(line, *v.cylinder_dir))
                    return fail("an undetermined line misses the cylinder direction");
            return std::nullopt;
        }

        case Verdict::Planar: {
            if (!v.plane) return fail("planar verdict without a plane");
            for (std::uint64_t r : space.flat_points(*v.plane))
                if (!U.contains(r)) return fail("plane point outside U");
            if (U.size() != q * q) return fail("planar set of wrong size");
            if (v.undetermined.size() != q * q + q) return fail("planar set with wrong |N|");
            const auto idx = engine_.index_of(v.plane->direction);
            if (!idx) return fail("plane direction is not a line of H-inf");
            for (const Subspace& u : v.undetermined)
                if (u == v.plane->direction) return fail("the plane's own ideal line is undetermined");
            return std::nullopt;
        }
    }
    return fail("unknown verdict");
}

Verdict3D classify_3d(const PointSet& U) { return Classifier3(U.space()).classify(U); }

// ---- exhaustive survey --------------------------------------------------------

namespace {

struct SurveyTables {
    explicit SurveyTables(std::uint32_t qq)
        : space(Field(qq, 1), 3), classifier(space), q(qq) {
        npoints = static_cast<unsigned>(space.affine_count());
        const DirectionEngine& eng = classifier.lines();
        nlines = static_cast<unsigned>(eng.directions().size());
        planes_of_line.resize(nlines);
        for (unsigned l = 0; l < nlines; ++l)
            for (const auto& mask : eng.flat_masks(l))
                planes_of_line[l].push_back(mask[0]);

        pair_line.assign(static_cast<std::size_t>(npoints) * npoints, 0);
        const Field& f = space.field();
        for (unsigned a = 0; a < npoints; ++a) {
            const Vec xa = space.affine_unrank(a);
            for (unsigned b = 0; b < npoints; ++b) {
                if (a == b) continue;
                const Vec xb = space.affine_unrank(b);
                std::uint64_t mask = 0;
                for (Elem c = 0; c < f.q(); ++c) {
                    Vec y(3);
                    for (int j = 0; j < 3; ++j)
                        y[j] = f.add(xa[j], f.mul(c, f.sub(xb[j], xa[j])));
                    mask |= 1ull << space.affine_rank(y);
                }
                pair_line[static_cast<std::size_t>(a) * npoints + b] = mask;
            }
        }
    }

    Space space;
    Classifier3 classifier;
    std::uint32_t q;
    unsigned npoints = 0, nlines = 0;
    std::vector<std::vector<std::uint64_t>> planes_of_line;
    std::vector<std::uint64_t> pair_line;
};

// indices of the undetermined ideal lines, by mask arithmetic only
int fast_undetermined(const SurveyTables& T, std::uint64_t mask, int* out) {
    int count = 0;
    for (unsigned l = 0; l < T.nlines; ++l) {
        bool undetermined = true;
        for (const std::uint64_t pm : T.planes_of_line[l]) {
            const std::uint64_t m = mask & pm;
            const int pc = std::popcount(m);
            if (pc <= 2) continue;                       // k+1 points never span
            if (static_cast<std::uint32_t>(pc) > T.q) {  // more points than a line holds
                undetermined = false;
                break;
            }
            const int i = std::countr_zero(m);
            const int j = std::countr_zero(m & (m - 1));
            if (m & ~T.pair_line[static_cast<std::size_t>(i) * T.npoints + j]) {
                undetermined = false;
                break;
            }
        }
        if (undetermined) out[count++] = static_cast<int>(l);
    }
    return count;
}

struct WorkerResult {
    std::array<std::uint64_t, kVerdictCount> counts{};
    std::vector<SurveyViolation> violations;
};

void survey_range(const SurveyTables& T, std::uint64_t lo, std::uint64_t hi, unsigned k,
                  WorkerResult& out) {
    std::uint64_t mask = subset_unrank(lo, k);
    for (std::uint64_t rank = lo; rank < hi; ++rank, mask = next_same_popcount(mask)) {
        int undet[16];
        const int nundet = fast_undetermined(T, mask, undet);
        if (nundet == 0) {
            ++out.counts[static_cast<int>(Verdict::AllDetermined)];
            continue;
        }

        PointSet U(T.space);
        std::uint64_t m = mask;
        while (m) {
            U.add(static_cast<std::uint64_t>(std::countr_zero(m)));
            m &= m - 1;
        }
        auto violation = [&](const std::string& reason) {
            out.violations.push_back(SurveyViolation{rank, U.ranks(), reason});
        };
        try {
            const std::vector<std::size_t> engine_idx =
                T.classifier.lines().undetermined_indices(U);
            bool same = engine_idx.size() == static_cast<std::size_t>(nundet);
            for (int t = 0; same && t < nundet; ++t)
                same = engine_idx[t] == static_cast<std::size_t>(undet[t]);
            if (!same) {
                violation("mask fast path disagrees with the generic engine");
                continue;
            }
            const Verdict3D v = T.classifier.classify(U);
            if (const auto why = T.classifier.verify(U, v)) {
                violation(*why);
                continue;
            }
            ++out.counts[static_cast<int>(v.tag)];
        } catch (const theorem_violation& e) {
            violation(e.what());
        }
    }
}

}  // namespace

SurveyTally survey_exhaustive(std::uint32_t q, unsigned threads) {
    if (q != 2 && q != 3)
        throw std::invalid_argument("exhaustive survey supports q = 2 and q = 3 only");
    const unsigned k = q * q;
    const std::uint64_t total = binomial(q * q * q, k);

    const SurveyTables T(q);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));

    std::vector<WorkerResult> results(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t lo = total * t / threads;
        const std::uint64_t hi = total * (t + 1) / threads;
        pool.emplace_back(survey_range, std::cref(T), lo, hi, k, std::ref(results[t]));
    }
    for (std::thread& th : pool) th.join();

    SurveyTally tally;
    tally.q = q;
    tally.total = total;
    for (const WorkerResult& r : results) {
        for (int i = 0; i < kVerdictCount; ++i) tally.counts[i] += r.counts[i];
        tally.violations.insert(tally.violations.end(), r.violations.begin(),
                                r.violations.end());
    }
    return tally;
}

// ---- hierarchy ---------------------------------------------------------------

HierarchyReport hierarchy_check(const PointSet& U) {
    const Space& space = U.space();
    const int n = space.n();
    if (n < 3) throw std::invalid_argument("hierarchy check needs n >= 3");
    std::uint64_t extremal = 1;
    for (int i = 0; i < n - 1; ++i) extremal *= space.q();
    if (U.size() != extremal)
        throw std::invalid_argument("hierarchy check expects |U| = q^{n-1}");

    std::vector<DirectionEngine> engines;
    std::vector<std::vector<bool>> determined(n - 1);
    for (int k = 0; k <= n - 2; ++k) {
        engines.emplace_back(space, k);
        const DirectionEngine& e = engines.back();
        determined[k].assign(e.directions().size(), false);
        for (std::size_t i = 0; i < e.directions().size(); ++i)
            determined[k][i] = e.determined(U, i);
    }

    HierarchyReport rep;
    auto violate = [&rep](const std::string& s) {
        rep.passed = false;
        rep.violations.push_back(s);
    };

    // (i) determined S_k extends to a determined S_{k+1}
    for (int k = 0; k <= n - 3; ++k) {
        for (std::size_t i = 0; i < determined[k].size(); ++i) {
            if (!determined[k][i]) continue;
            const Subspace& S = engines[k].directions()[i];
            bool found = false;
            const auto& up = engines[k + 1].directions();
            for (std::size_t j = 0; j < up.size() && !found; ++j)
                found = determined[k + 1][j] && space.contains(up[j], S);
            if (!found)
                violate("determined " + std::to_string(k) + "-subspace " + subspace_brief(S) +
                        " lies in no determined " + std::to_string(k + 1) + "-subspace");
        }
    }

    // (ii) determined S_k lies in a determined (n-2)-subspace
    for (int k = 0; k <= n - 3; ++k) {
        for (std::size_t i = 0; i < determined[k].size(); ++i) {
            if (!determined[k][i]) continue;
            const Subspace& S = engines[k].directions()[i];
            bool found = false;
            const auto& top = engines[n - 2].directions();
            for (std::size_t j = 0; j < top.size() && !found; ++j)
                found = determined[n - 2][j] && space.contains(top[j], S);
            if (!found)
                violate("determined " + std::to_string(k) + "-subspace " + subspace_brief(S) +
                        " lies in no determined " + std::to_string(n - 2) + "-subspace");
        }
    }

    // (iii) undetermined V_{n-2} contains an undetermined k-subspace, all k <= n-3
    for (std::size_t j = 0; j < determined[n - 2].size(); ++j) {
        if (determined[n - 2][j]) continue;
        const Subspace& V = engines[n - 2].directions()[j];
        for (int k = 0; k <= n - 3; ++k) {
            bool found = false;
            for (std::size_t i = 0; i < determined[k].size() && !found; ++i)
                found = !determined[k][i] && space.contains(V, engines[k].directions()[i]);
            if (!found)
                violate("undetermined (n-2)-subspace " + subspace_brief(V) +
                        " contains no undetermined " + std::to_string(k) + "-subspace");
        }
    }

    // (iv) the determined directions are the union of the fully-determined
    // (n-2)-subspaces of H-inf
    {
        const std::vector<bool>& dir_det = determined[0];
        std::vector<bool> in_union(dir_det.size(), false);
        const std::uint64_t ideal_offset = space.affine_count();
        for (std::size_t j = 0; j < determined[n - 2].size(); ++j) {
            const Subspace& T = engines[n - 2].directions()[j];
            std::vector<std::size_t> pts;
            bool all = true;
            for (const Vec& P : space.subspace_points(T)) {
                const std::size_t idx =
                    static_cast<std::size_t>(space.proj_rank(P) - ideal_offset);
                pts.push_back(idx);
                if (!dir_det[idx]) all = false;
            }
            if (all)
                for (std::size_t idx : pts) in_union[idx] = true;
        }
        for (std::size_t i = 0; i < dir_det.size(); ++i)
            if (dir_det[i] != in_union[i])
                violate(std::string("determined direction set is not a union of complete "
                                    "(n-2)-subspaces at ideal point ") +
                        std::to_string(i));
    }

    return rep;
}

}  // namespace galdir
