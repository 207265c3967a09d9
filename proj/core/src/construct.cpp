#include "galdir/construct.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace galdir {

// ---- cones ------------------------------------------------------------------

Cone cone(const PointSet& base, int n) {
    const Space& bspace = base.space();
    const int m = bspace.n();
    if (n <= m) throw std::invalid_argument("cone target dimension must exceed the base dimension");

    Space space(bspace.field(), n);
    std::uint64_t tails = 1;
    for (int i = 0; i < n - m; ++i) tails *= space.q();

    PointSet points(space);
    for (const Vec& u : base.points()) {
        Vec x(n, 0);
        std::copy(u.begin(), u.end(), x.begin());
        for (std::uint64_t t = 0; t < tails; ++t) {
            std::uint64_t v = t;
            for (int i = m; i < n; ++i) {
                x[i] = static_cast<Elem>(v % space.q());
                v /= space.q();
            }
            points.add_point(x);
        }
    }

    // vertex: ideal points of the last n-m coordinate axes
    std::vector<Vec> rows;
    for (int i = m + 1; i <= n; ++i) {
        Vec row(n + 1, 0);
        row[i] = 1;
        rows.push_back(std::move(row));
    }
    return Cone{std::move(points), Subspace{n, std::move(rows)}};
}

ConeCorrespondence cone_correspondence_check(const PointSet& base, int n, int r) {
    const Space& bspace = base.space();
    const int m = bspace.n();
    std::uint64_t extremal = 1;
    for (int i = 0; i < m - 1; ++i) extremal *= bspace.q();
    if (base.size() != extremal)
        throw std::invalid_argument("cone correspondence requires |base| = q^{m-1}");
    if (r < 0 || r > n - 2) throw std::invalid_argument("subspace dimension out of range");

    Cone c = cone(base, n);
    const Space& space = c.points.space();
    const Subspace& V = c.vertex;

    // the embedded base space {X_{m+1} = ... = X_n = 0}
    std::vector<Vec> rows;
    for (int i = 0; i <= m; ++i) {
        Vec row(n + 1, 0);
        row[i] = 1;
        rows.push_back(std::move(row));
    }
    const Subspace embedded{n, std::move(rows)};

    DirectionEngine engine(space, r);
    ConeCorrespondence result;
    result.r = r;
    for (std::size_t i = 0; i < engine.directions().size(); ++i) {
        const Subspace& W = engine.directions()[i];
        const int s = space.meet(W, V).dim();
        const int r0 = r - s - 1;
        if (r0 < 0) {
            ++result.skipped_in_vertex;
            continue;
        }
        if (r0 > m - 2) {
            ++result.skipped_out_of_range;
            continue;
        }
        const Subspace W0 = space.project_from(V, W, embedded);
        if (W0.dim() != r0) throw std::logic_error("projected image has unexpected dimension");
        // re-read W0 in base coordinates (columns m+1..n are zero)
        std::vector<Vec> brows;
        for (const Vec& row : W0.basis) {
            for (int j = m + 1; j <= n; ++j)
                if (row[j] != 0) throw std::logic_error("projected image leaves the base space");
            brows.emplace_back(row.begin(), row.begin() + m + 1);
        }
        const Subspace W0_base{m, std::move(brows)};

        const bool cone_undetermined = !engine.determined(c.points, i);
        const bool base_undetermined = !is_determined(base, W0_base);
        ++result.checked;
        if (cone_undetermined == base_undetermined)
            ++result.agreed;
        else
            result.disagreements.push_back(W);
    }
    return result;
}

// ---- quadrics ---------------------------------------------------------------

const char* to_string(QuadricCharacter w) {
    switch (w) {
        case QuadricCharacter::Elliptic: return "elliptic";
        case QuadricCharacter::Parabolic: return "parabolic";
        case QuadricCharacter::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

QuadricCharacter quadric_character_from_string(const std::string& s) {
    if (s == "elliptic") return QuadricCharacter::Elliptic;
    if (s == "parabolic") return QuadricCharacter::Parabolic;
    if (s == "hyperbolic") return QuadricCharacter::Hyperbolic;
    throw std::invalid_argument("unknown quadric character: " + s);
}

namespace {

// t^2 + b t + c has no root in GF(q)
bool binary_form_irreducible(const Field& f, Elem b, Elem c) {
    for (Elem t = 0; t < f.q(); ++t)
        if (f.add(f.add(f.mul(t, t), f.mul(b, t)), c) == 0) return false;
    return true;
}

// associated bilinear form B(x,y) = Q(x+y) - Q(x) - Q(y) on basis vectors
std::vector<Vec> bilinear_matrix(const Field& f, const QuadricSpec& spec) {
    const int n = spec.n;
    auto eval_basis_sum = [&](int i, int j) {
        Vec x(n + 1, 0);
        x[i] = f.add(x[i], 1);
        x[j] = f.add(x[j], 1);
        return quadric_eval(f, spec, x);
    };
    std::vector<Vec> B(n + 1, Vec(n + 1, 0));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            Vec ei(n + 1, 0), ej(n + 1, 0);
            ei[i] = 1;
            ej[j] = 1;
            const Elem qi = quadric_eval(f, spec, ei);
            const Elem qj = quadric_eval(f, spec, ej);
            B[i][j] = f.sub(f.sub(eval_basis_sum(i, j), qi), qj);
        }
    return B;
}

void verify_nonsingular(const Field& f, const QuadricSpec& spec) {
    const int n = spec.n;
    const std::vector<Vec> B = bilinear_matrix(f, spec);
    if (f.p() != 2) {
        // odd characteristic: the radical of B must be trivial
        Space space(f, n);   // only for rref
        const int rank = space.rref(B).dim() + 1;
        if (rank != n + 1) throw std::logic_error("quadric form is singular");
        return;
    }
    // characteristic 2: no point may satisfy Q(P) = 0 with B(P, .) = 0
    Space space(f, n);
    for (std::uint64_t r = 0; r < space.proj_count(); ++r) {
        const Vec P = space.proj_unrank(r);
        if (quadric_eval(f, spec, P) != 0) continue;
        bool radical = true;
        for (int j = 0; j <= n && radical; ++j) {
            Elem s = 0;
            for (int i = 0; i <= n; ++i) s = f.add(s, f.mul(P[i], B[i][j]));
            if (s != 0) radical = false;
        }
        if (radical) throw std::logic_error("quadric has a singular point");
    }
}

}  // namespace

QuadricSpec make_quadric(const Field& field, int n, QuadricCharacter character) {
    const int w = static_cast<int>(character);
    if (n < 2) throw std::invalid_argument("quadric needs ambient dimension >= 2");
    const bool n_odd = (n % 2) == 1;
    if ((w == 1 && n_odd) || (w != 1 && !n_odd))
        throw std::invalid_argument("quadric character incompatible with the parity of n");

    QuadricSpec spec;
    spec.n = n;
    spec.character = character;

    int first_pair = 0;   // first index of the X_i X_{i+1} tail pairs
    switch (character) {
        case QuadricCharacter::Hyperbolic:
            first_pair = 1;
            break;
        case QuadricCharacter::Parabolic:
            spec.phi.push_back({1, 1, 1});
            first_pair = 2;
            break;
        case QuadricCharacter::Elliptic: {
            // lexicographically least (b, c) with t^2 + b t + c irreducible
            bool found = false;
            for (Elem b = 0; b < field.q() && !found; ++b)
                for (Elem c = 0; c < field.q() && !found; ++c)
                    if (binary_form_irreducible(field, b, c)) {
                        spec.phi.push_back({1, 1, 1});
                        if (b != 0) spec.phi.push_back({1, 2, b});
                        spec.phi.push_back({2, 2, c});
                        found = true;
                    }
            if (!found) throw std::logic_error("no irreducible binary quadratic found");
            first_pair = 3;
            break;
        }
    }
    for (int i = first_pair; i + 1 <= n - 1; i += 2) spec.phi.push_back(
        {static_cast<Elem>(i), static_cast<Elem>(i + 1), 1});

    verify_nonsingular(field, spec);
    return spec;
}

Elem eval_phi(const Field& field, const QuadricSpec& spec, const Vec& x) {
    Elem s = 0;
    for (const auto& [i, j, c] : spec.phi)
        s = field.add(s, field.mul(c, field.mul(x[i - 1], x[j - 1])));
    return s;
}

Elem quadric_eval(const Field& field, const QuadricSpec& spec, const Vec& X) {
    const Vec x(X.begin() + 1, X.end() - 1);
    return field.sub(field.mul(X.front(), X.back()), eval_phi(field, spec, x));
}

PointSet quadric_affine_part(const Space& space, const QuadricSpec& spec) {
    if (space.n() != spec.n) throw std::invalid_argument("space dimension does not match the quadric");
    std::uint64_t tuples = 1;
    for (int i = 0; i < spec.n - 1; ++i) tuples *= space.q();

    PointSet U(space);
    Vec x(spec.n, 0);
    for (std::uint64_t t = 0; t < tuples; ++t) {
        std::uint64_t v = t;
        for (int i = 0; i < spec.n - 1; ++i) {
            x[i] = static_cast<Elem>(v % space.q());
            v /= space.q();
        }
        x[spec.n - 1] = eval_phi(space.field(), spec, Vec(x.begin(), x.end() - 1));
        U.add_point(x);
    }
    return U;
}

bool subspace_on_quadric(const Space& space, const QuadricSpec& spec, const Subspace& S) {
    for (const Vec& P : space.subspace_points(S))
        if (quadric_eval(space.field(), spec, P) != 0) return false;
    return true;
}

std::vector<Subspace> generators_at_infinity(const Space& space, const QuadricSpec& spec) {
    std::vector<Subspace> out;
    for (const Subspace& S : space.ideal_subspaces(spec.g()))
        if (subspace_on_quadric(space, spec, S)) out.push_back(S);
    return out;
}

std::uint64_t rho_through(std::uint32_t q, int n, int w, int j) {
    const int lo = 2 - w;
    const int hi_num = n - 2 * j - 1 - w;
    if (hi_num % 2 != 0) throw std::invalid_argument("rho exponent range is not integral");
    const int hi = hi_num / 2;
    std::uint64_t r = 1;
    for (int i = lo; i <= hi; ++i) {
        std::uint64_t qi = 1;
        for (int t = 0; t < i; ++t) qi *= q;
        r *= qi + 1;
    }
    return r;
}

std::uint64_t rho(std::uint32_t q, int n, int w) {
    const int g = (n + w - 3) / 2;
    return rho_through(q, n, w, g - 1);
}

std::uint64_t count_generators_through(const Space& space, const QuadricSpec& spec,
                                       const Subspace& F) {
    if (F.dim() != spec.g() - 1)
        throw std::invalid_argument("fixed subspace must have dimension g-1");
    if (!subspace_on_quadric(space, spec, F))
        throw std::invalid_argument("fixed subspace does not lie on the quadric");

    std::set<std::vector<Vec>> seen;
    for (std::uint64_t r = 0; r < space.proj_count(); ++r) {
        const Vec P = space.proj_unrank(r);
        if (quadric_eval(space.field(), spec, P) != 0) continue;
        if (space.member(F, P)) continue;
        const Subspace S = space.span(F, space.point_subspace(P));
        if (!subspace_on_quadric(space, spec, S)) continue;
        seen.insert(S.basis);
    }
    return seen.size();
}

}  // namespace galdir
