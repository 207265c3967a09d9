#include "galdir/pg.hpp"

#include <algorithm>
#include <stdexcept>

namespace galdir {

std::vector<int> Subspace::pivots() const {
    std::vector<int> ps;
    ps.reserve(basis.size());
    for (const Vec& row : basis) {
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) {
                ps.push_back(static_cast<int>(j));
                break;
            }
    }
    return ps;
}

bool subspace_less(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    const std::vector<int> pa = a.pivots(), pb = b.pivots();
    if (pa != pb) return pa < pb;
    return a.basis < b.basis;   // within one pattern this is odometer order
}

std::uint64_t gaussian_binomial(unsigned a, unsigned b, std::uint64_t q) {
    if (b > a) return 0;
    std::uint64_t r = 1;
    for (unsigned i = 0; i < b; ++i) {
        std::uint64_t num = 1, den = 1;
        for (unsigned t = 0; t < a - i; ++t) num *= q;
        for (unsigned t = 0; t < i + 1; ++t) den *= q;
        r = r * (num - 1) / (den - 1);
    }
    return r;
}

Space::Space(Field field, int n) : field_(std::move(field)), n_(n) {
    if (n < 1) throw std::invalid_argument("ambient dimension must be >= 1");
    affine_count_ = 1;
    for (int i = 0; i < n; ++i) {
        affine_count_ *= q();
        if (affine_count_ > (1ull << 26))
            throw std::invalid_argument("space too large for desk-scale enumeration");
    }
}

std::uint64_t Space::proj_count() const {
    // sum of q^n + q^{n-1} + ... + 1
    std::uint64_t total = 0, block = affine_count_;
    for (int i = 0; i <= n_; ++i) {
        total += block;
        block /= q();
    }
    return total;
}

void Space::check_vec(const Vec& v, std::size_t len) const {
    if (v.size() != len) throw std::invalid_argument("coordinate vector of wrong length");
    for (Elem e : v) field_.check(e);
}

void Space::check_subspace(const Subspace& S) const {
    if (S.ambient != n_) throw std::invalid_argument("subspace from a different ambient space");
}

// ---- points ---------------------------------------------------------------

std::uint64_t Space::affine_rank(const Vec& x) const {
    check_vec(x, n_);
    std::uint64_t r = 0;
    for (int i = 0; i < n_; ++i) r = r * q() + x[i];
    return r;
}

Vec Space::affine_unrank(std::uint64_t r) const {
    if (r >= affine_count_) throw std::out_of_range("affine rank out of range");
    Vec x(n_);
    for (int i = n_ - 1; i >= 0; --i) {
        x[i] = static_cast<Elem>(r % q());
        r /= q();
    }
    return x;
}

Vec Space::proj_normalize(Vec X) const {
    check_vec(X, n_ + 1);
    for (Elem e : X)
        if (e != 0) {
            if (e != 1) {
                const Elem s = field_.inv(e);
                for (Elem& c : X) c = field_.mul(c, s);
            }
            return X;
        }
    throw std::invalid_argument("zero vector is not a projective point");
}

std::uint64_t Space::proj_rank(const Vec& X) const {
    const Vec P = proj_normalize(X);
    std::uint64_t offset = 0, block = affine_count_;
    for (int i = 0; i <= n_; ++i) {
        if (P[i] != 0) {
            std::uint64_t r = 0;
            for (int j = i + 1; j <= n_; ++j) r = r * q() + P[j];
            return offset + r;
        }
        offset += block;
        block /= q();
    }
    throw std::logic_error("unreachable");
}

Vec Space::proj_unrank(std::uint64_t r) const {
    std::uint64_t offset = 0, block = affine_count_;
    for (int i = 0; i <= n_; ++i) {
        if (r < offset + block) {
            Vec P(n_ + 1, 0);
            P[i] = 1;
            std::uint64_t v = r - offset;
            for (int j = n_; j > i; --j) {
                P[j] = static_cast<Elem>(v % q());
                v /= q();
            }
            return P;
        }
        offset += block;
        block /= q();
    }
    throw std::out_of_range("projective rank out of range");
}

Vec Space::embed_affine(const Vec& x) const {
    check_vec(x, n_);
    Vec X(n_ + 1);
    X[0] = 1;
    std::copy(x.begin(), x.end(), X.begin() + 1);
    return X;
}

Vec Space::to_affine(const Vec& X) const {
    Vec P = proj_normalize(X);
    if (P[0] != 1) throw std::invalid_argument("point lies in the hyperplane at infinity");
    return Vec(P.begin() + 1, P.end());
}

// ---- subspace algebra ------------------------------------------------------

std::vector<Vec> rref_rows(const Field& field, std::vector<Vec> rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows.front().size();
    for (const Vec& r : rows)
        if (r.size() != cols) throw std::invalid_argument("rows of unequal width");
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        const Elem s = field.inv(rows[rank][col]);
        for (Elem& e : rows[rank]) e = field.mul(e, s);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            const Elem c = rows[i][col];
            for (std::size_t j = col; j < cols; ++j)
                rows[i][j] = field.sub(rows[i][j], field.mul(c, rows[rank][j]));
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

Subspace Space::rref(std::vector<Vec> rows) const {
    for (const Vec& r : rows) check_vec(r, n_ + 1);
    return Subspace{n_, rref_rows(field_, std::move(rows))};
}

Subspace Space::whole_space() const {
    std::vector<Vec> rows(n_ + 1, Vec(n_ + 1, 0));
    for (int i = 0; i <= n_; ++i) rows[i][i] = 1;
    return Subspace{n_, std::move(rows)};
}

Subspace Space::hyperplane_at_infinity() const {
    std::vector<Vec> rows(n_, Vec(n_ + 1, 0));
    for (int i = 0; i < n_; ++i) rows[i][i + 1] = 1;
    return Subspace{n_, std::move(rows)};
}

Subspace Space::point_subspace(const Vec& X) const {
    return Subspace{n_, {proj_normalize(X)}};
}

Subspace Space::span(const Subspace& a, const Subspace& b) const {
    check_subspace(a);
    check_subspace(b);
    std::vector<Vec> rows = a.basis;
    rows.insert(rows.end(), b.basis.begin(), b.basis.end());
    return rref(std::move(rows));
}

Subspace Space::nullspace(const Subspace& S) const {
    check_subspace(S);
    const std::size_t cols = n_ + 1;
    const std::vector<int> ps = S.pivots();
    std::vector<bool> is_pivot(cols, false);
    for (int p : ps) is_pivot[p] = true;
    std::vector<Vec> rows;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec w(cols, 0);
        w[f] = 1;
        for (std::size_t i = 0; i < ps.size(); ++i)
            w[ps[i]] = field_.neg(S.basis[i][f]);
        rows.push_back(std::move(w));
    }
    return rref(std::move(rows));
}

Subspace Space::meet(const Subspace& a, const Subspace& b) const {
    // duals: (a meet b)-perp = a-perp span b-perp
    return nullspace(span(nullspace(a), nullspace(b)));
}

Vec Space::reduce(const Subspace& S, Vec v) const {
    check_subspace(S);
    check_vec(v, n_ + 1);
    const std::vector<int> ps = S.pivots();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const Elem c = v[ps[i]];
        if (c == 0) continue;
        for (std::size_t j = ps[i]; j < v.size(); ++j)
            v[j] = field_.sub(v[j], field_.mul(c, S.basis[i][j]));
    }
    return v;
}

bool Space::member(const Subspace& S, const Vec& v) const {
    const Vec r = reduce(S, v);
    return std::all_of(r.begin(), r.end(), [](Elem e) { return e == 0; });
}

bool Space::contains(const Subspace& outer, const Subspace& inner) const {
    for (const Vec& row : inner.basis)
        if (!member(outer, row)) return false;
    return true;
}

bool Space::in_hyperplane_at_infinity(const Subspace& S) const {
    check_subspace(S);
    for (const Vec& row : S.basis)
        if (row[0] != 0) return false;
    return true;
}

std::vector<Vec> Space::subspace_points(const Subspace& S) const {
    check_subspace(S);
    std::vector<Vec> pts;
    if (S.is_empty()) return pts;
    const int d = S.dim();
    // normalized coefficient tuples of an abstract PG(d,q), pivot first
    for (int pivot = 0; pivot <= d; ++pivot) {
        std::uint64_t combos = 1;
        for (int j = pivot + 1; j <= d; ++j) combos *= q();
        for (std::uint64_t c = 0; c < combos; ++c) {
            Vec coeff(d + 1, 0);
            coeff[pivot] = 1;
            std::uint64_t v = c;
            for (int j = d; j > pivot; --j) {
                coeff[j] = static_cast<Elem>(v % q());
                v /= q();
            }
            Vec pt(n_ + 1, 0);
            for (int i = 0; i <= d; ++i) {
                if (coeff[i] == 0) continue;
                for (int j = 0; j <= n_; ++j)
                    pt[j] = field_.add(pt[j], field_.mul(coeff[i], S.basis[i][j]));
            }
            pts.push_back(proj_normalize(std::move(pt)));
        }
    }
    return pts;
}

// ---- enumeration ------------------------------------------------------------

void Space::for_each_abstract(int d, int k,
                              const std::function<void(std::vector<Vec>&)>& fn) const {
    if (k < -1 || k > d) throw std::invalid_argument("subspace dimension out of range");
    if (k == -1) {
        std::vector<Vec> none;
        fn(none);
        return;
    }
    const int rows = k + 1, cols = d + 1;
    // pivot column combinations in lexicographic order
    std::vector<int> piv(rows);
    for (int i = 0; i < rows; ++i) piv[i] = i;
    for (;;) {
        // free positions in row-major order
        std::vector<std::pair<int, int>> free_pos;
        std::vector<bool> is_pivot(cols, false);
        for (int p : piv) is_pivot[p] = true;
        for (int i = 0; i < rows; ++i)
            for (int j = piv[i] + 1; j < cols; ++j)
                if (!is_pivot[j]) free_pos.emplace_back(i, j);

        std::vector<Vec> mat(rows, Vec(cols, 0));
        for (int i = 0; i < rows; ++i) mat[i][piv[i]] = 1;
        std::vector<Elem> digits(free_pos.size(), 0);
        for (;;) {
            for (std::size_t t = 0; t < free_pos.size(); ++t)
                mat[free_pos[t].first][free_pos[t].second] = digits[t];
            fn(mat);
            // odometer: last position fastest
            std::size_t t = digits.size();
            while (t > 0 && digits[t - 1] == q() - 1) digits[--t] = 0;
            if (t == 0) break;
            ++digits[t - 1];
        }

        // next pivot combination
        int i = rows - 1;
        while (i >= 0 && piv[i] == cols - rows + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < rows; ++j) piv[j] = piv[j - 1] + 1;
    }
}

void Space::for_each_subspace(int k, const std::function<void(const Subspace&)>& fn) const {
    for_each_abstract(n_, k, [&](std::vector<Vec>& mat) {
        const Subspace s{n_, mat};
        fn(s);
    });
}

std::vector<Subspace> Space::subspaces(int k) const {
    std::vector<Subspace> out;
    for_each_subspace(k, [&](const Subspace& s) { out.push_back(s); });
    return out;
}

std::vector<Subspace> Space::subspaces_of(const Subspace& ambient, int k) const {
    check_subspace(ambient);
    const int d = ambient.dim();
    if (k < -1 || k > d) throw std::invalid_argument("subspace dimension out of range");
    std::vector<Subspace> out;
    for_each_abstract(d, k, [&](std::vector<Vec>& mat) {
        std::vector<Vec> rows;
        rows.reserve(mat.size());
        for (const Vec& coeff : mat) {
            Vec row(n_ + 1, 0);
            for (int i = 0; i <= d; ++i) {
                if (coeff[i] == 0) continue;
                for (int j = 0; j <= n_; ++j)
                    row[j] = field_.add(row[j], field_.mul(coeff[i], ambient.basis[i][j]));
            }
            rows.push_back(std::move(row));
        }
        out.push_back(rref(std::move(rows)));
    });
    std::sort(out.begin(), out.end(), subspace_less);
    return out;
}

std::vector<Subspace> Space::ideal_subspaces(int k) const {
    // H-inf in coordinates X1..Xn is an abstract PG(n-1,q); prepending the
    // zero column preserves RREF and the enumeration order
    if (k < -1 || k > n_ - 1) throw std::invalid_argument("subspace dimension out of range");
    std::vector<Subspace> out;
    for_each_abstract(n_ - 1, k, [&](std::vector<Vec>& mat) {
        std::vector<Vec> rows;
        rows.reserve(mat.size());
        for (const Vec& m : mat) {
            Vec row(n_ + 1, 0);
            std::copy(m.begin(), m.end(), row.begin() + 1);
            rows.push_back(std::move(row));
        }
        out.push_back(Subspace{n_, std::move(rows)});
    });
    return out;
}

// ---- flats ------------------------------------------------------------------

std::vector<AffineFlat> Space::parallel_flats(const Subspace& S) const {
    check_subspace(S);
    if (!in_hyperplane_at_infinity(S))
        throw std::invalid_argument("direction subspace must lie in the hyperplane at infinity");
    const int k = S.dim();
    std::uint64_t flat_count = 1;
    for (int i = 0; i < n_ - k - 1; ++i) flat_count *= q();

    std::vector<AffineFlat> flats;
    flats.reserve(flat_count);
    std::vector<bool> covered(affine_count_, false);
    for (std::uint64_t r = 0; r < affine_count_; ++r) {
        if (covered[r]) continue;
        AffineFlat flat{S, affine_unrank(r)};
        for (std::uint64_t pr : flat_points(flat)) covered[pr] = true;
        flats.push_back(std::move(flat));
    }
    if (flats.size() != flat_count) throw std::logic_error("flat partition has wrong size");
    return flats;
}

std::vector<std::uint64_t> Space::flat_points(const AffineFlat& flat) const {
    check_subspace(flat.direction);
    const int rows = static_cast<int>(flat.direction.basis.size());
    std::uint64_t count = 1;
    for (int i = 0; i < rows; ++i) count *= q();

    std::vector<std::uint64_t> pts;
    pts.reserve(count);
    for (std::uint64_t c = 0; c < count; ++c) {
        Vec x = flat.rep;
        std::uint64_t v = c;
        for (int i = 0; i < rows; ++i) {
            const Elem ci = static_cast<Elem>(v % q());
            v /= q();
            if (ci == 0) continue;
            // direction rows have X0 = 0; their vector part is columns 1..n
            for (int j = 0; j < n_; ++j)
                x[j] = field_.add(x[j], field_.mul(ci, flat.direction.basis[i][j + 1]));
        }
        pts.push_back(affine_rank(x));
    }
    return pts;
}

bool Space::flat_contains(const AffineFlat& flat, const Vec& x) const {
    check_vec(x, n_);
    // (x - rep) must lie in the vector part of the direction
    Vec diff(n_ + 1, 0);
    for (int j = 0; j < n_; ++j) diff[j + 1] = field_.sub(x[j], flat.rep[j]);
    return member(flat.direction, diff);
}

Subspace Space::flat_closure(const AffineFlat& flat) const {
    return span(flat.direction, point_subspace(embed_affine(flat.rep)));
}

// ---- projection ---------------------------------------------------------------

Subspace Space::project_from(const Subspace& V, const Subspace& W, const Subspace& target) const {
    check_subspace(V);
    check_subspace(W);
    check_subspace(target);
    if (meet(V, target).dim() >= 0)
        throw std::invalid_argument("projection center must be disjoint from the target");
    return meet(span(V, W), target);
}

}  // namespace galdir
