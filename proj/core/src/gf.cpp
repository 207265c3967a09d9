#include "galdir/gf.hpp"

#include <algorithm>
#include <stdexcept>

namespace galdir {

namespace {

// base-p digits of enc, low digit first, padded/truncated to len
std::vector<Elem> to_digits(std::uint64_t enc, std::uint32_t p, std::size_t len) {
    std::vector<Elem> d(len, 0);
    for (std::size_t i = 0; i < len && enc; ++i) {
        d[i] = static_cast<Elem>(enc % p);
        enc /= p;
    }
    return d;
}

std::uint64_t from_digits(const std::vector<Elem>& d, std::uint32_t p) {
    std::uint64_t enc = 0;
    for (std::size_t i = d.size(); i-- > 0;) enc = enc * p + d[i];
    return enc;
}

int degree(const std::vector<Elem>& f) {
    for (std::size_t i = f.size(); i-- > 0;)
        if (f[i] != 0) return static_cast<int>(i);
    return -1;
}

// multiplicative inverse mod prime p, by scan (p <= 2^16)
Elem inv_mod_p(Elem a, std::uint32_t p) {
    for (Elem c = 1; c < p; ++c)
        if (a * c % p == 1) return c;
    throw std::domain_error("inverse of zero mod p");
}

// remainder of f modulo m over GF(p); m monic
std::vector<Elem> poly_rem(std::vector<Elem> f, const std::vector<Elem>& m, std::uint32_t p) {
    const int dm = degree(m);
    for (int i = degree(f); i >= dm && i >= 0; i = degree(f)) {
        const Elem c = f[i];  // m monic, so the quotient coefficient is c
        for (int j = 0; j <= dm; ++j) {
            const Elem t = static_cast<Elem>(static_cast<std::uint64_t>(c) * m[j] % p);
            const std::size_t idx = static_cast<std::size_t>(i - dm + j);
            f[idx] = (f[idx] + p - t) % p;
        }
    }
    return f;
}

bool poly_divides(const std::vector<Elem>& d, const std::vector<Elem>& f, std::uint32_t p) {
    return degree(poly_rem(f, d, p)) < 0;
}

// f monic of degree h; trial division by all monic polynomials of degree
// 1..h/2 (enough at desk scale)
bool poly_irreducible(const std::vector<Elem>& f, std::uint32_t p, std::uint32_t h) {
    std::uint64_t pd = p;
    for (std::uint32_t d = 1; 2 * d <= h; ++d, pd *= p) {
        for (std::uint64_t enc = pd; enc < 2 * pd; ++enc) {
            std::vector<Elem> g = to_digits(enc, p, d + 1);
            if (poly_divides(g, f, p)) return false;
        }
    }
    return true;
}

// distinct prime factors by trial division
std::vector<std::uint32_t> prime_factors(std::uint32_t m) {
    std::vector<std::uint32_t> fs;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= m; ++d) {
        if (m % d == 0) {
            fs.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) fs.push_back(m);
    return fs;
}

}  // namespace

bool is_prime(std::uint32_t m) {
    if (m < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

Field::Field(std::uint32_t p, std::uint32_t h) : p_(p), h_(h) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (h < 1) throw std::invalid_argument("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < h; ++i) {
        q *= p;
        if (q > kMaxFieldOrder) throw std::invalid_argument("field order above cap 2^16");
    }
    q_ = static_cast<std::uint32_t>(q);

    // smallest-encoding monic irreducible of degree h; monic degree-h
    // polynomials are exactly the encodings in [p^h, 2*p^h)
    const std::uint64_t ph = q;
    for (std::uint64_t enc = ph; enc < 2 * ph; ++enc) {
        std::vector<Elem> f = to_digits(enc, p, h + 1);
        if (poly_irreducible(f, p, h)) {
            modulus_ = std::move(f);
            modulus_encoding_ = enc;
            break;
        }
    }
    if (modulus_.empty()) throw std::logic_error("no irreducible modulus found");

    build_tables();
}

Elem Field::add_prime_power(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    Elem r = 0, mult = 1;
    for (std::uint32_t i = 0; i < h_; ++i) {
        r += (a % p_ + b % p_) % p_ * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

Elem Field::add(Elem a, Elem b) const {
    check(a);
    check(b);
    return add_prime_power(a, b);
}

Elem Field::neg(Elem a) const {
    check(a);
    if (p_ == 2) return a;
    Elem r = 0, mult = 1;
    for (std::uint32_t i = 0; i < h_; ++i) {
        r += (p_ - a % p_) % p_ * mult;
        a /= p_;
        mult *= p_;
    }
    return r;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul_poly(Elem a, Elem b) const {
    std::vector<Elem> da = to_digits(a, p_, h_), db = to_digits(b, p_, h_);
    std::vector<Elem> prod(2 * h_ - 1, 0);
    for (std::uint32_t i = 0; i < h_; ++i) {
        if (da[i] == 0) continue;
        for (std::uint32_t j = 0; j < h_; ++j)
            prod[i + j] = static_cast<Elem>(
                (prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_);
    }
    std::vector<Elem> r = poly_rem(std::move(prod), modulus_, p_);
    r.resize(h_);
    return static_cast<Elem>(from_digits(r, p_));
}

Elem Field::pow_poly(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
        if (e & 1) r = mul_poly(r, a);
        a = mul_poly(a, a);
        e >>= 1;
    }
    return r;
}

void Field::build_tables() {
    // find a primitive element: order q-1 checked against the prime
    // factorization of q-1
    const std::uint32_t m = q_ - 1;
    const std::vector<std::uint32_t> fs = prime_factors(m);
    Elem gen = 1;
    for (Elem c = 1; c < q_; ++c) {
        bool primitive = true;
        for (std::uint32_t r : fs)
            if (pow_poly(c, m / r) == 1) {
                primitive = false;
                break;
            }
        if (primitive) {
            gen = c;
            break;
        }
    }

    exp_.assign(m, 0);
    log_.assign(q_, 0);
    Elem v = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        exp_[i] = v;
        log_[v] = i;
        v = mul_poly(v, gen);
    }
    if (v != 1) throw std::logic_error("primitive element search failed");
}

Elem Field::mul(Elem a, Elem b) const {
    check(a);
    check(b);
    if (a == 0 || b == 0) return 0;
    const std::uint32_t m = q_ - 1;
    return exp_[(log_[a] + log_[b]) % m];
}

Elem Field::inv(Elem a) const {
    check(a);
    if (a == 0) throw std::domain_error("inversion of zero");
    const std::uint32_t m = q_ - 1;
    return exp_[(m - log_[a]) % m];
}

Elem Field::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Elem Field::pow(Elem a, std::int64_t e) const {
    check(a);
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) throw std::domain_error("negative power of zero");
        return 0;
    }
    const std::int64_t m = q_ - 1;
    const std::int64_t r = ((e % m) + m) % m;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * r) % m];
}

std::vector<Elem> Field::elements() const {
    std::vector<Elem> es(q_);
    for (std::uint32_t i = 0; i < q_; ++i) es[i] = i;
    return es;
}

void Field::check(Elem a) const {
    if (a >= q_) throw std::out_of_range("element encoding out of range for " + name());
}

std::string Field::name() const { return "GF(" + std::to_string(q_) + ")"; }

Field field_from_order(std::uint32_t q) {
    if (q < 2) throw std::invalid_argument("field order must be >= 2");
    std::uint32_t p = q;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    std::uint32_t h = 0, m = q;
    while (m > 1 && m % p == 0) {
        m /= p;
        ++h;
    }
    if (m != 1) throw std::invalid_argument("field order is not a prime power");
    return Field(p, h);
}

namespace {
void require_same_field(const Element& a, const Element& b) {
    if (!(a.field() == b.field()))
        throw std::invalid_argument("operands from different fields");
}
}  // namespace

Element operator+(const Element& a, const Element& b) {
    require_same_field(a, b);
    return {a.field(), a.field().add(a.enc(), b.enc())};
}
Element operator-(const Element& a, const Element& b) {
    require_same_field(a, b);
    return {a.field(), a.field().sub(a.enc(), b.enc())};
}
Element operator*(const Element& a, const Element& b) {
    require_same_field(a, b);
    return {a.field(), a.field().mul(a.enc(), b.enc())};
}
Element operator/(const Element& a, const Element& b) {
    require_same_field(a, b);
    return {a.field(), a.field().div(a.enc(), b.enc())};
}
Element operator-(const Element& a) { return {a.field(), a.field().neg(a.enc())}; }

}  // namespace galdir
