#pragma once

// Exact arithmetic in GF(p^h).
//
// Elements are encoded as integers in [0, q): the polynomial
// a0 + a1*x + ... + a_{h-1}*x^{h-1} is stored as sum a_i * p^i.
// Encoding 0 is the additive identity, encoding 1 the multiplicative one.
//
// The reducing modulus is canonical: among all monic irreducible polynomials
// of degree h over GF(p), the one with the smallest integer encoding
// (base-p digits of the coefficient list, low coefficient first, including
// the leading 1).  Two runs, or two implementations following the same rule,
// agree on every encoded value.

#include <cstdint>
#include <string>
#include <vector>

namespace galdir {

/// Integer encoding of a field element, always < q.
using Elem = std::uint32_t;

/// Largest supported field order.
inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

/// Returns true iff m is a prime number (trial division).
bool is_prime(std::uint32_t m);

class Field {
public:
    /// Builds GF(p^h) with the canonical minimal-encoding modulus.
    /// Throws std::invalid_argument unless p is prime, h >= 1 and
    /// p^h <= kMaxFieldOrder.
    Field(std::uint32_t p, std::uint32_t h);

    std::uint32_t p() const { return p_; }
    std::uint32_t h() const { return h_; }
    std::uint32_t q() const { return q_; }

    /// Modulus coefficients, low to high; size h+1, leading coefficient 1.
    const std::vector<Elem>& modulus() const { return modulus_; }
    /// Integer encoding of the modulus (base-p digits of the coefficients).
    std::uint64_t modulus_encoding() const { return modulus_encoding_; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem div(Elem a, Elem b) const;
    /// Multiplicative inverse; throws std::domain_error on 0.
    Elem inv(Elem a) const;
    /// a^e with e any integer; 0^0 = 1, 0^e = 0 for e > 0,
    /// negative exponents of 0 throw std::domain_error.
    Elem pow(Elem a, std::int64_t e) const;

    /// All q elements in encoding order 0..q-1.
    std::vector<Elem> elements() const;

    /// Range check; throws std::out_of_range if a >= q.
    void check(Elem a) const;

    /// Same field spec (p and h agree; the modulus then agrees too).
    bool operator==(const Field& other) const {
        return p_ == other.p_ && h_ == other.h_;
    }

    std::string name() const;   // "GF(q)"

private:
    Elem add_prime_power(Elem a, Elem b) const;   // digitwise, any p
    Elem mul_poly(Elem a, Elem b) const;          // multiply-then-reduce
    Elem pow_poly(Elem a, std::uint64_t e) const; // square-and-multiply over mul_poly
    void build_tables();

    std::uint32_t p_ = 0, h_ = 0, q_ = 0;
    std::vector<Elem> modulus_;
    std::uint64_t modulus_encoding_ = 0;
    // discrete log tables for the multiplication group: exp_[i] = g^i,
    // log_[exp_[i]] = i for a fixed primitive element g
    std::vector<Elem> exp_, log_;
};

/// Factors q as p^h and builds the field; throws std::invalid_argument
/// if q is not a prime power in range.
Field field_from_order(std::uint32_t q);

/// A field element boxed with its field, for call sites where mixing fields
/// must be detected.  Heavy loops work with raw Elem encodings instead.
class Element {
public:
    Element(const Field& field, Elem enc) : field_(&field), enc_(enc) {
        field.check(enc);
    }

    Elem enc() const { return enc_; }
    const Field& field() const { return *field_; }

    bool is_zero() const { return enc_ == 0; }
    bool is_one() const { return enc_ == 1; }

    Element inv() const { return {*field_, field_->inv(enc_)}; }
    Element pow(std::int64_t e) const { return {*field_, field_->pow(enc_, e)}; }

    friend Element operator+(const Element& a, const Element& b);
    friend Element operator-(const Element& a, const Element& b);
    friend Element operator*(const Element& a, const Element& b);
    friend Element operator/(const Element& a, const Element& b);
    friend Element operator-(const Element& a);

    bool operator==(const Element& other) const {
        return *field_ == *other.field_ && enc_ == other.enc_;
    }

private:
    const Field* field_;
    Elem enc_;
};

}  // namespace galdir
