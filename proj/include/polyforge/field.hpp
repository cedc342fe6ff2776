#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyforge {

/// Encoded field element. The code of an element with coefficients
/// c_0 + c_1 x + ... + c_{e-1} x^{e-1} is sum c_i p^i.
using Elem = std::uint8_t;

class FieldError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Largest field order this build supports.
inline constexpr unsigned kMaxFieldOrder = 64;

/// GF(p^e) with a fixed Conway modulus. Arithmetic goes through lookup
/// tables; the tables are filled from the polynomial routines
/// poly_add/poly_mul, which define the arithmetic.
class GaloisField
{
public:
    static std::shared_ptr<const GaloisField> make(unsigned p, unsigned e);
    static std::shared_ptr<const GaloisField> of_order(unsigned q);

    unsigned p() const { return p_; }
    unsigned e() const { return e_; }
    unsigned q() const { return q_; }

    /// Monic modulus, constant term first (length e + 1). For e = 1 this is
    /// the trivial x, i.e. plain arithmetic mod p.
    std::span<const unsigned> modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
    Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t n) const;

    /// a^(p^i); i is taken modulo e, negative i gives the inverse automorphism.
    Elem frobenius(Elem a, int i) const;

    /// Image of an integer in the prime subfield.
    Elem from_int(long v) const;
    std::vector<unsigned> coeffs(Elem a) const;
    Elem from_coeffs(std::span<const unsigned> c) const;

    /// Smallest generator of the multiplicative group.
    Elem primitive() const { return primitive_; }

    /// True if a lies in the subfield GF(p^d); d must divide e.
    bool in_subfield(Elem a, unsigned d) const;

    /// Reference polynomial-basis arithmetic, independent of the tables.
    Elem poly_add(Elem a, Elem b) const;
    Elem poly_mul(Elem a, Elem b) const;

    std::string name() const;

private:
    GaloisField(unsigned p, unsigned e, std::vector<unsigned> modulus);

    unsigned p_;
    unsigned e_;
    unsigned q_;
    std::vector<unsigned> modulus_;
    std::vector<Elem> add_;
    std::vector<Elem> mul_;
    std::vector<Elem> neg_;
    std::vector<Elem> inv_;
    Elem primitive_ = 1;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

bool is_prime(unsigned n);

/// (p, e) with p^e = q, or throws FieldError if q is not a prime power.
std::pair<unsigned, unsigned> prime_power(unsigned q);
bool is_prime_power(unsigned q);

/// Value-semantic element bound to its field.
class FieldElement
{
public:
    FieldElement(FieldPtr field, Elem code);
    static FieldElement zero(FieldPtr field) { return {std::move(field), 0}; }
    static FieldElement one(FieldPtr field) { return {std::move(field), 1}; }

    const FieldPtr & field() const { return field_; }
    Elem code() const { return code_; }
    std::vector<unsigned> coeffs() const { return field_->coeffs(code_); }

    FieldElement operator+(const FieldElement & o) const;
    FieldElement operator-(const FieldElement & o) const;
    FieldElement operator*(const FieldElement & o) const;
    FieldElement operator/(const FieldElement & o) const;
    FieldElement operator-() const { return {field_, field_->neg(code_)}; }
    FieldElement inverse() const { return {field_, field_->inv(code_)}; }
    FieldElement frobenius(int i) const { return {field_, field_->frobenius(code_, i)}; }

    bool operator==(const FieldElement & o) const;

private:
    const GaloisField & same_field(const FieldElement & o) const;

    FieldPtr field_;
    Elem code_;
};

enum class ArithOp { Add, Sub, Mul, Div };

FieldElement arith(const FieldElement & a, const FieldElement & b, ArithOp op);

} // namespace polyforge
