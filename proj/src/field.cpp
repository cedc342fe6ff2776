#include <polyforge/field.hpp>

#include <array>
#include <map>
#include <mutex>

namespace polyforge {

namespace {

struct ModulusEntry
{
    unsigned p;
    unsigned e;
    std::vector<unsigned> coeffs; // constant term first, monic
};

// Conway polynomials.
const std::array<ModulusEntry, 8> kModuli = {{
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {3, 2, {2, 2, 1}},
    {3, 3, {1, 2, 0, 1}},
    {5, 2, {2, 4, 1}},
    {7, 2, {3, 6, 1}},
}};

unsigned ipow(unsigned b, unsigned e)
{
    unsigned r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

} // namespace

bool is_prime(unsigned n)
{
    if (n < 2)
        return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::pair<unsigned, unsigned> prime_power(unsigned q)
{
    if (q < 2)
        throw FieldError("not a prime power: " + std::to_string(q));
    unsigned p = 2;
    while (q % p != 0)
        ++p;
    unsigned e = 0;
    unsigned r = q;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1)
        throw FieldError("not a prime power: " + std::to_string(q));
    return {p, e};
}

bool is_prime_power(unsigned q)
{
    try {
        prime_power(q);
        return true;
    }
    catch (const FieldError &) {
        return false;
    }
}

std::shared_ptr<const GaloisField> GaloisField::make(unsigned p, unsigned e)
{
    if (!is_prime(p))
        throw FieldError("characteristic is not prime: " + std::to_string(p));
    if (e == 0)
        throw FieldError("extension degree must be positive");
    if (ipow(p, e) > kMaxFieldOrder)
        throw FieldError("field order " + std::to_string(p) + "^" + std::to_string(e) + " exceeds supported limit " +
                         std::to_string(kMaxFieldOrder));

    // Fields are immutable; share one instance per (p, e).
    static std::mutex mutex;
    static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const GaloisField>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find({p, e}); it != cache.end())
        return it->second;

    std::vector<unsigned> modulus;
    if (e == 1)
        modulus = {0, 1};
    else {
        for (const auto & m : kModuli)
            if (m.p == p && m.e == e)
                modulus = m.coeffs;
        if (modulus.empty())
            throw FieldError("no modulus in table for GF(" + std::to_string(p) + "^" + std::to_string(e) + ")");
    }
    std::shared_ptr<const GaloisField> f(new GaloisField(p, e, std::move(modulus)));
    cache.emplace(std::pair{p, e}, f);
    return f;
}

std::shared_ptr<const GaloisField> GaloisField::of_order(unsigned q)
{
    auto [p, e] = prime_power(q);
    return make(p, e);
}

GaloisField::GaloisField(unsigned p, unsigned e, std::vector<unsigned> modulus) :
    p_(p), e_(e), q_(ipow(p, e)), modulus_(std::move(modulus))
{
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    for (unsigned a = 0; a < q_; ++a)
        for (unsigned b = 0; b < q_; ++b) {
            add_[a * q_ + b] = poly_add(Elem(a), Elem(b));
            mul_[a * q_ + b] = poly_mul(Elem(a), Elem(b));
        }
    for (unsigned a = 0; a < q_; ++a) {
        for (unsigned b = 0; b < q_; ++b) {
            if (add_[a * q_ + b] == 0)
                neg_[a] = Elem(b);
            if (mul_[a * q_ + b] == 1)
                inv_[a] = Elem(b);
        }
    }
    for (unsigned g = 1; g < q_; ++g) {
        unsigned order = 1;
        Elem x = Elem(g);
        while (x != 1) {
            x = mul(x, Elem(g));
            ++order;
        }
        if (order == q_ - 1) {
            primitive_ = Elem(g);
            break;
        }
    }
}

Elem GaloisField::inv(Elem a) const
{
    if (a == 0)
        throw FieldError("division by zero in " + name());
    return inv_[a];
}

Elem GaloisField::pow(Elem a, std::uint64_t n) const
{
    Elem r = 1;
    Elem b = a;
    while (n > 0) {
        if (n & 1)
            r = mul(r, b);
        b = mul(b, b);
        n >>= 1;
    }
    return r;
}

Elem GaloisField::frobenius(Elem a, int i) const
{
    int k = i % int(e_);
    if (k < 0)
        k += int(e_);
    Elem r = a;
    for (int j = 0; j < k; ++j)
        r = pow(r, p_);
    return r;
}

Elem GaloisField::from_int(long v) const
{
    long m = v % long(p_);
    if (m < 0)
        m += p_;
    return Elem(m);
}

std::vector<unsigned> GaloisField::coeffs(Elem a) const
{
    std::vector<unsigned> c(e_);
    unsigned v = a;
    for (unsigned i = 0; i < e_; ++i) {
        c[i] = v % p_;
        v /= p_;
    }
    return c;
}

Elem GaloisField::from_coeffs(std::span<const unsigned> c) const
{
    if (c.size() != e_)
        throw FieldError("coefficient vector has wrong length for " + name());
    unsigned v = 0;
    for (unsigned i = e_; i-- > 0;)
        v = v * p_ + c[i] % p_;
    return Elem(v);
}

bool GaloisField::in_subfield(Elem a, unsigned d) const
{
    if (d == 0 || e_ % d != 0)
        throw FieldError("subfield degree must divide " + std::to_string(e_));
    return frobenius(a, int(d)) == a;
}

Elem GaloisField::poly_add(Elem a, Elem b) const
{
    auto ca = coeffs(a);
    auto cb = coeffs(b);
    for (unsigned i = 0; i < e_; ++i)
        ca[i] = (ca[i] + cb[i]) % p_;
    return from_coeffs(ca);
}

Elem GaloisField::poly_mul(Elem a, Elem b) const
{
    if (e_ == 1)
        return Elem((unsigned(a) * unsigned(b)) % p_);
    auto ca = coeffs(a);
    auto cb = coeffs(b);
    std::vector<unsigned> prod(2 * e_ - 1, 0);
    for (unsigned i = 0; i < e_; ++i)
        for (unsigned j = 0; j < e_; ++j)
            prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    // Reduce with x^e = -(m_0 + ... + m_{e-1} x^{e-1}).
    for (unsigned d = 2 * e_ - 1; d-- > e_;) {
        unsigned lead = prod[d];
        if (lead == 0)
            continue;
        prod[d] = 0;
        for (unsigned k = 0; k < e_; ++k)
            prod[d - e_ + k] = (prod[d - e_ + k] + (p_ - modulus_[k]) * lead) % p_;
    }
    prod.resize(e_);
    return from_coeffs(prod);
}

std::string GaloisField::name() const
{
    return "GF(" + std::to_string(q_) + ")";
}

FieldElement::FieldElement(FieldPtr field, Elem code) : field_(std::move(field)), code_(code)
{
    if (!field_)
        throw FieldError("element without a field");
    if (code_ >= field_->q())
        throw FieldError("element code out of range for " + field_->name());
}

const GaloisField & FieldElement::same_field(const FieldElement & o) const
{
    if (field_ != o.field_ && (field_->p() != o.field_->p() || field_->e() != o.field_->e()))
        throw FieldError("mixed fields: " + field_->name() + " and " + o.field_->name());
    return *field_;
}

FieldElement FieldElement::operator+(const FieldElement & o) const
{
    return {field_, same_field(o).add(code_, o.code_)};
}

FieldElement FieldElement::operator-(const FieldElement & o) const
{
    return {field_, same_field(o).sub(code_, o.code_)};
}

FieldElement FieldElement::operator*(const FieldElement & o) const
{
    return {field_, same_field(o).mul(code_, o.code_)};
}

FieldElement FieldElement::operator/(const FieldElement & o) const
{
    return {field_, same_field(o).div(code_, o.code_)};
}

bool FieldElement::operator==(const FieldElement & o) const
{
    return code_ == o.code_ && field_->q() == o.field_->q();
}

FieldElement arith(const FieldElement & a, const FieldElement & b, ArithOp op)
{
    switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
    }
    throw FieldError("unknown arithmetic operation");
}

} // namespace polyforge
