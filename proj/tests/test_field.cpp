#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <polyforge/field.hpp>

#include <vector>

using namespace polyforge;

namespace {

const std::vector<unsigned> kOrders{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25};

// Schoolbook polynomial product reduced by the monic modulus; independent of
// the field's tables.
std::vector<unsigned> poly_mul_mod(const std::vector<unsigned> & a, const std::vector<unsigned> & b,
                                   const std::vector<unsigned> & modulus, unsigned p)
{
    const auto e = modulus.size() - 1;
    std::vector<unsigned> prod(2 * e, 0);
    for (std::size_t i = 0; i < e; ++i)
        for (std::size_t j = 0; j < e; ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (std::size_t d = 2 * e - 1; d >= e; --d) {
        const auto c = prod[d];
        if (!c)
            continue;
        for (std::size_t k = 0; k <= e; ++k)
            prod[d - e + k] = (prod[d - e + k] + p * p - c * modulus[k] % p) % p;
    }
    prod.resize(e);
    return prod;
}

} // namespace

TEST_CASE("small field moduli")
{
    const auto f2 = GaloisField::make(2, 1);
    CHECK(f2->q() == 2);
    const auto f4 = GaloisField::make(2, 2);
    CHECK(std::vector<unsigned>(f4->modulus().begin(), f4->modulus().end()) == std::vector<unsigned>{1, 1, 1});

    // A quadratic over GF(3) is irreducible iff it has no root.
    const auto f9 = GaloisField::make(3, 2);
    const auto m = std::vector<unsigned>(f9->modulus().begin(), f9->modulus().end());
    REQUIRE(m.size() == 3);
    CHECK(m[2] == 1);
    for (unsigned x = 0; x < 3; ++x)
        CHECK((m[0] + m[1] * x + m[2] * x * x) % 3 != 0);
}

TEST_CASE("unsupported fields are rejected")
{
    CHECK_THROWS_AS(GaloisField::make(4, 1), FieldError);
    CHECK_THROWS_AS(GaloisField::make(2, 7), FieldError);
    CHECK_THROWS_AS(GaloisField::of_order(6), FieldError);
    CHECK_THROWS_AS(GaloisField::of_order(1), FieldError);
}

TEST_CASE("GF(4) arithmetic")
{
    const auto f = GaloisField::of_order(4);
    const Elem w = 2; // x
    CHECK(f->mul(w, w) == 3); // x + 1
    CHECK(f->frobenius(w, 1) == 3);
    FieldElement a(f, w);
    CHECK((a * a).code() == 3);
    CHECK((a * FieldElement::one(f)) == a);
}

TEST_CASE("field axioms, exhaustive for q <= 9")
{
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        CAPTURE(q);
        const auto f = GaloisField::of_order(q);
        for (Elem a = 0; a < q; ++a) {
            CHECK(f->add(a, 0) == a);
            CHECK(f->mul(a, 1) == a);
            CHECK(f->add(a, f->neg(a)) == 0);
            for (Elem b = 0; b < q; ++b) {
                CHECK(f->add(a, b) == f->add(b, a));
                CHECK(f->mul(a, b) == f->mul(b, a));
                for (Elem c = 0; c < q; ++c) {
                    CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
                    CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
                    CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("multiplication agrees with polynomial arithmetic")
{
    for (unsigned q : kOrders) {
        CAPTURE(q);
        const auto f = GaloisField::of_order(q);
        const std::vector<unsigned> mod(f->modulus().begin(), f->modulus().end());
        for (Elem a = 0; a < q; ++a)
            for (Elem b = 0; b < q; ++b) {
                const auto expect = f->e() == 1 ? std::vector<unsigned>{(unsigned(a) * b) % q}
                                                : poly_mul_mod(f->coeffs(a), f->coeffs(b), mod, f->p());
                CHECK(f->coeffs(f->mul(a, b)) == expect);
            }
    }
}

TEST_CASE("inverses and the multiplicative group")
{
    for (unsigned q : kOrders) {
        CAPTURE(q);
        const auto f = GaloisField::of_order(q);
        for (Elem a = 1; a < q; ++a) {
            CHECK(f->mul(a, f->inv(a)) == 1);
            CHECK(f->pow(a, q - 1) == 1);
        }
        // The primitive element has order exactly q - 1.
        Elem x = 1;
        unsigned order = 0;
        do {
            x = f->mul(x, f->primitive());
            ++order;
        } while (x != 1);
        CHECK(order == q - 1);
    }
}

TEST_CASE("Frobenius is an automorphism fixing the prime field")
{
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        CAPTURE(q);
        const auto f = GaloisField::of_order(q);
        for (Elem a = 0; a < q; ++a) {
            CHECK(f->frobenius(a, 1) == f->pow(a, f->p()));
            CHECK(f->frobenius(a, int(f->e())) == a);
            if (a < f->p())
                CHECK(f->frobenius(a, 1) == a);
            for (Elem b = 0; b < q; ++b) {
                CHECK(f->frobenius(f->add(a, b), 1) == f->add(f->frobenius(a, 1), f->frobenius(b, 1)));
                CHECK(f->frobenius(f->mul(a, b), 1) == f->mul(f->frobenius(a, 1), f->frobenius(b, 1)));
            }
        }
    }
    const auto f9 = GaloisField::of_order(9);
    for (Elem a = 0; a < 9; ++a)
        CHECK(f9->frobenius(f9->frobenius(a, 1), 1) == a);
}

TEST_CASE("element errors")
{
    const auto f = GaloisField::of_order(9);
    const auto g = GaloisField::of_order(3);
    CHECK_THROWS_AS(FieldElement(f, 1) / FieldElement::zero(f), FieldError);
    CHECK_THROWS_AS(FieldElement(f, 1) + FieldElement(g, 1), FieldError);
    CHECK_THROWS_AS(FieldElement(f, 9), FieldError);
    for (Elem a = 1; a < 9; ++a)
        CHECK((FieldElement(f, a) * FieldElement(f, a).inverse()) == FieldElement::one(f));
    CHECK(arith(FieldElement(f, 4), FieldElement(f, 4), ArithOp::Sub) == FieldElement::zero(f));
}
