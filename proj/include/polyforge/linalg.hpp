#pragma once

#include <polyforge/field.hpp>

#include <cstddef>
#include <vector>

namespace polyforge {

using Vec = std::vector<Elem>;
using Rows = std::vector<Vec>;

/// Reduced row echelon form in place; zero rows are dropped. Returns the rank.
std::size_t rref(const GaloisField & f, Rows & rows);

/// Basis (in RREF) of {x : r . x = 0 for every row r}, x of length ncols.
Rows null_space(const GaloisField & f, Rows rows, std::size_t ncols);

std::size_t rank(const GaloisField & f, Rows rows);

Elem dot(const GaloisField & f, const Vec & a, const Vec & b);

/// m * v with m given by rows.
Vec mat_vec(const GaloisField & f, const Rows & m, const Vec & v);

/// Scale so that the first nonzero coordinate is 1. The zero vector is returned unchanged.
Vec normalize(const GaloisField & f, Vec v);

bool is_zero(const Vec & v);

/// a + c * b
Vec axpy(const GaloisField & f, const Vec & a, Elem c, const Vec & b);

/// Reduce v against rows already in RREF; the result is zero iff v is in their span.
Vec reduce(const GaloisField & f, const Rows & rref_rows, Vec v);

} // namespace polyforge
