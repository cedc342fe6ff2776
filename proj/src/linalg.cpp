#include <polyforge/linalg.hpp>

#include <algorithm>

namespace polyforge {

std::size_t rref(const GaloisField & f, Rows & rows)
{
    if (rows.empty())
        return 0;
    const std::size_t ncols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[r], rows[piv]);
        Elem s = f.inv(rows[r][c]);
        for (auto & x : rows[r])
            x = f.mul(x, s);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            Elem m = f.neg(rows[i][c]);
            for (std::size_t k = c; k < ncols; ++k)
                rows[i][k] = f.add(rows[i][k], f.mul(m, rows[r][k]));
        }
        ++r;
    }
    rows.resize(r);
    return r;
}

Rows null_space(const GaloisField & f, Rows rows, std::size_t ncols)
{
    rref(f, rows);
    std::vector<std::size_t> pivots;
    for (const auto & row : rows) {
        std::size_t c = 0;
        while (row[c] == 0)
            ++c;
        pivots.push_back(c);
    }
    Rows basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end())
            continue;
        Vec v(ncols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < rows.size(); ++i)
            v[pivots[i]] = f.neg(rows[i][free]);
        basis.push_back(std::move(v));
    }
    rref(f, basis);
    return basis;
}

std::size_t rank(const GaloisField & f, Rows rows)
{
    return rref(f, rows);
}

Elem dot(const GaloisField & f, const Vec & a, const Vec & b)
{
    Elem s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

Vec mat_vec(const GaloisField & f, const Rows & m, const Vec & v)
{
    Vec out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        out[i] = dot(f, m[i], v);
    return out;
}

Vec normalize(const GaloisField & f, Vec v)
{
    for (auto x : v) {
        if (x == 0)
            continue;
        if (x != 1) {
            Elem s = f.inv(x);
            for (auto & y : v)
                y = f.mul(y, s);
        }
        break;
    }
    return v;
}

bool is_zero(const Vec & v)
{
    return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

Vec axpy(const GaloisField & f, const Vec & a, Elem c, const Vec & b)
{
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = f.add(a[i], f.mul(c, b[i]));
    return out;
}

Vec reduce(const GaloisField & f, const Rows & rref_rows, Vec v)
{
    for (const auto & row : rref_rows) {
        std::size_t c = 0;
        while (row[c] == 0)
            ++c;
        if (v[c] != 0)
            v = axpy(f, v, f.neg(v[c]), row);
    }
    return v;
}

} // namespace polyforge
