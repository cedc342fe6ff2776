#include <polyforge/spectral.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

namespace polyforge {

std::vector<double> eigen_sym(Matrix a, double tol)
{
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n)
            throw std::invalid_argument("eigen_sym: matrix is not square");
        for (std::size_t j = 0; j < i; ++j)
            if (a[i][j] != a[j][i])
                throw std::invalid_argument("eigen_sym: matrix is not symmetric");
    }

    auto off_norm = [&] {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                s += 2 * a[i][j] * a[i][j];
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && off_norm() >= tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t r = p + 1; r < n; ++r) {
                const double apq = a[p][r];
                if (apq == 0)
                    continue;
                // Rutishauser's stable rotation.
                const double theta = (a[r][r] - a[p][p]) / (2 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][r];
                    a[k][p] = c * akp - s * akq;
                    a[k][r] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[r][k];
                    a[p][k] = c * apk - s * aqk;
                    a[r][k] = s * apk + c * aqk;
                }
                a[p][r] = a[r][p] = 0;
            }
        }
    }

    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i)
        ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

SpectralReport incidence_spectrum(const IncidencePolygon & poly)
{
    if (poly.num_points() == 0)
        throw std::invalid_argument("incidence_spectrum: empty graph");
    const std::size_t np = poly.num_points();
    Matrix m(np, std::vector<double>(np, 0.0));
    for (std::size_t l = 0; l < poly.num_lines(); ++l) {
        const auto & pts = poly.points_on(l);
        for (auto x : pts)
            for (auto y : pts)
                m[x][y] += 1;
    }
    SpectralReport r;
    r.gram_spectrum = eigen_sym(std::move(m), r.tolerance);
    r.lambda1 = std::sqrt(std::max(0.0, r.gram_spectrum[0]));
    r.lambda2 = r.gram_spectrum.size() > 1 ? std::sqrt(std::max(0.0, r.gram_spectrum[1])) : 0.0;
    return r;
}

double second_eigenvalue(const IncidencePolygon & poly)
{
    return incidence_spectrum(poly).lambda2;
}

MixingResult mixing_check(const IncidencePolygon & poly, const std::vector<std::uint32_t> & points,
                          const std::vector<std::uint32_t> & lines, double lambda1, double lambda2)
{
    std::vector<char> in_t(poly.num_lines(), 0);
    for (auto l : lines)
        in_t[l] = 1;
    std::size_t edges = 0;
    std::size_t st = 0;
    for (std::size_t l = 0; l < poly.num_lines(); ++l)
        edges += poly.points_on(l).size();
    for (auto p : points)
        for (auto l : poly.lines_on(p))
            st += in_t[l];
    const double alpha = double(points.size()) / double(poly.num_points());
    const double beta = double(lines.size()) / double(poly.num_lines());
    MixingResult r;
    r.lhs = std::abs(double(st) / double(edges) - alpha * beta);
    r.rhs = lambda2 / lambda1 * std::sqrt(std::max(0.0, alpha * beta * (1 - alpha) * (1 - beta)));
    r.holds = r.lhs <= r.rhs + 1e-9;
    return r;
}

BoundReport subgraph_ratio_bounds(double d, double k, double lambda)
{
    if (!(d > lambda))
        throw std::invalid_argument("subgraph_ratio_bounds: requires d > lambda");
    if (k < 1)
        throw std::invalid_argument("subgraph_ratio_bounds: requires k >= 1");
    BoundReport r;
    r.d = d;
    r.k = k;
    r.lambda = lambda;
    r.lower_ratio = (k - lambda) / (d - lambda);
    r.upper_ratio = (k + lambda) / (d + lambda);
    r.lower_positive = k > lambda;
    return r;
}

std::optional<std::uint64_t> exact_sqrt(std::uint64_t x)
{
    auto r = std::uint64_t(std::llround(std::sqrt(double(x))));
    for (auto c : {r == 0 ? 0 : r - 1, r, r + 1})
        if (c * c == x)
            return c;
    return std::nullopt;
}

BoundReport tgood_upper_bound(unsigned n, unsigned q, unsigned t)
{
    if (q < 2 || t < 1 || t > q)
        throw std::invalid_argument("tgood_upper_bound: requires q >= 2 and 1 <= t <= q");
    const std::uint64_t Q = q;
    std::uint64_t factor;
    std::uint64_t radicand;
    switch (n) {
    case 3:
        factor = 1;
        radicand = Q;
        break;
    case 4:
        factor = Q + 1;
        radicand = 2 * Q;
        break;
    case 6:
        factor = (Q + 1) * (Q * Q + 1);
        radicand = 3 * Q;
        break;
    default: throw std::invalid_argument("tgood_upper_bound: n must be 3, 4 or 6");
    }
    BoundReport r;
    r.n = n;
    r.q = q;
    r.t = t;
    r.tgood_bound = double(t) * double(factor) * (double(Q) + std::sqrt(double(radicand)) + 1);
    if (auto s = exact_sqrt(radicand)) {
        r.exact = true;
        r.tgood_floor = t * factor * (Q + *s + 1);
    }
    else {
        r.tgood_floor = std::uint64_t(std::floor(r.tgood_bound + 1e-9));
    }
    return r;
}

std::uint64_t cage_bounds(unsigned q, unsigned g)
{
    const std::int64_t Q = q;
    if (g == 8) {
        auto s = exact_sqrt(q);
        if (!s || !is_prime_power(q) || prime_power(q).second % 2 != 0)
            throw std::invalid_argument("cage_bounds: g = 8 needs q an even power of a prime");
        return std::uint64_t(2 * (Q * Q * Q - Q * std::int64_t(*s) - Q));
    }
    if (g == 12) {
        if (!is_prime_power(q))
            throw std::invalid_argument("cage_bounds: q must be a prime power");
        return std::uint64_t(2 * (Q * Q * Q * Q * Q - 3 * Q * Q * Q));
    }
    throw std::invalid_argument("cage_bounds: g must be 8 or 12");
}

std::uint64_t moore_bound(unsigned k, unsigned g)
{
    if (g < 4 || g % 2 != 0 || k < 2)
        throw std::invalid_argument("moore_bound: requires k >= 2 and even g >= 4");
    std::uint64_t sum = 0;
    std::uint64_t power = 1;
    for (unsigned i = 0; i < g / 2; ++i) {
        sum += power;
        power *= k - 1;
    }
    return 2 * sum;
}

} // namespace polyforge
