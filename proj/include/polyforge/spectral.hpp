#pragma once

#include <polyforge/polygon.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace polyforge {

using Matrix = std::vector<std::vector<double>>;

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, sorted
/// in descending order. Throws std::invalid_argument on asymmetric input.
std::vector<double> eigen_sym(Matrix m, double tol = 1e-12);

struct SpectralReport
{
    double lambda1 = 0;
    double lambda2 = 0;
    /// Eigenvalues of N N^T, descending.
    std::vector<double> gram_spectrum;
    double tolerance = 1e-12;
};

/// Spectrum of the incidence graph through N N^T (N = point-line biadjacency).
SpectralReport incidence_spectrum(const IncidencePolygon & poly);
double second_eigenvalue(const IncidencePolygon & poly);

struct MixingResult
{
    double lhs = 0;
    double rhs = 0;
    bool holds = true;
};

/// Expander mixing inequality for a point set S and line set T.
MixingResult mixing_check(const IncidencePolygon & poly, const std::vector<std::uint32_t> & points,
                          const std::vector<std::uint32_t> & lines, double lambda1, double lambda2);

struct BoundReport
{
    // Ratio window for a k-regular induced subgraph of a d-regular bipartite graph.
    double d = 0;
    double k = 0;
    double lambda = 0;
    double lower_ratio = 0;
    double upper_ratio = 0;
    bool lower_positive = false;

    // t-good size bound.
    unsigned n = 0;
    unsigned q = 0;
    unsigned t = 0;
    double tgood_bound = 0;
    std::uint64_t tgood_floor = 0;
    bool exact = false;
};

BoundReport subgraph_ratio_bounds(double d, double k, double lambda);

/// Upper bound on |P| of a t-good structure in a generalized n-gon of order q.
BoundReport tgood_upper_bound(unsigned n, unsigned q, unsigned t);

/// Integer v with v*v == x, if any.
std::optional<std::uint64_t> exact_sqrt(std::uint64_t x);

/// Upper bounds on c(q+1, g) from regular induced subgraphs: g = 8 needs square q.
std::uint64_t cage_bounds(unsigned q, unsigned g);

/// Moore bound for a k-regular graph of even girth g.
std::uint64_t moore_bound(unsigned k, unsigned g);

} // namespace polyforge
