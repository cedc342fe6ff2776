#pragma once

#include <polyforge/linalg.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace polyforge {

class GeometryError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Points of PG(n, q) as canonical coordinate vectors (first nonzero
/// coordinate 1), indexed in lexicographic order of the coordinates.
class ProjectiveSpace
{
public:
    ProjectiveSpace(unsigned n, FieldPtr field);

    unsigned dim() const { return n_; }
    const GaloisField & field() const { return *field_; }
    const FieldPtr & field_ptr() const { return field_; }

    std::size_t size() const { return points_.size(); }
    const Vec & point(std::size_t i) const { return points_[i]; }
    const std::vector<Vec> & points() const { return points_; }

    /// Index of the point spanned by a nonzero vector.
    std::size_t index_of(const Vec & v) const;

private:
    std::uint64_t code(const Vec & canonical) const;

    unsigned n_;
    FieldPtr field_;
    std::vector<Vec> points_;
    std::vector<std::int32_t> dense_;
    std::unordered_map<std::uint64_t, std::int32_t> sparse_;
};

/// Subspace of PG(n, q) stored as an RREF basis; equal subspaces have equal bases.
class Subspace
{
public:
    Subspace() = default;

    static Subspace from_rows(const GaloisField & f, unsigned ambient, Rows rows);
    static Subspace point(const GaloisField & f, const Vec & v);
    static Subspace empty(unsigned ambient) { return Subspace(ambient, {}); }
    static Subspace whole(const GaloisField & f, unsigned ambient);

    /// Projective dimension; -1 for the empty subspace.
    int dim() const { return int(basis_.size()) - 1; }
    unsigned ambient() const { return ambient_; }
    const Rows & basis() const { return basis_; }
    bool is_empty() const { return basis_.empty(); }

    bool contains_point(const GaloisField & f, const Vec & v) const;
    bool contains(const GaloisField & f, const Subspace & other) const;

    /// All canonical points, in lexicographic order.
    std::vector<Vec> points(const GaloisField & f) const;

    /// Flattened basis; a complete invariant of the subspace within one ambient.
    Vec key() const;

    bool operator==(const Subspace & o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
    std::strong_ordering operator<=>(const Subspace & o) const;

private:
    Subspace(unsigned ambient, Rows basis) : ambient_(ambient), basis_(std::move(basis)) {}

    unsigned ambient_ = 0;
    Rows basis_;
};

struct VecHash
{
    std::size_t operator()(const Vec & v) const noexcept;
};

Subspace span(const GaloisField & f, const Subspace & a, const Subspace & b);
Subspace span_points(const GaloisField & f, unsigned ambient, const std::vector<Vec> & pts);
Subspace meet(const GaloisField & f, const Subspace & a, const Subspace & b);

/// Image of a subspace under x -> m x (m invertible, given by rows).
Subspace transform(const GaloisField & f, const Rows & m, const Subspace & s);

/// Alternating nondegenerate bilinear form given by its Gram matrix.
class SymplecticForm
{
public:
    SymplecticForm(const GaloisField & f, Rows gram);

    /// x0y1 - x1y0 + x2y3 - x3y2 + ... on PG(n, q), n odd.
    static SymplecticForm standard(const GaloisField & f, unsigned n);

    Elem operator()(const GaloisField & f, const Vec & x, const Vec & y) const;
    const Rows & gram() const { return gram_; }
    unsigned ambient() const { return unsigned(gram_.size()) - 1; }

private:
    Rows gram_;
};

enum class QuadricKind { Parabolic, Hyperbolic, Elliptic };

std::string to_string(QuadricKind k);

/// Number of points of the nondegenerate quadric of the given kind in PG(n, q).
std::uint64_t quadric_point_count(QuadricKind kind, unsigned n, unsigned q);

/// Q(x) = sum_{i <= j} c_ij x_i x_j with polar form b(x,y) = Q(x+y) - Q(x) - Q(y).
class QuadraticForm
{
public:
    /// coeffs is (n+1)x(n+1); entries below the diagonal must be zero.
    QuadraticForm(const GaloisField & f, Rows coeffs, QuadricKind kind);

    /// x0x4 + x1x5 + x2x6 - x3^2 on PG(6, q).
    static QuadraticForm parabolic6(const GaloisField & f);

    Elem eval(const GaloisField & f, const Vec & x) const;
    Elem polar(const GaloisField & f, const Vec & x, const Vec & y) const;
    const Rows & coeffs() const { return coeffs_; }
    const Rows & polar_gram() const { return polar_; }
    QuadricKind kind() const { return kind_; }
    unsigned ambient() const { return unsigned(coeffs_.size()) - 1; }

    /// Radical of the polar form; nontrivial (the nucleus) for parabolic quadrics in characteristic 2.
    Subspace polar_radical(const GaloisField & f) const;

    /// Subspace of singular vectors inside the polar radical of the restriction to s.
    Subspace singular_radical(const GaloisField & f, const Subspace & s) const;

    /// Points of s lying on the quadric.
    std::vector<Vec> points_in(const GaloisField & f, const Subspace & s) const;

private:
    Rows coeffs_;
    Rows polar_;
    QuadricKind kind_;
};

/// {Y : b(X, Y) = 0 for all X in s} for the bilinear form with the given Gram matrix.
Subspace perp(const GaloisField & f, const Rows & gram, const Subspace & s);
Subspace perp(const GaloisField & f, const SymplecticForm & form, const Subspace & s);
Subspace perp(const GaloisField & f, const QuadraticForm & form, const Subspace & s);

enum class SectionTag {
    NondegenerateParabolic,
    NondegenerateHyperbolic,
    NondegenerateElliptic,
    ConePoint,
    ConeLine,
    TotallySingular,
    OtherDegenerate,
};

std::string to_string(SectionTag t);

struct QuadricSection
{
    SectionTag tag = SectionTag::OtherDegenerate;
    /// Present iff tag is a cone class.
    std::optional<Subspace> vertex;
    /// Kind of the base quadric of a cone.
    std::optional<QuadricKind> base;
    std::size_t point_count = 0;
};

/// Intersection type of a 4-space with a quadric of PG(6, q).
QuadricSection classify_section(const GaloisField & f, const QuadraticForm & q6, const Subspace & s);

/// Normalized 2x2 minors p_ij (i < j, lexicographic) of a line.
Vec plucker(const GaloisField & f, const Subspace & line);

/// Position of p_ij in the vector returned by plucker for ambient dimension n.
std::size_t plucker_index(unsigned n, unsigned i, unsigned j);

} // namespace polyforge
