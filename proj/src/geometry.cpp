#include <polyforge/geometry.hpp>

#include <algorithm>

namespace polyforge {

namespace {

std::uint64_t ipow64(std::uint64_t b, unsigned e)
{
    std::uint64_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

constexpr std::uint64_t kDenseLimit = std::uint64_t(1) << 20;

} // namespace

ProjectiveSpace::ProjectiveSpace(unsigned n, FieldPtr field) : n_(n), field_(std::move(field))
{
    if (n_ < 1)
        throw GeometryError("projective dimension must be at least 1");
    const unsigned q = field_->q();
    const std::uint64_t total = ipow64(q, n_ + 1);
    if (total > (std::uint64_t(1) << 40))
        throw GeometryError("projective space too large");
    for (unsigned lead = 0; lead <= n_; ++lead) {
        const std::uint64_t tail = ipow64(q, n_ - lead);
        for (std::uint64_t t = 0; t < tail; ++t) {
            Vec v(n_ + 1, 0);
            v[lead] = 1;
            std::uint64_t r = t;
            for (unsigned i = n_; i > lead; --i) {
                v[i] = Elem(r % q);
                r /= q;
            }
            points_.push_back(std::move(v));
        }
    }
    std::sort(points_.begin(), points_.end());
    if (total <= kDenseLimit) {
        dense_.assign(total, -1);
        for (std::size_t i = 0; i < points_.size(); ++i)
            dense_[code(points_[i])] = std::int32_t(i);
    }
    else {
        for (std::size_t i = 0; i < points_.size(); ++i)
            sparse_.emplace(code(points_[i]), std::int32_t(i));
    }
}

std::uint64_t ProjectiveSpace::code(const Vec & canonical) const
{
    std::uint64_t c = 0;
    for (auto x : canonical)
        c = c * field_->q() + x;
    return c;
}

std::size_t ProjectiveSpace::index_of(const Vec & v) const
{
    if (v.size() != n_ + 1)
        throw GeometryError("coordinate vector has wrong length");
    if (is_zero(v))
        throw GeometryError("zero vector is not a projective point");
    const auto c = code(normalize(*field_, v));
    if (!dense_.empty())
        return std::size_t(dense_[c]);
    return std::size_t(sparse_.at(c));
}

Subspace Subspace::from_rows(const GaloisField & f, unsigned ambient, Rows rows)
{
    for (const auto & r : rows)
        if (r.size() != ambient + 1)
            throw GeometryError("mixed ambient dimensions");
    rref(f, rows);
    return Subspace(ambient, std::move(rows));
}

Subspace Subspace::point(const GaloisField & f, const Vec & v)
{
    if (v.empty())
        throw GeometryError("empty coordinate vector");
    return from_rows(f, unsigned(v.size()) - 1, {v});
}

Subspace Subspace::whole(const GaloisField & f, unsigned ambient)
{
    Rows rows(ambient + 1, Vec(ambient + 1, 0));
    for (unsigned i = 0; i <= ambient; ++i)
        rows[i][i] = 1;
    return from_rows(f, ambient, std::move(rows));
}

bool Subspace::contains_point(const GaloisField & f, const Vec & v) const
{
    return is_zero(reduce(f, basis_, v));
}

bool Subspace::contains(const GaloisField & f, const Subspace & other) const
{
    if (other.ambient_ != ambient_)
        throw GeometryError("mixed ambient dimensions");
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [&](const Vec & r) { return contains_point(f, r); });
}

std::vector<Vec> Subspace::points(const GaloisField & f) const
{
    std::vector<Vec> out;
    const std::size_t k = basis_.size();
    if (k == 0)
        return out;
    const unsigned q = f.q();
    // Canonical combinations: the first nonzero coefficient equals 1.
    for (std::size_t lead = 0; lead < k; ++lead) {
        const std::uint64_t tail = ipow64(q, unsigned(k - lead - 1));
        for (std::uint64_t t = 0; t < tail; ++t) {
            Vec v = basis_[lead];
            std::uint64_t r = t;
            for (std::size_t i = lead + 1; i < k; ++i) {
                Elem c = Elem(r % q);
                r /= q;
                if (c != 0)
                    v = axpy(f, v, c, basis_[i]);
            }
            out.push_back(normalize(f, std::move(v)));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Vec Subspace::key() const
{
    Vec k;
    k.reserve(basis_.size() * (ambient_ + 1) + 1);
    k.push_back(Elem(basis_.size()));
    for (const auto & r : basis_)
        k.insert(k.end(), r.begin(), r.end());
    return k;
}

std::strong_ordering Subspace::operator<=>(const Subspace & o) const
{
    if (auto c = ambient_ <=> o.ambient_; c != 0)
        return c;
    if (auto c = basis_.size() <=> o.basis_.size(); c != 0)
        return c;
    return basis_ <=> o.basis_;
}

std::size_t VecHash::operator()(const Vec & v) const noexcept
{
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) {
        h ^= x;
        h *= 1099511628211ull;
    }
    return h;
}

Subspace span(const GaloisField & f, const Subspace & a, const Subspace & b)
{
    if (a.ambient() != b.ambient())
        throw GeometryError("mixed ambient dimensions");
    Rows rows = a.basis();
    rows.insert(rows.end(), b.basis().begin(), b.basis().end());
    return Subspace::from_rows(f, a.ambient(), std::move(rows));
}

Subspace span_points(const GaloisField & f, unsigned ambient, const std::vector<Vec> & pts)
{
    return Subspace::from_rows(f, ambient, pts);
}

Subspace meet(const GaloisField & f, const Subspace & a, const Subspace & b)
{
    if (a.ambient() != b.ambient())
        throw GeometryError("mixed ambient dimensions");
    const std::size_t n = a.ambient() + 1;
    Rows ann = null_space(f, a.basis(), n);
    Rows bnn = null_space(f, b.basis(), n);
    ann.insert(ann.end(), bnn.begin(), bnn.end());
    return Subspace::from_rows(f, a.ambient(), null_space(f, std::move(ann), n));
}

Subspace transform(const GaloisField & f, const Rows & m, const Subspace & s)
{
    Rows rows;
    for (const auto & r : s.basis())
        rows.push_back(mat_vec(f, m, r));
    return Subspace::from_rows(f, s.ambient(), std::move(rows));
}

SymplecticForm::SymplecticForm(const GaloisField & f, Rows gram) : gram_(std::move(gram))
{
    const std::size_t n = gram_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (gram_[i].size() != n)
            throw GeometryError("gram matrix is not square");
        if (gram_[i][i] != 0)
            throw GeometryError("gram matrix is not alternating");
        for (std::size_t j = 0; j < n; ++j)
            if (gram_[i][j] != f.neg(gram_[j][i]))
                throw GeometryError("gram matrix is not skew");
    }
    if (rank(f, gram_) != n)
        throw GeometryError("symplectic form is degenerate");
}

SymplecticForm SymplecticForm::standard(const GaloisField & f, unsigned n)
{
    if (n % 2 == 0)
        throw GeometryError("symplectic forms need odd projective dimension");
    Rows g(n + 1, Vec(n + 1, 0));
    for (unsigned i = 0; i <= n; i += 2) {
        g[i][i + 1] = 1;
        g[i + 1][i] = f.neg(1);
    }
    return SymplecticForm(f, std::move(g));
}

Elem SymplecticForm::operator()(const GaloisField & f, const Vec & x, const Vec & y) const
{
    return dot(f, x, mat_vec(f, gram_, y));
}

std::string to_string(QuadricKind k)
{
    switch (k) {
    case QuadricKind::Parabolic: return "parabolic";
    case QuadricKind::Hyperbolic: return "hyperbolic";
    case QuadricKind::Elliptic: return "elliptic";
    }
    return "?";
}

std::uint64_t quadric_point_count(QuadricKind kind, unsigned n, unsigned q)
{
    switch (kind) {
    case QuadricKind::Parabolic:
        if (n % 2 != 0)
            throw GeometryError("parabolic quadrics live in even dimension");
        return (ipow64(q, n) - 1) / (q - 1);
    case QuadricKind::Hyperbolic: {
        if (n % 2 == 0)
            throw GeometryError("hyperbolic quadrics live in odd dimension");
        const unsigned m = (n + 1) / 2;
        return (ipow64(q, m) - 1) * (ipow64(q, m - 1) + 1) / (q - 1);
    }
    case QuadricKind::Elliptic: {
        if (n % 2 == 0)
            throw GeometryError("elliptic quadrics live in odd dimension");
        const unsigned m = (n + 1) / 2;
        return (ipow64(q, m) + 1) * (ipow64(q, m - 1) - 1) / (q - 1);
    }
    }
    return 0;
}

QuadraticForm::QuadraticForm(const GaloisField & f, Rows coeffs, QuadricKind kind) :
    coeffs_(std::move(coeffs)), kind_(kind)
{
    const std::size_t n = coeffs_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (coeffs_[i].size() != n)
            throw GeometryError("quadratic form coefficients are not square");
        for (std::size_t j = 0; j < i; ++j)
            if (coeffs_[i][j] != 0)
                throw GeometryError("quadratic form coefficients must be upper triangular");
    }
    polar_.assign(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            if (i == j)
                polar_[i][i] = f.add(coeffs_[i][i], coeffs_[i][i]);
            else {
                polar_[i][j] = coeffs_[i][j];
                polar_[j][i] = coeffs_[i][j];
            }
        }
    const unsigned amb = unsigned(n) - 1;
    if (!singular_radical(f, Subspace::whole(f, amb)).is_empty())
        throw GeometryError("quadratic form is degenerate");
    if (ipow64(f.q(), unsigned(n)) <= kDenseLimit) {
        ProjectiveSpace space(amb, GaloisField::make(f.p(), f.e()));
        std::uint64_t count = 0;
        for (const auto & p : space.points())
            count += eval(f, p) == 0;
        if (count != quadric_point_count(kind, amb, f.q()))
            throw GeometryError("quadratic form is not of the declared kind " + to_string(kind));
    }
}

QuadraticForm QuadraticForm::parabolic6(const GaloisField & f)
{
    Rows c(7, Vec(7, 0));
    c[0][4] = 1;
    c[1][5] = 1;
    c[2][6] = 1;
    c[3][3] = f.neg(1);
    return QuadraticForm(f, std::move(c), QuadricKind::Parabolic);
}

Elem QuadraticForm::eval(const GaloisField & f, const Vec & x) const
{
    Elem s = 0;
    const std::size_t n = coeffs_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0)
            continue;
        Elem row = 0;
        for (std::size_t j = i; j < n; ++j)
            if (coeffs_[i][j] != 0)
                row = f.add(row, f.mul(coeffs_[i][j], x[j]));
        s = f.add(s, f.mul(x[i], row));
    }
    return s;
}

Elem QuadraticForm::polar(const GaloisField & f, const Vec & x, const Vec & y) const
{
    return dot(f, x, mat_vec(f, polar_, y));
}

Subspace QuadraticForm::polar_radical(const GaloisField & f) const
{
    return Subspace::from_rows(f, ambient(), null_space(f, polar_, polar_.size()));
}

Subspace QuadraticForm::singular_radical(const GaloisField & f, const Subspace & s) const
{
    const Rows & b = s.basis();
    const std::size_t k = b.size();
    Rows g(k, Vec(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            g[i][j] = polar(f, b[i], b[j]);
    Rows local = null_space(f, g, k);
    Rows rad;
    for (const auto & c : local) {
        Vec v(ambient() + 1, 0);
        for (std::size_t i = 0; i < k; ++i)
            if (c[i] != 0)
                v = axpy(f, v, c[i], b[i]);
        rad.push_back(std::move(v));
    }
    const auto radical = Subspace::from_rows(f, ambient(), std::move(rad));
    // Q restricted to the polar radical is semilinear, so its zeros form a subspace.
    std::vector<Vec> singular;
    for (auto & p : radical.points(f))
        if (eval(f, p) == 0)
            singular.push_back(std::move(p));
    return Subspace::from_rows(f, ambient(), std::move(singular));
}

std::vector<Vec> QuadraticForm::points_in(const GaloisField & f, const Subspace & s) const
{
    std::vector<Vec> out;
    for (auto & p : s.points(f))
        if (eval(f, p) == 0)
            out.push_back(std::move(p));
    return out;
}

Subspace perp(const GaloisField & f, const Rows & gram, const Subspace & s)
{
    const std::size_t n = gram.size();
    if (s.ambient() + 1 != n)
        throw GeometryError("mixed ambient dimensions");
    Rows rows;
    for (const auto & r : s.basis()) {
        Vec row(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            Elem acc = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (r[k] != 0)
                    acc = f.add(acc, f.mul(r[k], gram[k][j]));
            row[j] = acc;
        }
        rows.push_back(std::move(row));
    }
    return Subspace::from_rows(f, s.ambient(), null_space(f, std::move(rows), n));
}

Subspace perp(const GaloisField & f, const SymplecticForm & form, const Subspace & s)
{
    return perp(f, form.gram(), s);
}

Subspace perp(const GaloisField & f, const QuadraticForm & form, const Subspace & s)
{
    return perp(f, form.polar_gram(), s);
}

std::string to_string(SectionTag t)
{
    switch (t) {
    case SectionTag::NondegenerateParabolic: return "nondegenerate-parabolic";
    case SectionTag::NondegenerateHyperbolic: return "nondegenerate-hyperbolic";
    case SectionTag::NondegenerateElliptic: return "nondegenerate-elliptic";
    case SectionTag::ConePoint: return "cone-point-over-Q";
    case SectionTag::ConeLine: return "cone-line-over-Q";
    case SectionTag::TotallySingular: return "totally-singular";
    case SectionTag::OtherDegenerate: return "other-degenerate";
    }
    return "?";
}

QuadricSection classify_section(const GaloisField & f, const QuadraticForm & q6, const Subspace & s)
{
    if (s.dim() != 4)
        throw GeometryError("classify_section expects a 4-space, got dimension " + std::to_string(s.dim()));
    if (s.ambient() != q6.ambient())
        throw GeometryError("mixed ambient dimensions");

    const unsigned q = f.q();
    QuadricSection out;
    out.point_count = q6.points_in(f, s).size();
    const Subspace rad = q6.singular_radical(f, s);
    const int r = rad.dim() + 1;

    // Complement of the radical inside s; Q restricted to it is the base quadric.
    Rows comp_rows = rad.basis();
    Rows extra;
    for (const auto & row : s.basis()) {
        Rows trial = comp_rows;
        trial.push_back(row);
        if (rank(f, trial) > comp_rows.size()) {
            comp_rows.push_back(row);
            extra.push_back(row);
        }
    }
    const Subspace complement = Subspace::from_rows(f, s.ambient(), std::move(extra));
    const std::size_t base_points = q6.points_in(f, complement).size();

    switch (r) {
    case 0:
        out.tag = SectionTag::NondegenerateParabolic;
        break;
    case 1:
        out.vertex = rad;
        if (base_points == std::size_t(q + 1) * (q + 1)) {
            out.tag = SectionTag::ConePoint;
            out.base = QuadricKind::Hyperbolic;
        }
        else if (base_points == std::size_t(q) * q + 1) {
            out.tag = SectionTag::ConePoint;
            out.base = QuadricKind::Elliptic;
        }
        else {
            out.tag = SectionTag::OtherDegenerate;
        }
        break;
    case 2:
        out.vertex = rad;
        if (base_points == q + 1) {
            out.tag = SectionTag::ConeLine;
            out.base = QuadricKind::Parabolic;
        }
        else {
            out.tag = SectionTag::OtherDegenerate;
        }
        break;
    case 5:
        out.tag = SectionTag::TotallySingular;
        break;
    default:
        out.tag = SectionTag::OtherDegenerate;
        break;
    }
    if (out.tag == SectionTag::OtherDegenerate || out.tag == SectionTag::TotallySingular)
        out.vertex.reset();
    return out;
}

std::size_t plucker_index(unsigned n, unsigned i, unsigned j)
{
    if (i >= j || j > n)
        throw GeometryError("plucker index needs i < j <= n");
    std::size_t idx = 0;
    for (unsigned a = 0; a < i; ++a)
        idx += n - a;
    return idx + (j - i - 1);
}

Vec plucker(const GaloisField & f, const Subspace & line)
{
    if (line.dim() != 1)
        throw GeometryError("plucker coordinates need a line, got dimension " + std::to_string(line.dim()));
    const Vec & x = line.basis()[0];
    const Vec & y = line.basis()[1];
    const unsigned n = line.ambient();
    Vec p;
    p.reserve((n + 1) * n / 2);
    for (unsigned i = 0; i <= n; ++i)
        for (unsigned j = i + 1; j <= n; ++j)
            p.push_back(f.sub(f.mul(x[i], y[j]), f.mul(x[j], y[i])));
    return normalize(f, std::move(p));
}

} // namespace polyforge
