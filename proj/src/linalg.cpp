#include "homlie/linalg.hpp"

#include <algorithm>

namespace homlie {

namespace {

void require_same_field(const FieldSpec& a, const FieldSpec& b, const char* what) {
    if (a != b) {
        throw FieldMismatch(std::string(what) + ": " + a.str() + " vs " + b.str());
    }
}

std::size_t first_nonzero(const Vector& v) {
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (!v.at(i).is_zero()) return i;
    }
    return v.dim();
}

} // namespace

Vector::Vector(FieldSpec field, std::size_t dim)
    : field_(field), coords_(dim, Scalar::zero(field)) {}

Vector::Vector(FieldSpec field, std::vector<Scalar> coords)
    : field_(field), coords_(std::move(coords)) {
    for (const Scalar& c : coords_) {
        require_same_field(field_, c.field(), "vector coordinate");
    }
}

Vector Vector::unit(const FieldSpec& field, std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw DimensionMismatch("unit vector index " + std::to_string(index) +
                                " out of range for dimension " + std::to_string(dim));
    }
    Vector v(field, dim);
    v.set(index, Scalar::one(field));
    return v;
}

const Scalar& Vector::at(std::size_t i) const {
    if (i >= coords_.size()) {
        throw DimensionMismatch("vector index out of range");
    }
    return coords_[i];
}

void Vector::set(std::size_t i, Scalar value) {
    if (i >= coords_.size()) {
        throw DimensionMismatch("vector index out of range");
    }
    require_same_field(field_, value.field(), "vector coordinate");
    coords_[i] = std::move(value);
}

bool Vector::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Scalar& c) { return c.is_zero(); });
}

Vector Vector::operator+(const Vector& rhs) const {
    require_same_field(field_, rhs.field_, "vector addition");
    if (dim() != rhs.dim()) {
        throw DimensionMismatch("vector addition: dimensions differ");
    }
    Vector out(field_, dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        out.coords_[i] = coords_[i] + rhs.coords_[i];
    }
    return out;
}

Vector Vector::operator-(const Vector& rhs) const {
    return *this + rhs.scaled(-Scalar::one(field_));
}

Vector Vector::scaled(const Scalar& c) const {
    require_same_field(field_, c.field(), "vector scaling");
    Vector out(field_, dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        out.coords_[i] = coords_[i] * c;
    }
    return out;
}

bool Vector::operator==(const Vector& rhs) const {
    return field_ == rhs.field_ && coords_ == rhs.coords_;
}

std::string Vector::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) out += ", ";
        out += coords_[i].str();
    }
    out += ")";
    return out;
}

Matrix::Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::identity(const FieldSpec& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i, Scalar::one(field));
    }
    return m;
}

const Scalar& Matrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) {
        throw DimensionMismatch("matrix index out of range");
    }
    return data_[r * cols_ + c];
}

void Matrix::set(std::size_t r, std::size_t c, Scalar value) {
    if (r >= rows_ || c >= cols_) {
        throw DimensionMismatch("matrix index out of range");
    }
    require_same_field(field_, value.field(), "matrix entry");
    data_[r * cols_ + c] = std::move(value);
}

Vector Matrix::column(std::size_t j) const {
    if (j >= cols_) {
        throw DimensionMismatch("matrix column out of range");
    }
    Vector v(field_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        v.set(r, at(r, j));
    }
    return v;
}

Vector Matrix::apply(const Vector& v) const {
    require_same_field(field_, v.field(), "matrix application");
    if (v.dim() != cols_) {
        throw DimensionMismatch("matrix application: expected dimension " +
                                std::to_string(cols_) + ", got " + std::to_string(v.dim()));
    }
    Vector out(field_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Scalar acc = Scalar::zero(field_);
        for (std::size_t c = 0; c < cols_; ++c) {
            acc = acc + at(r, c) * v.at(c);
        }
        out.set(r, acc);
    }
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    require_same_field(field_, rhs.field_, "matrix product");
    if (cols_ != rhs.rows_) {
        throw DimensionMismatch("matrix product: inner dimensions differ");
    }
    Matrix out(field_, rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < rhs.cols_; ++c) {
            Scalar acc = Scalar::zero(field_);
            for (std::size_t k = 0; k < cols_; ++k) {
                acc = acc + at(r, k) * rhs.at(k, c);
            }
            out.set(r, c, acc);
        }
    }
    return out;
}

bool Matrix::operator==(const Matrix& rhs) const {
    return field_ == rhs.field_ && rows_ == rhs.rows_ && cols_ == rhs.cols_ &&
           data_ == rhs.data_;
}

Matrix Matrix::block_diagonal(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) {
        throw EmptyList("block_diagonal of no blocks");
    }
    const FieldSpec field = blocks.front().field();
    std::size_t total = 0;
    for (const Matrix& b : blocks) {
        require_same_field(field, b.field(), "block_diagonal");
        if (b.rows() != b.cols()) {
            throw DimensionMismatch("block_diagonal expects square blocks");
        }
        total += b.rows();
    }
    Matrix out(field, total, total);
    std::size_t off = 0;
    for (const Matrix& b : blocks) {
        for (std::size_t r = 0; r < b.rows(); ++r) {
            for (std::size_t c = 0; c < b.cols(); ++c) {
                out.set(off + r, off + c, b.at(r, c));
            }
        }
        off += b.rows();
    }
    return out;
}

std::vector<Vector> rref(std::vector<Vector> rows) {
    if (rows.empty()) return rows;
    const std::size_t n = rows.front().dim();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < n && pivot_row < rows.size(); ++col) {
        std::size_t candidate = pivot_row;
        while (candidate < rows.size() && rows[candidate].at(col).is_zero()) {
            ++candidate;
        }
        if (candidate == rows.size()) continue;
        std::swap(rows[pivot_row], rows[candidate]);
        Scalar inv = rows[pivot_row].at(col).inverse();
        rows[pivot_row] = rows[pivot_row].scaled(inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row) continue;
            const Scalar& factor = rows[r].at(col);
            if (factor.is_zero()) continue;
            rows[r] = rows[r] - rows[pivot_row].scaled(factor);
        }
        ++pivot_row;
    }
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const Vector& v) { return v.is_zero(); }),
               rows.end());
    return rows;
}

Subspace::Subspace(FieldSpec field, std::size_t ambient, std::vector<Vector> rref_rows)
    : field_(field), ambient_(ambient), rows_(std::move(rref_rows)) {
    pivots_.reserve(rows_.size());
    for (const Vector& r : rows_) {
        pivots_.push_back(first_nonzero(r));
    }
}

Subspace Subspace::zero(const FieldSpec& field, std::size_t ambient_dim) {
    return Subspace(field, ambient_dim, {});
}

Subspace Subspace::full(const FieldSpec& field, std::size_t ambient_dim) {
    std::vector<Vector> rows;
    rows.reserve(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) {
        rows.push_back(Vector::unit(field, ambient_dim, i));
    }
    return Subspace(field, ambient_dim, std::move(rows));
}

bool Subspace::operator==(const Subspace& rhs) const {
    return field_ == rhs.field_ && ambient_ == rhs.ambient_ && rows_ == rhs.rows_;
}

Subspace span(const std::vector<Vector>& generators, const FieldSpec& field,
              std::size_t ambient_dim) {
    for (const Vector& g : generators) {
        require_same_field(field, g.field(), "span generator");
        if (g.dim() != ambient_dim) {
            throw DimensionMismatch("span generator has dimension " + std::to_string(g.dim()) +
                                    ", expected " + std::to_string(ambient_dim));
        }
    }
    return Subspace(field, ambient_dim, rref(generators));
}

bool contains(const Subspace& space, const Vector& v) {
    require_same_field(space.field(), v.field(), "membership test");
    if (v.dim() != space.ambient_dim()) {
        throw DimensionMismatch("membership test: dimensions differ");
    }
    Vector rem = v;
    const auto& rows = space.basis();
    const auto& pivots = space.pivots();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Scalar& c = rem.at(pivots[r]);
        if (!c.is_zero()) {
            rem = rem - rows[r].scaled(c);
        }
    }
    return rem.is_zero();
}

bool subspace_leq(const Subspace& inner, const Subspace& outer) {
    require_same_field(inner.field(), outer.field(), "subspace comparison");
    if (inner.ambient_dim() != outer.ambient_dim()) {
        throw DimensionMismatch("subspace comparison: ambient dimensions differ");
    }
    for (const Vector& b : inner.basis()) {
        if (!contains(outer, b)) return false;
    }
    return true;
}

Subspace sum_subspaces(const Subspace& a, const Subspace& b) {
    require_same_field(a.field(), b.field(), "subspace sum");
    if (a.ambient_dim() != b.ambient_dim()) {
        throw DimensionMismatch("subspace sum: ambient dimensions differ");
    }
    std::vector<Vector> gens = a.basis();
    gens.insert(gens.end(), b.basis().begin(), b.basis().end());
    return span(gens, a.field(), a.ambient_dim());
}

Subspace image(const Matrix& map, const Subspace& source) {
    require_same_field(map.field(), source.field(), "image");
    if (map.cols() != source.ambient_dim()) {
        throw DimensionMismatch("image: matrix domain does not match subspace");
    }
    std::vector<Vector> gens;
    gens.reserve(source.rank());
    for (const Vector& b : source.basis()) {
        gens.push_back(map.apply(b));
    }
    return span(gens, map.field(), map.rows());
}

Subspace kernel(const Matrix& map) {
    const FieldSpec field = map.field();
    const std::size_t n = map.cols();
    std::vector<Vector> rows;
    rows.reserve(map.rows());
    for (std::size_t r = 0; r < map.rows(); ++r) {
        Vector row(field, n);
        for (std::size_t c = 0; c < n; ++c) {
            row.set(c, map.at(r, c));
        }
        rows.push_back(std::move(row));
    }
    rows = rref(std::move(rows));
    std::vector<std::size_t> pivot_cols;
    pivot_cols.reserve(rows.size());
    for (const Vector& r : rows) {
        pivot_cols.push_back(first_nonzero(r));
    }
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivot_cols) is_pivot[c] = true;

    std::vector<Vector> basis;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        Vector v(field, n);
        v.set(free_col, Scalar::one(field));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            v.set(pivot_cols[r], -rows[r].at(free_col));
        }
        basis.push_back(std::move(v));
    }
    return span(basis, field, n);
}

Subspace preimage(const Matrix& map, const Subspace& target) {
    require_same_field(map.field(), target.field(), "preimage");
    if (map.rows() != target.ambient_dim()) {
        throw DimensionMismatch("preimage: matrix codomain does not match subspace");
    }
    // Constraint rows: functionals vanishing on the target. In RREF terms they
    // read off the non-pivot coordinates after reduction, which is exactly the
    // kernel of the transpose construction below.
    const FieldSpec field = map.field();
    const std::size_t m = target.ambient_dim();
    // Build the matrix whose kernel is `target`: rows = basis of the
    // annihilator. For each free column f: x_f - sum_r basis_r[f] * x_{pivot_r} = 0.
    const auto& rows = target.basis();
    const auto& pivots = target.pivots();
    std::vector<bool> is_pivot(m, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<Vector> constraints;
    for (std::size_t f = 0; f < m; ++f) {
        if (is_pivot[f]) continue;
        Vector c(field, m);
        c.set(f, Scalar::one(field));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            c.set(pivots[r], -rows[r].at(f));
        }
        constraints.push_back(std::move(c));
    }
    Matrix constraint_matrix(field, constraints.size(), m);
    for (std::size_t r = 0; r < constraints.size(); ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            constraint_matrix.set(r, c, constraints[r].at(c));
        }
    }
    return kernel(constraint_matrix * map);
}

Subspace direct_sum_subspaces(const std::vector<Subspace>& parts) {
    if (parts.empty()) {
        throw EmptyList("direct sum of no subspaces");
    }
    const FieldSpec field = parts.front().field();
    std::size_t total = 0;
    for (const Subspace& s : parts) {
        require_same_field(field, s.field(), "subspace direct sum");
        total += s.ambient_dim();
    }
    // Block-stacked rows stay in RREF: pivots advance across components and
    // foreign components contribute only zeros above each pivot.
    std::vector<Vector> rows;
    std::size_t off = 0;
    for (const Subspace& s : parts) {
        for (const Vector& b : s.basis()) {
            Vector v(field, total);
            for (std::size_t i = 0; i < b.dim(); ++i) {
                v.set(off + i, b.at(i));
            }
            rows.push_back(std::move(v));
        }
        off += s.ambient_dim();
    }
    return Subspace(field, total, std::move(rows));
}

std::uint64_t point_count(const Subspace& space, std::uint64_t cap) {
    if (!space.field().is_prime_field()) {
        throw UnsupportedField("point enumeration requires a prime field");
    }
    const std::uint64_t p = space.field().p;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < space.rank(); ++i) {
        if (count > cap / p) {
            throw CapExceeded("subspace has more than " + std::to_string(cap) + " points");
        }
        count *= p;
    }
    if (count > cap) {
        throw CapExceeded("subspace has more than " + std::to_string(cap) + " points");
    }
    return count;
}

VectorEnumerator::VectorEnumerator(const Subspace& space, std::uint64_t cap)
    : space_(space), count_(point_count(space, cap)), emitted_(0),
      digits_(space.rank(), 0) {}

Vector VectorEnumerator::next() {
    if (done()) {
        throw Error("enumeration past the end");
    }
    Vector out(space_.field(), space_.ambient_dim());
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (digits_[i] == 0) continue;
        Scalar c = Scalar::of_integer(space_.field(), digits_[i]);
        out = out + space_.basis()[i].scaled(c);
    }
    ++emitted_;
    // odometer increment, last coefficient least significant
    const std::uint32_t p = space_.field().p;
    for (std::size_t i = digits_.size(); i-- > 0;) {
        if (++digits_[i] < p) break;
        digits_[i] = 0;
    }
    return out;
}

std::vector<Vector> enumerate_vectors(const Subspace& space, std::uint64_t cap) {
    VectorEnumerator it(space, cap);
    std::vector<Vector> out;
    out.reserve(it.count());
    while (!it.done()) {
        out.push_back(it.next());
    }
    return out;
}

std::uint64_t vector_rank(const Vector& v) {
    if (!v.field().is_prime_field()) {
        throw UnsupportedField("vector_rank requires a prime field");
    }
    const std::uint64_t p = v.field().p;
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        rank = rank * p + v.at(i).residue();
    }
    return rank;
}

Vector vector_unrank(const FieldSpec& field, std::size_t dim, std::uint64_t rank) {
    if (!field.is_prime_field()) {
        throw UnsupportedField("vector_unrank requires a prime field");
    }
    const std::uint64_t p = field.p;
    Vector v(field, dim);
    for (std::size_t i = dim; i-- > 0;) {
        v.set(i, Scalar::of_integer(field, static_cast<long long>(rank % p)));
        rank /= p;
    }
    return v;
}

} // namespace homlie
