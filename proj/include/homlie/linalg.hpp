#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "homlie/field.hpp"

namespace homlie {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Dense coordinate vector over a fixed field. Dimension 0 is allowed.
class Vector {
public:
    Vector(FieldSpec field, std::size_t dim);
    Vector(FieldSpec field, std::vector<Scalar> coords);

    static Vector unit(const FieldSpec& field, std::size_t dim, std::size_t index);

    const FieldSpec& field() const { return field_; }
    std::size_t dim() const { return coords_.size(); }
    const Scalar& at(std::size_t i) const;
    void set(std::size_t i, Scalar value);
    const std::vector<Scalar>& coords() const { return coords_; }

    bool is_zero() const;
    Vector operator+(const Vector& rhs) const;
    Vector operator-(const Vector& rhs) const;
    Vector scaled(const Scalar& c) const;
    bool operator==(const Vector& rhs) const;
    bool operator!=(const Vector& rhs) const { return !(*this == rhs); }

    std::string str() const; // "(a, b, c)" with canonical scalar text

private:
    FieldSpec field_;
    std::vector<Scalar> coords_;
};

class Matrix {
public:
    Matrix(FieldSpec field, std::size_t rows, std::size_t cols); // zero-filled

    static Matrix identity(const FieldSpec& field, std::size_t n);

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Scalar& at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, Scalar value);

    /// Column j, i.e. the image of the j-th standard basis vector.
    Vector column(std::size_t j) const;
    Vector apply(const Vector& v) const;
    Matrix operator*(const Matrix& rhs) const;
    bool operator==(const Matrix& rhs) const;
    bool operator!=(const Matrix& rhs) const { return !(*this == rhs); }

    /// Stacks square blocks along the diagonal, zeros elsewhere.
    static Matrix block_diagonal(const std::vector<Matrix>& blocks);

private:
    FieldSpec field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Scalar> data_; // row-major
};

/// Linear subspace in canonical form: basis rows in reduced row-echelon
/// form, zero rows dropped. Equal subspaces have identical representations,
/// so operator== decides subspace equality.
class Subspace {
public:
    static Subspace zero(const FieldSpec& field, std::size_t ambient_dim);
    static Subspace full(const FieldSpec& field, std::size_t ambient_dim);

    const FieldSpec& field() const { return field_; }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t rank() const { return rows_.size(); }
    bool is_zero() const { return rows_.empty(); }
    bool is_full() const { return rows_.size() == ambient_; }
    const std::vector<Vector>& basis() const { return rows_; }
    /// Pivot column of each basis row, strictly increasing.
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool operator==(const Subspace& rhs) const;
    bool operator!=(const Subspace& rhs) const { return !(*this == rhs); }

private:
    Subspace(FieldSpec field, std::size_t ambient, std::vector<Vector> rref_rows);

    friend Subspace span(const std::vector<Vector>& generators, const FieldSpec& field,
                         std::size_t ambient_dim);
    friend Subspace direct_sum_subspaces(const std::vector<Subspace>& parts);

    FieldSpec field_;
    std::size_t ambient_;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
};

/// Reduces rows to RREF in place and drops zero rows. Helper shared by the
/// subspace constructors; exposed for tests.
std::vector<Vector> rref(std::vector<Vector> rows);

/// Span of the generators (which may be empty, hence the explicit field and
/// ambient dimension).
Subspace span(const std::vector<Vector>& generators, const FieldSpec& field,
              std::size_t ambient_dim);

bool contains(const Subspace& space, const Vector& v);
bool subspace_leq(const Subspace& inner, const Subspace& outer);
Subspace sum_subspaces(const Subspace& a, const Subspace& b);

/// Image of the restriction of the matrix to the subspace; lives in the
/// codomain (dimension = map.rows()).
Subspace image(const Matrix& map, const Subspace& source);
/// Full preimage of the subspace under the matrix; lives in the domain.
Subspace preimage(const Matrix& map, const Subspace& target);
Subspace kernel(const Matrix& map);

/// External direct sum with coordinates concatenated in input order.
Subspace direct_sum_subspaces(const std::vector<Subspace>& parts);

/// Number of points, p^rank; throws UnsupportedField over Q and CapExceeded
/// when the count overflows the cap.
std::uint64_t point_count(const Subspace& space, std::uint64_t cap = kDefaultEnumerationCap);

/// Streams every point of a GF(p) subspace exactly once: coefficient tuples
/// over the canonical basis in lexicographic order, first coefficient most
/// significant. The zero subspace yields exactly the zero vector.
class VectorEnumerator {
public:
    explicit VectorEnumerator(const Subspace& space, std::uint64_t cap = kDefaultEnumerationCap);

    std::uint64_t count() const { return count_; }
    bool done() const { return emitted_ == count_; }
    Vector next();

private:
    const Subspace& space_;
    std::uint64_t count_;
    std::uint64_t emitted_;
    std::vector<std::uint32_t> digits_;
};

/// Materialized enumeration in VectorEnumerator order.
std::vector<Vector> enumerate_vectors(const Subspace& space,
                                      std::uint64_t cap = kDefaultEnumerationCap);

/// Position of a GF(p) coordinate vector in the lexicographic enumeration of
/// the full space (coordinate 0 most significant); inverse below.
std::uint64_t vector_rank(const Vector& v);
Vector vector_unrank(const FieldSpec& field, std::size_t dim, std::uint64_t rank);

} // namespace homlie
