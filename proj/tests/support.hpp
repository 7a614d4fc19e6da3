#pragma once

#include <random>

#include "homlie/fuzzy.hpp"

namespace homlie::testing {

/// Three-dimensional algebra with [e1,e3] = e1 and nilpotent twist
/// e1 -> e2, e2 -> 0, e3 -> 0. Every bracket lands in span{e1} and every
/// twist image in span{e2}, so the twisted Jacobi identity holds over any
/// field.
inline HomLieAlgebra example_algebra(const FieldSpec& field) {
    HomLieAlgebra::StructureTable table;
    table.emplace(std::make_pair<std::size_t, std::size_t>(0, 2),
                  Vector::unit(field, 3, 0));
    Matrix twist(field, 3, 3);
    twist.set(1, 0, Scalar::one(field));
    return HomLieAlgebra(field, 3, std::move(table), std::move(twist), "nil-twist-3d");
}

/// Membership 4/5 at zero, 2/5 on the rest of span{e1,e2}, 1/10 elsewhere.
/// Built with an explicit full-space tail to exercise the baseline folding.
inline FuzzyFlag example_flag(const FieldSpec& field) {
    std::vector<FuzzyFlag::Entry> chain;
    chain.push_back({Subspace::zero(field, 3), Level(Rational(4, 5))});
    chain.push_back({span({Vector::unit(field, 3, 0), Vector::unit(field, 3, 1)}, field, 3),
                     Level(Rational(2, 5))});
    chain.push_back({Subspace::full(field, 3), Level(Rational(1, 10))});
    return FuzzyFlag(field, 3, std::move(chain), Level(Rational(1, 10)));
}

/// Identity twist with [e1,e2] = e3, [e2,e3] = e1, [e1,e3] = e1: the Jacobi
/// sum on (e1,e2,e3) is e3, so the axioms fail exactly there.
inline HomLieAlgebra broken_jacobi_algebra(const FieldSpec& field) {
    HomLieAlgebra::StructureTable table;
    table.emplace(std::make_pair<std::size_t, std::size_t>(0, 1),
                  Vector::unit(field, 3, 2));
    table.emplace(std::make_pair<std::size_t, std::size_t>(1, 2),
                  Vector::unit(field, 3, 0));
    table.emplace(std::make_pair<std::size_t, std::size_t>(0, 2),
                  Vector::unit(field, 3, 0));
    return HomLieAlgebra(field, 3, std::move(table), Matrix::identity(field, 3), "broken");
}

/// Twisted Jacobi sum evaluated directly from the generic bracket and the
/// twist matrix; the reference the triple-scan in check_axioms is compared
/// against.
inline Vector naive_jacobi(const HomLieAlgebra& algebra, const Vector& x, const Vector& y,
                           const Vector& z) {
    const Matrix& a = algebra.twist();
    return bracket(algebra, a.apply(x), bracket(algebra, y, z)) +
           bracket(algebra, a.apply(y), bracket(algebra, z, x)) +
           bracket(algebra, a.apply(z), bracket(algebra, x, y));
}

/// Deterministic generator for property tests.
struct TestRng {
    explicit TestRng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t below(std::uint64_t n) { return eng() % n; }

    Scalar scalar(const FieldSpec& field) {
        if (field.is_prime_field()) {
            return Scalar::of_integer(field, static_cast<long long>(below(field.p)));
        }
        long num = static_cast<long>(below(21)) - 10;
        long den = static_cast<long>(below(9)) + 1;
        return Scalar::of_rational(Rational(num, den));
    }

    Vector vec(const FieldSpec& field, std::size_t dim) {
        Vector v(field, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            v.set(i, scalar(field));
        }
        return v;
    }

    std::mt19937_64 eng;
};

} // namespace homlie::testing
