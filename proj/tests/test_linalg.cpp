#include "doctest.h"

#include <algorithm>

#include "homlie/linalg.hpp"
#include "support.hpp"

using namespace homlie;
using homlie::testing::TestRng;

namespace {

Vector vec_q(std::initializer_list<long> entries) {
    FieldSpec q = FieldSpec::rationals();
    std::vector<Scalar> coords;
    for (long e : entries) coords.push_back(Scalar::of_integer(q, e));
    return Vector(q, std::move(coords));
}

Vector vec_gf(const FieldSpec& field, std::initializer_list<long> entries) {
    std::vector<Scalar> coords;
    for (long e : entries) coords.push_back(Scalar::of_integer(field, e));
    return Vector(field, std::move(coords));
}

/// Twist of the shared example algebra: e1 -> e2, e2 -> 0, e3 -> 0.
Matrix example_twist(const FieldSpec& field) {
    Matrix a(field, 3, 3);
    a.set(1, 0, Scalar::one(field));
    return a;
}

} // namespace

TEST_CASE("vector basics") {
    FieldSpec q = FieldSpec::rationals();
    Vector zero(q, 3);
    CHECK(zero.is_zero());
    CHECK(zero.dim() == 3);
    Vector e2 = Vector::unit(q, 3, 1);
    CHECK(e2.at(1).is_one());
    CHECK_FALSE(e2.is_zero());
    CHECK((e2 + e2).at(1) == Scalar::of_integer(q, 2));
    CHECK((e2 - e2).is_zero());
    CHECK(e2.scaled(Scalar::of_integer(q, -3)).at(1) == Scalar::of_integer(q, -3));
    Vector v = vec_q({1, 0, -2});
    CHECK(v.str() == "(1, 0, -2)");
    Vector half(q, {Scalar::parse(q, "1/2"), Scalar::zero(q), Scalar::zero(q)});
    CHECK(half.str() == "(1/2, 0, 0)");
    CHECK_THROWS_AS(Vector::unit(q, 3, 3), DimensionMismatch);
    CHECK_THROWS_AS(v.at(3), DimensionMismatch);
    CHECK_THROWS_AS(v + Vector(q, 2), DimensionMismatch);
}

TEST_CASE("matrix application and product") {
    FieldSpec q = FieldSpec::rationals();
    Matrix a = example_twist(q);
    CHECK(a.apply(Vector::unit(q, 3, 0)) == Vector::unit(q, 3, 1));
    CHECK(a.apply(Vector::unit(q, 3, 1)).is_zero());
    CHECK(a.column(0) == Vector::unit(q, 3, 1));
    CHECK((a * a).apply(Vector::unit(q, 3, 0)).is_zero()); // nilpotent of order 2
    Matrix id = Matrix::identity(q, 3);
    CHECK(id * a == a);
    CHECK(a * id == a);
    CHECK_THROWS_AS(a.apply(Vector(q, 2)), DimensionMismatch);
    CHECK_THROWS_AS(a * Matrix(q, 2, 2), DimensionMismatch);
}

TEST_CASE("block diagonal stacking") {
    FieldSpec q = FieldSpec::rationals();
    Matrix a = example_twist(q);
    Matrix b = Matrix::identity(q, 2);
    Matrix s = Matrix::block_diagonal({a, b});
    CHECK(s.rows() == 5);
    CHECK(s.apply(Vector::unit(q, 5, 0)) == Vector::unit(q, 5, 1));
    CHECK(s.apply(Vector::unit(q, 5, 3)) == Vector::unit(q, 5, 3));
    CHECK(s.at(3, 0).is_zero());
    CHECK_THROWS_AS(Matrix::block_diagonal({}), EmptyList);
    CHECK_THROWS_AS(Matrix::block_diagonal({Matrix(q, 2, 3)}), DimensionMismatch);
}

TEST_CASE("span canonicalizes to a unique representation") {
    FieldSpec q = FieldSpec::rationals();
    Subspace s1 = span({vec_q({2, 4, 0}), vec_q({1, 2, 0})}, q, 3);
    CHECK(s1.rank() == 1);
    CHECK(s1.basis()[0] == vec_q({1, 2, 0}));
    CHECK(s1.pivots() == std::vector<std::size_t>{0});

    Subspace s2 = span({vec_q({1, 2, 0}), vec_q({3, 6, 0})}, q, 3);
    CHECK(s1 == s2);

    Subspace zero = span({Vector(q, 3)}, q, 3);
    CHECK(zero == Subspace::zero(q, 3));
    CHECK(zero.is_zero());
    CHECK(span({}, q, 3) == Subspace::zero(q, 3));

    Subspace full = span({vec_q({1, 1, 0}), vec_q({0, 1, 1}), vec_q({1, 0, 0})}, q, 3);
    CHECK(full == Subspace::full(q, 3));
}

TEST_CASE("rref eliminates above and below pivots") {
    FieldSpec q = FieldSpec::rationals();
    auto rows = rref({vec_q({2, 2, 2}), vec_q({0, 3, 3}), vec_q({0, 0, 0})});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == vec_q({1, 0, 0}));
    CHECK(rows[1] == vec_q({0, 1, 1}));
}

TEST_CASE("canonical form is invariant under random row operations") {
    for (FieldSpec field : {FieldSpec::rationals(), FieldSpec::gf(3), FieldSpec::gf(5)}) {
        TestRng rng(42);
        for (int iter = 0; iter < 40; ++iter) {
            std::size_t dim = 1 + rng.below(4);
            std::vector<Vector> gens;
            std::size_t ngen = 1 + rng.below(4);
            for (std::size_t g = 0; g < ngen; ++g) gens.push_back(rng.vec(field, dim));
            Subspace base = span(gens, field, dim);
            CHECK(base.rank() <= std::min(ngen, dim));
            for (const Vector& g : gens) CHECK(contains(base, g));

            // elementary operations: add a multiple of another generator,
            // scale by a nonzero scalar, reorder, append zero
            std::vector<Vector> mixed = gens;
            if (mixed.size() >= 2) {
                std::size_t i = rng.below(mixed.size());
                std::size_t j = rng.below(mixed.size() - 1);
                if (j >= i) ++j;
                mixed[i] = mixed[i] + mixed[j].scaled(rng.scalar(field));
            }
            Scalar c = rng.scalar(field);
            if (c.is_zero()) c = Scalar::one(field);
            std::size_t k = rng.below(mixed.size());
            mixed[k] = mixed[k].scaled(c);
            std::reverse(mixed.begin(), mixed.end());
            mixed.push_back(Vector(field, dim));
            CHECK(span(mixed, field, dim) == base);
        }
    }
}

TEST_CASE("containment and ordering") {
    FieldSpec q = FieldSpec::rationals();
    Subspace line = span({vec_q({1, 2, 0})}, q, 3);
    Subspace plane = span({vec_q({1, 0, 0}), vec_q({0, 1, 0})}, q, 3);
    CHECK(contains(plane, vec_q({1, 2, 0})));
    CHECK_FALSE(contains(line, vec_q({1, 0, 0})));
    CHECK(subspace_leq(line, plane));
    CHECK_FALSE(subspace_leq(plane, line));
    CHECK(subspace_leq(Subspace::zero(q, 3), line));
    CHECK(sum_subspaces(line, plane) == plane);
    CHECK(sum_subspaces(line, span({vec_q({0, 0, 1})}, q, 3)).rank() == 2);
    CHECK_THROWS_AS(contains(line, Vector(q, 2)), DimensionMismatch);
}

TEST_CASE("image, preimage and kernel of the example twist") {
    FieldSpec q = FieldSpec::rationals();
    Matrix a = example_twist(q);
    CHECK(image(a, Subspace::full(q, 3)) == span({vec_q({0, 1, 0})}, q, 3));
    CHECK(preimage(a, Subspace::zero(q, 3)) ==
          span({vec_q({0, 1, 0}), vec_q({0, 0, 1})}, q, 3));
    CHECK(kernel(a) == preimage(a, Subspace::zero(q, 3)));
    CHECK(image(a, Subspace::zero(q, 3)).is_zero());
    CHECK(preimage(a, Subspace::full(q, 3)).is_full());
    CHECK(kernel(Matrix::identity(q, 3)).is_zero());
}

TEST_CASE("preimage membership matches pointwise over a finite field") {
    FieldSpec g3 = FieldSpec::gf(3);
    TestRng rng(7);
    for (int iter = 0; iter < 25; ++iter) {
        Matrix m(g3, 2, 2);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) m.set(r, c, rng.scalar(g3));
        Subspace w = span({rng.vec(g3, 2)}, g3, 2);
        Subspace pre = preimage(m, w);
        for (const Vector& v : enumerate_vectors(Subspace::full(g3, 2))) {
            CHECK(contains(pre, v) == contains(w, m.apply(v)));
        }
        // adjunction side
        CHECK(subspace_leq(image(m, pre), w));
    }
}

TEST_CASE("direct sums of subspaces concatenate coordinates") {
    FieldSpec q = FieldSpec::rationals();
    Subspace line = span({vec_q({1, 2, 0})}, q, 3);
    Subspace plane = span({vec_q({1, 0}), vec_q({0, 1})}, q, 2);
    Subspace s = direct_sum_subspaces({line, plane});
    CHECK(s.ambient_dim() == 5);
    CHECK(s.rank() == 3);
    CHECK(contains(s, vec_q({2, 4, 0, 1, -1})));
    CHECK_FALSE(contains(s, vec_q({0, 0, 1, 0, 0})));
    CHECK_THROWS_AS(direct_sum_subspaces({}), EmptyList);
}

TEST_CASE("point counting respects the cap") {
    FieldSpec g2 = FieldSpec::gf(2);
    CHECK(point_count(Subspace::zero(g2, 4)) == 1);
    CHECK(point_count(Subspace::full(g2, 4)) == 16);
    CHECK(point_count(Subspace::full(FieldSpec::gf(5), 3)) == 125);
    CHECK_THROWS_AS(point_count(Subspace::full(g2, 21)), CapExceeded); // 2^21 > 10^6
    CHECK_THROWS_AS(point_count(Subspace::full(FieldSpec::rationals(), 2)), UnsupportedField);
}

TEST_CASE("enumeration order is lexicographic in the basis coefficients") {
    FieldSpec g3 = FieldSpec::gf(3);
    Subspace diag = span({vec_gf(g3, {1, 1})}, g3, 2);
    auto pts = enumerate_vectors(diag);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == vec_gf(g3, {0, 0}));
    CHECK(pts[1] == vec_gf(g3, {1, 1}));
    CHECK(pts[2] == vec_gf(g3, {2, 2}));

    FieldSpec g2 = FieldSpec::gf(2);
    auto all = enumerate_vectors(Subspace::full(g2, 2));
    REQUIRE(all.size() == 4);
    CHECK(all[0] == vec_gf(g2, {0, 0}));
    CHECK(all[1] == vec_gf(g2, {0, 1}));
    CHECK(all[2] == vec_gf(g2, {1, 0}));
    CHECK(all[3] == vec_gf(g2, {1, 1}));

    auto zero_pts = enumerate_vectors(Subspace::zero(g3, 2));
    REQUIRE(zero_pts.size() == 1);
    CHECK(zero_pts[0].is_zero());
}

TEST_CASE("enumerator refuses to walk past the end") {
    FieldSpec g2 = FieldSpec::gf(2);
    VectorEnumerator it(Subspace::zero(g2, 1));
    CHECK(it.count() == 1);
    it.next();
    CHECK(it.done());
    CHECK_THROWS_AS(it.next(), Error);
    CHECK_THROWS_AS(enumerate_vectors(Subspace::full(FieldSpec::rationals(), 1)),
                    UnsupportedField);
}

TEST_CASE("rank and unrank invert each other") {
    FieldSpec g5 = FieldSpec::gf(5);
    for (std::uint64_t r = 0; r < 125; ++r) {
        Vector v = vector_unrank(g5, 3, r);
        CHECK(vector_rank(v) == r);
    }
    CHECK(vector_rank(vec_gf(g5, {1, 0, 0})) == 25); // first coordinate most significant
    CHECK(vector_rank(vec_gf(g5, {0, 0, 1})) == 1);
    CHECK_THROWS_AS(vector_rank(vec_q({1})), UnsupportedField);
}

TEST_CASE("enumeration agrees with rank order on full spaces") {
    FieldSpec g3 = FieldSpec::gf(3);
    auto pts = enumerate_vectors(Subspace::full(g3, 2));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(vector_rank(pts[i]) == i);
    }
}
