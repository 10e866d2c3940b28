#include "doctest.h"

#include <random>

#include "liegrad/exactlinalg.hpp"

using namespace liegrad;

namespace {
Matrix q1(const FieldPtr& F) { return Matrix::from_ints(F, {{1, 0}, {0, -1}}); }
Matrix q2(const FieldPtr& F) { return Matrix::from_ints(F, {{0, 1}, {1, 0}}); }
Matrix q3(const FieldPtr& F) { return Matrix::from_ints(F, {{0, 1}, {-1, 0}}); }

Matrix random_matrix(const FieldPtr& F, size_t r, size_t c, std::mt19937& rng) {
    std::uniform_int_distribution<long> val(-3, 3);
    Matrix m(F, r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m.at(i, j) = F->from_int(val(rng));
    return m;
}
} // namespace

TEST_CASE("q matrices multiply as expected") {
    auto F = make_field({4});
    CHECK(q1(F) * q2(F) == q3(F));
    CHECK(q2(F) * q1(F) == -q3(F));
    CHECK(q3(F) * q3(F) == -Matrix::identity(F, 2));
}

TEST_CASE("kron of identity and q1 is the expected diagonal") {
    auto F = make_field({4});
    Matrix k = kron(Matrix::identity(F, 2), q1(F));
    Matrix expected = Matrix::from_ints(F, {{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}});
    CHECK(k == expected);
}

TEST_CASE("trace of matrix units") {
    auto F = make_field({4});
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            Matrix e(F, 3, 3);
            e.at(i, j) = F->one();
            CHECK(e.trace() == (i == j ? F->one() : F->zero()));
        }
}

TEST_CASE("inverse is exact") {
    auto F = make_field({12});
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix m = random_matrix(F, 4, 4, rng);
        try {
            Matrix inv = m.inverse();
            CHECK(m * inv == Matrix::identity(F, 4));
        } catch (const LinAlgError&) {
            // singular draw; acceptable
        }
    }
    Matrix sing(F, 2, 2);
    sing.at(0, 0) = F->one();
    CHECK_THROWS_AS(sing.inverse(), LinAlgError);
}

TEST_CASE("kron is multiplicative") {
    auto F = make_field({4});
    std::mt19937 rng(17);
    for (int trial = 0; trial < 8; ++trial) {
        Matrix a = random_matrix(F, 2, 3, rng), c = random_matrix(F, 3, 2, rng);
        Matrix b = random_matrix(F, 2, 2, rng), d = random_matrix(F, 2, 3, rng);
        CHECK(kron(a, b) * kron(c, d) == kron(a * c, b * d));
    }
}

TEST_CASE("span membership and canonical bases") {
    auto F = make_field({4});
    auto e = [&](size_t i, size_t n) {
        std::vector<Scalar> v(n, F->zero());
        v[i] = F->one();
        return v;
    };
    Subspace s1 = Subspace::span(F, 3, {e(0, 3)});
    Subspace s2 = Subspace::span(F, 3, {e(1, 3)});
    CHECK(s1.intersect(s2).dim() == 0);
    Subspace s12 = Subspace::span(F, 3, {e(0, 3), e(1, 3)});
    CHECK(s12.member(vec_add(e(0, 3), e(1, 3))));
    CHECK(!s12.member(e(2, 3)));

    // canonical form does not depend on generating order
    Subspace a = Subspace::span(F, 3, {vec_add(e(0, 3), e(1, 3)), e(1, 3)});
    Subspace b = Subspace::span(F, 3, {e(1, 3), e(0, 3)});
    CHECK(a == b);
}

TEST_CASE("traceless diagonal matrices have dimension n-1") {
    auto F = make_field({4});
    // inside 4x4 matrices: diagonal traceless = 3-dimensional
    std::vector<std::vector<Scalar>> vecs;
    for (size_t k = 1; k < 4; ++k) {
        Matrix m(F, 4, 4);
        m.at(0, 0) = F->one();
        m.at(k, k) = F->from_int(-1);
        vecs.push_back(m.flatten());
    }
    CHECK(Subspace::span(F, 16, vecs).dim() == 3);
}

TEST_CASE("dimension formula for sum and intersection") {
    auto F = make_field({4});
    std::mt19937 rng(23);
    std::uniform_int_distribution<long> val(-2, 2);
    for (int trial = 0; trial < 10; ++trial) {
        auto rand_vecs = [&](size_t count) {
            std::vector<std::vector<Scalar>> vs;
            for (size_t i = 0; i < count; ++i) {
                std::vector<Scalar> v(5);
                for (auto& x : v) x = F->from_int(val(rng));
                vs.push_back(std::move(v));
            }
            return vs;
        };
        Subspace S = Subspace::span(F, 5, rand_vecs(3));
        Subspace T = Subspace::span(F, 5, rand_vecs(3));
        CHECK(S.sum_with(T).dim() + S.intersect(T).dim() == S.dim() + T.dim());
        CHECK(S.sum_with(T).contains(S));
        CHECK(S.contains(S.intersect(T)));
    }
}

TEST_CASE("reduction is exact: original vectors stay members") {
    auto F = make_field({12});
    std::mt19937 rng(31);
    std::uniform_int_distribution<long> val(-6, 6);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<Scalar>> vs;
        for (size_t i = 0; i < 4; ++i) {
            std::vector<Scalar> v(6);
            for (auto& x : v) x = F->from_int(val(rng)) + F->root_of_unity(12) * F->from_int(val(rng));
            vs.push_back(std::move(v));
        }
        Subspace S = Subspace::span(F, 6, vs);
        for (const auto& v : vs) CHECK(S.member(v));
    }
}

TEST_CASE("eigenspaces") {
    auto F = make_field({4});
    SUBCASE("q1 at eigenvalue 1") {
        Subspace s = eigenspace(q1(F), F->one());
        CHECK(s.dim() == 1);
        std::vector<Scalar> e0 = {F->one(), F->zero()};
        CHECK(s.member(e0));
    }
    SUBCASE("q3 at eigenvalue zeta4 is one-dimensional") {
        Subspace s = eigenspace(q3(F), F->root_of_unity(4));
        CHECK(s.dim() == 1);
    }
    SUBCASE("identity at 1 is everything") {
        CHECK(eigenspace(Matrix::identity(F, 3), F->one()).dim() == 3);
    }
    SUBCASE("empty eigenspace") {
        CHECK(eigenspace(q1(F), F->root_of_unity(4)).dim() == 0);
    }
}

TEST_CASE("coordinates against echelon basis") {
    auto F = make_field({4});
    std::vector<Scalar> v1 = {F->one(), F->from_int(2), F->zero()};
    std::vector<Scalar> v2 = {F->zero(), F->zero(), F->one()};
    Subspace S = Subspace::span(F, 3, {v1, v2});
    auto combo = vec_add(vec_scale(F->from_int(3), S.basis()[0]), vec_scale(F->from_int(-2), S.basis()[1]));
    auto coords = S.coordinates(combo);
    CHECK(coords[0] == F->from_int(3));
    CHECK(coords[1] == F->from_int(-2));
    std::vector<Scalar> outside = {F->zero(), F->one(), F->zero()};
    CHECK_THROWS_AS(S.coordinates(outside), LinAlgError);
}
