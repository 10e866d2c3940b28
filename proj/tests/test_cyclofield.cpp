#include "doctest.h"

#include <random>

#include "liegrad/cyclofield.hpp"

using namespace liegrad;

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
    CHECK(cyclotomic_polynomial(2) == std::vector<Int>{1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<Int>{1, 0, 1});
    CHECK(cyclotomic_polynomial(3) == std::vector<Int>{1, 1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<Int>{1, 0, -1, 0, 1});
    CHECK(cyclotomic_polynomial(8) == std::vector<Int>{1, 0, 0, 0, 1});
    // phi(105) = 48; first cyclotomic with a coefficient of magnitude 2
    auto c105 = cyclotomic_polynomial(105);
    CHECK(c105.size() == 49);
    CHECK(c105[7] == -2);
}

TEST_CASE("conductor from requested orders") {
    CHECK(make_field({2})->conductor() == 2);
    CHECK(make_field({4, 3})->conductor() == 12);
    CHECK(make_field({8})->conductor() == 8);
    CHECK(make_field({8})->degree() == 4);
    CHECK_THROWS_AS(make_field({}), Error);
}

TEST_CASE("roots of unity") {
    auto F4 = make_field({4});
    CHECK(F4->root_of_unity(2) == F4->from_int(-1));
    Scalar i = F4->root_of_unity(4);
    CHECK(i * i == F4->from_int(-1));

    auto F12 = make_field({4, 3});
    Scalar w = F12->root_of_unity(3);
    CHECK(w * w + w + F12->one() == F12->zero());

    CHECK_THROWS_AS(F4->root_of_unity(3), OrderUnavailableError);
}

TEST_CASE("scalar arithmetic examples") {
    auto F4 = make_field({4});
    Scalar i = F4->root_of_unity(4);
    CHECK(i * i == F4->from_int(-1));
    CHECK((F4->one() + i) + (F4->one() - i) == F4->from_int(2));

    auto F12 = make_field({12});
    Scalar w = F12->root_of_unity(3);
    CHECK(w.inverse() == w * w);
    CHECK_THROWS_AS(F12->zero().inverse(), DivisionByZeroError);
}

TEST_CASE("root order property") {
    for (unsigned long n : {2ul, 3ul, 4ul, 6ul, 12ul}) {
        auto F = make_field({12});
        Scalar z = F->root_of_unity(n);
        for (unsigned long k = 1; k <= 2 * F->conductor(); ++k) {
            bool is_one = z.pow(static_cast<long>(k)) == F->one();
            CHECK(is_one == (k % n == 0));
        }
    }
}

TEST_CASE("field laws on random scalars") {
    auto F = make_field({8, 3}); // N = 24, degree 8
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    auto random_scalar = [&]() {
        std::vector<Rat> c(F->degree());
        for (auto& x : c) {
            x = Rat(num(rng), den(rng));
            x.canonicalize();
        }
        return F->from_strings([&] {
            std::vector<std::string> s;
            for (auto& x : c) s.push_back(x.get_str());
            return s;
        }());
    };
    for (int trial = 0; trial < 25; ++trial) {
        Scalar a = random_scalar(), b = random_scalar(), c = random_scalar();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        if (!a.is_zero()) CHECK(a * a.inverse() == F->one());
    }
}

TEST_CASE("serialization round trip") {
    auto F = make_field({4});
    Scalar s = F->from_strings({"1/2", "-3"});
    CHECK(s.to_strings() == std::vector<std::string>{"1/2", "-3"});
    CHECK(F->from_strings(s.to_strings()) == s);
    CHECK(F->zero().to_strings().empty());
}
