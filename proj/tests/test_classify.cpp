#include "doctest.h"

#include <set>

#include "liegrad/classify.hpp"

using namespace liegrad;

namespace {
std::multiset<std::string> group_names(const std::vector<ClassRecord>& records) {
    std::multiset<std::string> out;
    for (const auto& r : records) out.insert(r.group.to_string());
    return out;
}
} // namespace

TEST_CASE("transvections preserve beta and are additive") {
    for (int m : {1, 2, 3}) {
        for (const auto& g : transvection_generators(m, ActionMode::FullSymplectic)) {
            size_t L = size_t(1) << (2 * m);
            for (uint32_t a = 0; a < L; ++a) {
                for (uint32_t b = 0; b < L; ++b) {
                    CHECK(label_beta(Label{g[a]}, Label{g[b]}, m) == label_beta(Label{a}, Label{b}, m));
                    CHECK(g[a ^ b] == (g[a] ^ g[b]));
                }
            }
        }
    }
}

TEST_CASE("symplectic group orders over F2") {
    CHECK(symplectic_group_elements(1, ActionMode::FullSymplectic).size() == 6);   // Sp_2(F2)
    CHECK(symplectic_group_elements(2, ActionMode::FullSymplectic).size() == 720); // Sp_4(F2)
    CHECK(symplectic_group_elements(1, ActionMode::SignPreserving).size() == 2);   // O+_2(F2)
    CHECK(symplectic_group_elements(2, ActionMode::SignPreserving).size() == 72);  // O+_4(F2)
}

TEST_CASE("inner enumeration") {
    auto d4 = enumerate_inner_sl(4);
    REQUIRE(d4.size() == 2);
    CHECK(d4[0].to_text() == "sl-inner:m=4");
    CHECK(d4[1].to_text() == "sl-inner:m=1,pp=4");

    auto d3 = enumerate_inner_sl(3);
    REQUIRE(d3.size() == 2);
    CHECK(d3[0].to_text() == "sl-inner:m=3");
    CHECK(d3[1].to_text() == "sl-inner:m=1,pp=3");

    auto d6 = enumerate_inner_sl(6);
    REQUIRE(d6.size() == 4);
    CHECK(d6[0].to_text() == "sl-inner:m=6");
    CHECK(d6[1].to_text() == "sl-inner:m=3,pp=2");
    CHECK(d6[2].to_text() == "sl-inner:m=2,pp=3");
    CHECK(d6[3].to_text() == "sl-inner:m=1,pp=2;3");

    CHECK_THROWS_AS(enumerate_inner_sl(2), DescriptorError);
}

TEST_CASE("outer enumeration of sl3 and sl4") {
    auto r3 = enumerate_outer_sl(3);
    REQUIRE(r3.size() == 2);
    CHECK(r3[0].rep.to_text() == "sl-outer:m=0,s=1,d=1");
    CHECK(r3[1].rep.to_text() == "sl-outer:m=0,s=0,d=1;1;1");

    auto r4 = enumerate_outer_sl(4);
    REQUIRE(r4.size() == 6);
    std::multiset<std::string> expect = {"Z^2 x Z2", "Z x Z2^2", "Z2^4", "Z x Z2^3", "Z2^2 x Z4", "Z2^5"};
    CHECK(group_names(r4) == expect);
    // at m=1, s=0 the representative keeps d1 = 1 and d2 = q1
    bool found = false;
    for (const auto& r : r4) found = found || r.rep.to_text() == "sl-outer:m=1,s=0,d=00;10";
    CHECK(found);
}

TEST_CASE("skew enumeration counts match the known catalogs") {
    SUBCASE("so5") {
        auto r = enumerate_skew(5, +1);
        REQUIRE(r.size() == 3);
        CHECK(group_names(r) == std::multiset<std::string>{"Z^2", "Z x Z2^2", "Z2^4"});
    }
    SUBCASE("sp6") {
        auto r = enumerate_skew(6, -1);
        REQUIRE(r.size() == 3);
        CHECK(group_names(r) == std::multiset<std::string>{"Z^3", "Z x Z2^2", "Z2^4"});
    }
    SUBCASE("parity violations rejected") {
        CHECK_THROWS_AS(enumerate_skew(7, -1), DescriptorError);
        CHECK_THROWS_AS(enumerate_skew(4, +1), DescriptorError);
    }
}

TEST_CASE("descriptor equivalence") {
    auto a = Descriptor::parse("sl-outer:m=1,s=0,d=00;10");
    auto b = Descriptor::parse("sl-outer:m=1,s=0,d=00;01");
    CHECK(descriptor_equivalent(a, b)); // a graded equivalence maps q2 to q1
    CHECK(descriptor_equivalent(a, a)); // identity move
    // multiplying through by q1 carries (q1, q3) to (1, q2)
    auto c = Descriptor::parse("sl-outer:m=1,s=0,d=10;11");
    CHECK(descriptor_equivalent(a, c));
    // different shape parameters never match
    auto e = Descriptor::parse("sl-outer:m=0,s=1,d=1;1");
    CHECK(!descriptor_equivalent(a, e));
    auto inner = Descriptor::parse("sl-inner:m=4");
    CHECK_THROWS_AS(descriptor_equivalent(a, inner), DescriptorError);
}

TEST_CASE("canonicalization soundness") {
    LabelClassifier lc;
    for (const char* text : {"sl-outer:m=1,s=0,d=01;11", "sympl:m=2,s=0,d=1100;1011",
                             "ortho:m=1,s=1,d=10", "sl-outer:m=2,s=0,d=0010;1101"}) {
        auto d = Descriptor::parse(text);
        auto canon = lc.canonical(d, ActionMode::FullSymplectic);
        CAPTURE(text);
        CHECK(lc.equivalent(d, canon, ActionMode::FullSymplectic));
        CHECK(canon.d <= d.d);
    }
}

TEST_CASE("orbit partition matches the brute-force oracle at m <= 2") {
    LabelClassifier lc;
    for (Kind kind : {Kind::SlOuter, Kind::Ortho, Kind::Sympl}) {
        for (int m : {1, 2}) {
            for (int r = 1; r <= (m == 2 ? 3 : 4); ++r) {
                auto fast = lc.classes(kind, m, r, ActionMode::FullSymplectic);
                auto slow = oracle_partition(kind, m, r, ActionMode::FullSymplectic);
                CAPTURE(static_cast<int>(kind));
                CAPTURE(m);
                CAPTURE(r);
                CHECK(fast == slow);
            }
        }
    }
}

TEST_CASE("fingerprints separate the sl4 catalog") {
    auto cat = classify_algebra(AlgebraFamily::SL, 4);
    CHECK(cat.total() == 8);
    std::set<std::pair<std::string, std::vector<size_t>>> prints;
    for (const auto& r : cat.inner) prints.insert({r.group.to_string(), r.profile});
    for (const auto& r : cat.outer) prints.insert({r.group.to_string(), r.profile});
    CHECK(prints.size() == 8);
}

TEST_CASE("sl2 catalog is the special pair") {
    auto cat = classify_algebra(AlgebraFamily::SL, 2);
    REQUIRE(cat.total() == 2);
    CHECK(cat.inner[0].group.to_string() == "Z");
    CHECK(cat.inner[1].group.to_string() == "Z2^2");
    CHECK(cat.inner[1].profile == std::vector<size_t>{1, 1, 1});
}

TEST_CASE("classify guards") {
    CHECK_THROWS_AS(classify_algebra(AlgebraFamily::SO, 6), DescriptorError);
    CHECK_THROWS_AS(classify_algebra(AlgebraFamily::SP, 7), DescriptorError);
    CHECK_THROWS_AS(classify_algebra(AlgebraFamily::SL, 32), DescriptorError);
}

TEST_CASE("equal-line and distinct-line pairs are inequivalent") {
    // the multiset {1,1} never meets {1,q1}: moves preserve multiplicities
    Descriptor equal_pair;
    equal_pair.kind = Kind::SlOuter;
    equal_pair.m = 1;
    equal_pair.s = 0;
    equal_pair.d = {Label{0}, Label{0}};
    auto distinct_pair = Descriptor::parse("sl-outer:m=1,s=0,d=00;10");
    CHECK(!descriptor_equivalent(equal_pair, distinct_pair));
}

TEST_CASE("fingerprints are distinct within each catalog") {
    auto distinct = [](const std::vector<ClassRecord>& records) {
        std::set<std::pair<std::string, std::vector<size_t>>> prints;
        for (const auto& r : records) prints.insert({r.group.to_string(), r.profile});
        return prints.size() == records.size();
    };
    CHECK(distinct(enumerate_skew(5, +1)));
    CHECK(distinct(enumerate_skew(6, -1)));
    CHECK(distinct(enumerate_skew(8, -1)));
    CHECK(distinct(classify_algebra(AlgebraFamily::SL, 4).outer));
}
