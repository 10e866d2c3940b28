#include "doctest.h"

#include "liegrad/constructions.hpp"

using namespace liegrad;

TEST_CASE("label basics") {
    CHECK(label_sign(Label{0b11}, 1) == -1);  // q3
    CHECK(label_sign(Label{0b01}, 1) == 1);   // q1
    CHECK(label_sign(Label{0b1111}, 2) == 1); // q3 x q3
    CHECK(label_to_string(Label{0b1100}, 2) == "0011");
    CHECK(label_from_string("0011", 2) == Label{0b1100});
    CHECK(label_from_string("1", 0) == Label{0});
    CHECK_THROWS_AS(label_from_string("01", 2), DescriptorError);
    // beta polarizes q: q(a+b) = q(a) + q(b) + beta(a,b)
    for (uint32_t a = 0; a < 16; ++a)
        for (uint32_t b = 0; b < 16; ++b)
            CHECK(label_q(label_add(Label{a}, Label{b}), 2) ==
                  ((label_q(Label{a}, 2) + label_q(Label{b}, 2) + label_beta(Label{a}, Label{b}, 2)) % 2));
}

TEST_CASE("descriptor text round trip and validation") {
    auto d1 = Descriptor::parse("sl-outer:m=1,s=0,d=00;10");
    CHECK(d1.kind == Kind::SlOuter);
    CHECK(d1.m == 1);
    CHECK(d1.s == 0);
    CHECK(d1.r() == 2);
    CHECK(d1.n() == 4);
    CHECK(d1.to_text() == "sl-outer:m=1,s=0,d=00;10");

    auto d2 = Descriptor::parse("sl-inner:m=2,pp=3");
    CHECK(d2.n() == 6);
    auto d3 = Descriptor::parse("sympl:m=1,s=1,d=11");
    CHECK(d3.n() == 6);

    CHECK_THROWS_AS(Descriptor::parse("sympl:m=0,s=1,d=1"), DescriptorError);   // sign -1 impossible
    CHECK_THROWS_AS(Descriptor::parse("ortho:m=1,s=0,d=11;00;00"), DescriptorError); // q3 not symmetric
    CHECK_THROWS_AS(Descriptor::parse("sl-outer:m=1,s=0,d=10;10"), DescriptorError); // equal lines
    CHECK_THROWS_AS(Descriptor::parse("sl-inner:m=2,pp=2;2"), DescriptorError); // all 2s, m < 3
    CHECK_THROWS_AS(Descriptor::parse("sl-inner:m=1,pp=6"), DescriptorError);   // not a prime power
    CHECK_THROWS_AS(Descriptor::parse("nonsense:m=1"), DescriptorError);
}

TEST_CASE("pauli gradings") {
    for (unsigned long n : {2ul, 3ul}) {
        auto F = make_field({4, n});
        auto P = pauli(F, n);
        Scalar eps = F->root_of_unity(n);
        CHECK(P.x.pow(n) == Matrix::identity(F, n));
        CHECK(P.y.pow(n) == Matrix::identity(F, n));
        CHECK(P.y * P.x == eps * (P.x * P.y));
        CHECK(verify_grading(P.grading).ok);
        CHECK(is_graded_division(P.grading));
        CHECK(P.grading.components.size() == n * n);
    }
}

TEST_CASE("cartan matrix gradings") {
    auto F = make_field({4});
    CHECK(cartan_matrix_grading(F, 1).components.size() == 1);
    Grading c2 = cartan_matrix_grading(F, 2);
    CHECK(component_profile(c2) == std::vector<size_t>{1, 1, 2});
    Grading c3 = cartan_matrix_grading(F, 3);
    CHECK(verify_grading(c3).ok);
    // degree of E_13 is -eps_2, degree of E_21 is eps_1
    Matrix e13(F, 3, 3);
    e13.at(0, 2) = F->one();
    const Subspace* comp = c3.component_at(GroupElem{{Int(0), Int(-1)}});
    REQUIRE(comp != nullptr);
    CHECK(comp->member(e13.flatten()));
    Matrix e21(F, 3, 3);
    e21.at(1, 0) = F->one();
    const Subspace* comp2 = c3.component_at(GroupElem{{Int(1), Int(0)}});
    REQUIRE(comp2 != nullptr);
    CHECK(comp2->member(e21.flatten()));
}

TEST_CASE("inner gradings") {
    SUBCASE("pure cartan on M4 restricts to the Cartan grading of sl4") {
        Descriptor d;
        d.kind = Kind::SlInner;
        d.m = 4;
        auto F = default_field_for(d);
        auto res = inner_grading(F, d);
        CHECK(verify_grading(res.on_matrix).ok);
        CHECK(verify_grading(res.on_sl).ok);
        auto u = universal_group(res.on_sl);
        CHECK(u.group->iso_type() == IsoType{3, {}});
    }
    SUBCASE("pure pauli on M4") {
        Descriptor d;
        d.kind = Kind::SlInner;
        d.m = 1;
        d.prime_powers = {4};
        auto F = default_field_for(d);
        auto res = inner_grading(F, d);
        CHECK(verify_grading(res.on_sl).ok);
        auto u = universal_group(res.on_sl);
        CHECK(u.group->iso_type() == IsoType{0, {Int(4), Int(4)}});
        CHECK(component_profile(res.on_sl) == std::vector<size_t>(15, 1));
    }
    SUBCASE("mixed cartan x pauli on M6") {
        Descriptor d;
        d.kind = Kind::SlInner;
        d.m = 2;
        d.prime_powers = {3};
        auto F = default_field_for(d);
        auto res = inner_grading(F, d);
        CHECK(res.on_matrix.algebra->matrix_size() == 6);
        CHECK(verify_grading(res.on_matrix).ok);
        CHECK(verify_grading(res.on_sl).ok);
    }
    SUBCASE("all-2 factors require a large cartan block") {
        Descriptor d;
        d.kind = Kind::SlInner;
        d.m = 1;
        d.prime_powers = {2, 2};
        CHECK_THROWS_AS(d.validate(), DescriptorError);
    }
}

TEST_CASE("qtensor") {
    auto F = make_field({4});
    SUBCASE("m=0 is the ground field with identity involution") {
        QTensor Q(F, 0);
        CHECK(Q.dim() == 1);
        CHECK(Q.labels().size() == 1);
        CHECK(Q.realize(Label{0}) == Matrix::identity(F, 1));
        CHECK(Q.sign(Label{0}) == 1);
    }
    SUBCASE("m=1 realization and involution") {
        QTensor Q(F, 1);
        Matrix q1 = Q.realize(Label{0b01});
        Matrix q3 = Q.realize(Label{0b11});
        CHECK(Q.tau(q1) == q1);
        CHECK(Q.tau(q3) == -q3);
        CHECK(Q.sign(Label{0b11}) == -1);
    }
    SUBCASE("cocycle matches realized products for m=2") {
        QTensor Q(F, 2);
        for (Label a : Q.labels())
            for (Label b : Q.labels()) {
                Matrix lhs = Q.realize(a) * Q.realize(b);
                Matrix rhs = F->from_int(Q.cocycle(a, b)) * Q.realize(label_add(a, b));
                CHECK(lhs == rhs);
            }
    }
    SUBCASE("tau is an antiautomorphism with tau^2 = id; commutation follows beta") {
        QTensor Q(F, 2);
        for (Label a : Q.labels()) {
            Matrix xa = Q.realize(a);
            CHECK(Q.tau(Q.tau(xa)) == xa);
            CHECK(Q.tau(xa) == F->from_int(Q.sign(a)) * xa);
            for (Label b : Q.labels()) {
                Matrix xb = Q.realize(b);
                CHECK(Q.tau(xa * xb) == Q.tau(xb) * Q.tau(xa));
                Matrix comm = xa * xb - F->from_int(Q.beta(a, b) == 0 ? 1 : -1) * (xb * xa);
                CHECK(comm.is_zero());
            }
        }
    }
    SUBCASE("the grading is a division grading") {
        QTensor Q(F, 2);
        Grading g = Q.grading();
        CHECK(verify_grading(g).ok);
        CHECK(is_graded_division(g));
        auto u = universal_group(g);
        CHECK(u.group->iso_type() == IsoType{0, {Int(2), Int(2), Int(2), Int(2)}});
    }
}

TEST_CASE("group data for outer descriptors") {
    SUBCASE("ortho (0,1;1) on M3") {
        auto d = Descriptor::parse("ortho:m=0,s=1,d=1");
        GroupData gd = build_group_data(d);
        CHECK(gd.Gtilde->iso_type() == IsoType{1, {Int(2)}});
        CHECK(gd.Gbar.group->iso_type() == IsoType{1, {}});
    }
    SUBCASE("sl4 outer (1,0;1,q1)") {
        auto d = Descriptor::parse("sl-outer:m=1,s=0,d=00;10");
        GroupData gd = build_group_data(d);
        CHECK(gd.Gbar.group->iso_type() == IsoType{0, {Int(2), Int(4)}});
    }
    SUBCASE("sl4 outer (0,1;1,1)") {
        auto d = Descriptor::parse("sl-outer:m=0,s=1,d=1;1");
        GroupData gd = build_group_data(d);
        CHECK(gd.Gbar.group->iso_type() == IsoType{1, {Int(2)}});
    }
    SUBCASE("free rank of the grading subgroup is s") {
        for (const char* text : {"sl-outer:m=0,s=2", "sl-outer:m=1,s=1", "sympl:m=1,s=1,d=11",
                                 "ortho:m=1,s=2,d=00", "sympl:m=2,s=1,d=0011"}) {
            auto d = Descriptor::parse(text);
            GroupData gd = build_group_data(d);
            CHECK(gd.Gbar.group->rank() == d.s);
        }
    }
}

TEST_CASE("build_form structure") {
    SUBCASE("ortho (0,1;1): MB = diag(1, antidiag(1,1))") {
        auto d = Descriptor::parse("ortho:m=0,s=1,d=1");
        auto F = make_field({4});
        FormData fd = build_form(F, d);
        Matrix expect = Matrix::from_ints(F, {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}});
        CHECK(fd.MB == expect);
        CHECK(fd.phi_involutive());
    }
    SUBCASE("sympl (1,1;q3): MB = diag(q3, hyperbolic with -1)") {
        auto d = Descriptor::parse("sympl:m=1,s=1,d=11");
        auto F = make_field({4});
        FormData fd = build_form(F, d);
        CHECK(fd.n == 6);
        Matrix expect = Matrix::from_ints(F, {{0, 1, 0, 0, 0, 0},
                                              {-1, 0, 0, 0, 0, 0},
                                              {0, 0, 0, 0, 1, 0},
                                              {0, 0, 0, 0, 0, 1},
                                              {0, 0, -1, 0, 0, 0},
                                              {0, 0, 0, -1, 0, 0}});
        CHECK(fd.MB == expect);
        CHECK(fd.phi_involutive());
    }
    SUBCASE("transpose adjoint for the identity form") {
        auto d = Descriptor::parse("ortho:m=0,s=0,d=1;1;1");
        auto F = make_field({4});
        FormData fd = build_form(F, d);
        Matrix x = Matrix::from_ints(F, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
        CHECK(fd.adjoint_of(x) == x.transpose());
    }
    SUBCASE("sl4 (1,0;1,q1): blockwise -phi formula") {
        auto d = Descriptor::parse("sl-outer:m=1,s=0,d=00;10");
        auto F = make_field({4});
        FormData fd = build_form(F, d);
        // random-ish x in M4, blocks x11, x12, x21, x22 over Q
        Matrix x = Matrix::from_ints(
            F, {{1, 2, -1, 0}, {3, 0, 2, 1}, {0, 1, 1, 1}, {2, -2, 0, 3}});
        Matrix q1 = Matrix::from_ints(F, {{1, 0}, {0, -1}});
        auto blk = [&](const Matrix& mm, int bi, int bj) {
            Matrix b(F, 2, 2);
            for (size_t a = 0; a < 2; ++a)
                for (size_t c = 0; c < 2; ++c) b.at(a, c) = mm.at(size_t(bi) * 2 + a, size_t(bj) * 2 + c);
            return b;
        };
        Matrix neg_phi = -fd.adjoint_of(x);
        // expected blocks: -x11^t, -x21^t q1 / -q1 x12^t, -q1 x22^t q1
        CHECK(blk(neg_phi, 0, 0) == -blk(x, 0, 0).transpose());
        CHECK(blk(neg_phi, 0, 1) == -(blk(x, 1, 0).transpose() * q1));
        CHECK(blk(neg_phi, 1, 0) == -(q1 * blk(x, 0, 1).transpose()));
        CHECK(blk(neg_phi, 1, 1) == -(q1 * blk(x, 1, 1).transpose() * q1));
        // both diagonal entries are tau-symmetric, so phi is an involution
        CHECK(fd.phi_involutive());
    }
    SUBCASE("coarse grading of sl4 (1,0;1,q1) has 8 components of dimension 2") {
        auto d = Descriptor::parse("sl-outer:m=1,s=0,d=00;10");
        auto F = make_field({4});
        FormData fd = build_form(F, d);
        CHECK(fd.coarse.components.size() == 8);
        CHECK(component_profile(fd.coarse) == std::vector<size_t>(8, 2));
        CHECK(verify_grading(fd.coarse).ok);
        auto u = universal_group(fd.coarse);
        CHECK(u.group->iso_type() == fd.groups.Gbar.group->iso_type());
    }
}

TEST_CASE("form checks pass for assorted descriptors") {
    for (const char* text :
         {"ortho:m=0,s=1,d=1", "sl-outer:m=1,s=0,d=00;10", "sympl:m=1,s=1,d=11",
          "sl-outer:m=0,s=1,d=1;1", "sympl:m=2,s=0,d=0011;1100", "ortho:m=1,s=1,d=01"}) {
        auto d = Descriptor::parse(text);
        auto F = make_field({4});
        FormData fd = build_form(F, d);
        FormChecks fc = check_form(fd);
        CAPTURE(text);
        CHECK(fc.sesquilinear);
        CHECK(fc.hermitian);
        CHECK(fc.degree_compatible);
        CHECK(fc.adjoint_identity);
        CHECK(fc.symbolic_matches_realized);
    }
}

TEST_CASE("outer sl4 grading (1,0;1,q1)") {
    auto d = Descriptor::parse("sl-outer:m=1,s=0,d=00;10");
    auto res = outer_grading_sl(d);
    CHECK(verify_grading(res.fine).ok);
    CHECK(res.universal->iso_type() == IsoType{0, {Int(2), Int(2), Int(4)}});
    auto prof = component_profile(res.fine);
    std::vector<size_t> expect(13, 1);
    expect.push_back(2);
    CHECK(prof == expect);
    CHECK(res.kernel_is_z2);
    CHECK(res.quotient_matches_gbar);
    CHECK(res.phi_involutive);
    CHECK(res.splits_as_gbar_x_z2);
    // identity degree absent from the support
    CHECK(res.fine.component_at(res.universal->identity()) == nullptr);
    // the refinement relation against the coarse sl grading
    CHECK(is_refinement(res.fine, res.coarse_sl));
}

TEST_CASE("outer sl4 grading (0,0;1,1,1,1) is Z2^4") {
    auto d = Descriptor::parse("sl-outer:m=0,s=0,d=1;1;1;1");
    auto res = outer_grading_sl(d);
    CHECK(res.universal->iso_type() == IsoType{0, {Int(2), Int(2), Int(2), Int(2)}});
    CHECK(res.phi_involutive);
    CHECK(res.splits_as_gbar_x_z2);
    CHECK(verify_grading(res.fine).ok);
}

TEST_CASE("skew gradings") {
    SUBCASE("so5 (0,0;1^5) is Z2^4") {
        auto d = Descriptor::parse("ortho:m=0,s=0,d=1;1;1;1;1");
        auto res = skew_grading(d);
        CHECK(res.skew->dim() == 10); // 5*4/2
        CHECK(res.skew->is_closed());
        CHECK(verify_grading(res.fine).ok);
        CHECK(res.universal->iso_type() == IsoType{0, {Int(2), Int(2), Int(2), Int(2)}});
        CHECK(res.universal_matches_gbar);
    }
    SUBCASE("sp6 (1,1;q3) is Z x Z2^2") {
        auto d = Descriptor::parse("sympl:m=1,s=1,d=11");
        auto res = skew_grading(d);
        CHECK(res.skew->dim() == 21); // 6*7/2
        CHECK(verify_grading(res.fine).ok);
        CHECK(res.universal->iso_type() == IsoType{1, {Int(2), Int(2)}});
        CHECK(res.universal_matches_gbar);
    }
    SUBCASE("sp8 (2,0;1 x q3, q3 x 1) is Z4 x Z2^3") {
        auto d = Descriptor::parse("sympl:m=2,s=0,d=0011;1100");
        auto res = skew_grading(d);
        CHECK(res.skew->dim() == 36);
        CHECK(res.universal->iso_type() == IsoType{0, {Int(2), Int(2), Int(2), Int(4)}});
        CHECK(res.universal_matches_gbar);
    }
}

TEST_CASE("octonions") {
    auto F = make_field({1});
    auto oct = octonions(F);
    CHECK(oct.algebra->dim() == 8);
    CHECK(verify_grading(oct.grading).ok);
    CHECK(oct.grading.components.size() == 8);
    CHECK(component_profile(oct.grading) == std::vector<size_t>(8, 1));
    // identity component is the span of the unit
    std::vector<Scalar> unit(8, F->zero());
    unit[0] = F->one();
    const Subspace* c0 = oct.grading.component_at(oct.grading.group->identity());
    REQUIRE(c0 != nullptr);
    CHECK(c0->member(unit));
    // e_i^2 = -1 for imaginary units
    for (size_t i = 1; i < 8; ++i) {
        std::vector<Scalar> e(8, F->zero());
        e[i] = F->one();
        auto sq = oct.algebra->mul(e, e);
        CHECK(sq[0] == F->from_int(-1));
        for (size_t t = 1; t < 8; ++t) CHECK(sq[t].is_zero());
    }
}

TEST_CASE("derivations") {
    auto F = make_field({1});
    SUBCASE("derivations of the octonions form a 14-dimensional algebra") {
        auto oct = octonions(F);
        auto der = derivation_algebra(oct.algebra);
        CHECK(der->dim() == 14);
        CHECK(der->is_closed());
    }
    SUBCASE("derivations of full matrix algebras are inner: dim n^2 - 1") {
        for (size_t n : {2ul, 3ul}) {
            auto A = Algebra::matrix_algebra(F, n, "M" + std::to_string(n));
            auto der = derivation_algebra(A);
            CHECK(der->dim() == n * n - 1);
        }
    }
    SUBCASE("induced grading on the octonion derivations") {
        auto oct = octonions(F);
        auto der = derivation_algebra(oct.algebra);
        Grading g = induced_derivation_grading(oct.algebra, oct.grading, der);
        CHECK(verify_grading(g).ok);
        CHECK(g.component_at(g.group->identity()) == nullptr); // zero identity component
        CHECK(component_profile(g) == std::vector<size_t>(7, 2));
        for (const auto& [deg, sub] : g.components) {
            CHECK(is_abelian_subspace(*der, sub));
            CHECK(normalizer_in(*der, der->space(), sub) == sub);
        }
    }
}
