#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pencils/arulwang.hpp"

using namespace pencils;

namespace {

FqPoly fqpoly(const Fq& f, std::initializer_list<long> coeffs) {
    std::vector<FqElem> c;
    for (long v : coeffs) c.push_back(f.from_int(v));
    return FqPoly(f, std::move(c));
}

Poly<QQ> qpoly(std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    for (long v : coeffs) c.push_back(Rat(v));
    return Poly<QQ>(QQ{}, std::move(c));
}

}  // namespace

TEST_CASE("gram matrices for t^6 - 1") {
    Fq f7(7);
    auto aw = arul_wang_build(fqpoly(f7, {-1, 0, 0, 0, 0, 0, 1}));
    const auto& g1 = aw.pencil.q1().gram();
    const auto& g2 = aw.pencil.q2().gram();
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            CHECK(g1.at(a, b) == (a + b == 5 ? f7.one() : f7.zero()));
            bool two = (a + b == 4) || (a == 5 && b == 5);
            CHECK(g2.at(a, b) == (two ? f7.one() : f7.zero()));
        }
}

TEST_CASE("low block of Q1 is the antidiagonal indicator for any f") {
    std::mt19937_64 rng(5);
    Fq f5(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<FqElem> c;
        for (int i = 0; i < 6; ++i) c.push_back(f5.rand_elem(rng));
        c.push_back(f5.one());
        FqPoly f(f5, c);
        if (!poly_squarefree(f)) continue;
        auto aw = arul_wang_build(f);
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6 - a; ++b)
                CHECK(aw.pencil.q1().gram().at(a, b) ==
                      (a + b == 5 ? f5.one() : f5.zero()));
    }
}

TEST_CASE("disc of the built pencil is f, 20 random sextics over F_7") {
    std::mt19937_64 rng(9);
    Fq f7(7);
    int built = 0;
    while (built < 20) {
        std::vector<FqElem> c;
        for (int i = 0; i < 6; ++i) c.push_back(f7.rand_elem(rng));
        c.push_back(f7.one());
        FqPoly f(f7, c);
        if (!poly_squarefree(f)) continue;
        auto aw = arul_wang_build(f);
        CHECK(disc_poly(aw.pencil) == f);
        CHECK(is_nonsingular(aw.pencil));
        ++built;
    }
}

TEST_CASE("solubility witness") {
    Fq f5(5);
    auto aw = arul_wang_build(fqpoly(f5, {-1, 0, 0, 0, 0, 0, 1}));
    REQUIRE(aw.witness.dim() == 2);
    const auto& b = aw.witness.basis();
    // all pairings of both forms vanish on the witness
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(f5.is_zero(aw.pencil.q1().pair(b.row(i), b.row(j))));
            CHECK(f5.is_zero(aw.pencil.q2().pair(b.row(i), b.row(j))));
        }

    // random f over F_5 as well
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<FqElem> c;
        for (int i = 0; i < 6; ++i) c.push_back(f5.rand_elem(rng));
        c.push_back(f5.one());
        FqPoly f(f5, c);
        if (!poly_squarefree(f)) continue;
        auto a = arul_wang_build(f);
        const auto& w = a.witness.basis();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                CHECK(f5.is_zero(a.pencil.q1().pair(w.row(i), w.row(j))));
                CHECK(f5.is_zero(a.pencil.q2().pair(w.row(i), w.row(j))));
            }
    }

    // quartic case: witness is the line spanned by e_0
    auto q = arul_wang_build(qpoly({2, 0, -3, 0, 1}));  // t^4 - 3t^2 + 2 squarefree
    CHECK(q.witness.dim() == 1);
    CHECK(q.witness.basis().at(0, 0) == Rat(1));
}

TEST_CASE("multiplication operator") {
    Fq f7(7);
    auto f = fqpoly(f7, {-1, 0, 0, 0, 0, 0, 1});
    auto aw = arul_wang_build(f);
    // companion shape: subdiagonal ones, top-right 1 (f = t^6 - 1)
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            FqElem expect = f7.zero();
            if (i == j + 1) expect = f7.one();
            if (j == 5 && i == 0) expect = f7.one();
            CHECK(aw.t0.at(i, j) == expect);
        }
    // self-adjointness Q1 T0 = T0^T Q1, entrywise
    CHECK(aw.pencil.q1().gram() * aw.t0 == aw.t0.transpose() * aw.pencil.q1().gram());
    // and Q2 = Q1 T0
    CHECK(aw.pencil.q2().gram() == aw.pencil.q1().gram() * aw.t0);
    // char poly of T0 is f
    CHECK(linear_pencil_det(Mat<Fq>::identity(f7, 6), aw.t0) == f);
}

TEST_CASE("Q1 is hyperbolic over every tested F_q") {
    std::mt19937_64 rng(21);
    for (int64_t p : {3, 5, 7, 11}) {
        Fq fp(p);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<FqElem> c;
            for (int i = 0; i < 6; ++i) c.push_back(fp.rand_elem(rng));
            c.push_back(fp.one());
            FqPoly f(fp, c);
            if (!poly_squarefree(f)) continue;
            auto aw = arul_wang_build(f);
            CHECK(is_hyperbolic(aw.pencil.q1(), trial));
        }
    }
}

TEST_CASE("Vandermonde identity over Q via residues") {
    // Gram(Q1)[a][b] must equal s_{a+b} = sum lambda^{a+b} / f'(lambda),
    // computed with no root extraction at all
    std::vector<std::vector<long>> sextics{{-1, 0, 0, 0, 0, 0, 1},  {2, -1, 3, 0, -2, 1, 1},
                                           {-5, 4, 0, 1, 0, 0, 1},  {7, 0, -1, 2, 2, -3, 1},
                                           {30, -31, 0, 10, 0, -1, 1}};
    for (const auto& coeffs : sextics) {
        std::vector<Rat> cc;
        for (long v : coeffs) cc.push_back(Rat(v));
        Poly<QQ> f(QQ{}, cc);
        if (!poly_squarefree(f)) continue;
        auto aw = arul_wang_build(f);
        auto s = power_trace_residues(f, 12);
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) CHECK(aw.pencil.q1().gram().at(a, b) == s[a + b]);
        // Q2 entries are s_{a+b+1}
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) CHECK(aw.pencil.q2().gram().at(a, b) == s[a + b + 1]);
    }
}

TEST_CASE("base change: build over Q then reduce equals build over F_p") {
    auto f = qpoly({2, -1, 3, 0, -2, 1, 1});
    REQUIRE(poly_squarefree(f));
    auto awq = arul_wang_build(f);
    for (int64_t p : {5, 7, 11}) {
        Fq fp(p);
        std::vector<FqElem> c;
        for (auto& cc : f.coeffs()) {
            REQUIRE(cc.get_den() == 1);
            c.push_back(fp.from_int(cc.get_num().get_si()));
        }
        FqPoly fmodp(fp, c);
        if (!poly_squarefree(fmodp)) continue;
        auto awp = arul_wang_build(fmodp);
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) {
                Rat e = awq.pencil.q1().gram().at(a, b);
                REQUIRE(e.get_den() == 1);
                CHECK(awp.pencil.q1().gram().at(a, b) == fp.from_int(e.get_num().get_si()));
            }
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(arul_wang_build(qpoly({1, 2, 3, 1, 0, 1, 2})), std::invalid_argument);  // not monic
    CHECK_THROWS_AS(arul_wang_build(qpoly({1, 2, 3, 0, 0, 1})), std::invalid_argument);     // odd degree
    CHECK_THROWS_AS(arul_wang_build(qpoly({0, 0, 0, 0, 0, 0, 1})), std::invalid_argument);  // t^6
    CHECK_THROWS_AS(arul_wang_build(qpoly({1, 0, 1})), std::invalid_argument);  // degree 2
}
