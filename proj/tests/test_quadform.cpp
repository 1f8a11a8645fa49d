#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pencils/hilbert.hpp"
#include "pencils/quadform.hpp"
#include "support/oracles.hpp"

using namespace pencils;

namespace {

Mat<QQ> qmat(const std::vector<std::vector<long>>& rows) {
    QQ f;
    Mat<QQ> m(f, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = Rat(rows[i][j]);
    return m;
}

QuadraticForm<QQ> qdiag(const std::vector<long>& entries) {
    std::vector<Rat> d;
    for (long v : entries) d.push_back(Rat(v));
    return QuadraticForm<QQ>::diagonal(QQ{}, d);
}

QuadraticForm<Fq> random_nonsingular_form(const Fq& f, int dim, std::mt19937_64& rng) {
    while (true) {
        Mat<Fq> g(f, dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) {
                auto v = f.rand_elem(rng);
                g.at(i, j) = v;
                g.at(j, i) = v;
            }
        if (!f.is_zero(g.det())) return QuadraticForm<Fq>(std::move(g));
    }
}

}  // namespace

TEST_CASE("evaluate") {
    auto id3 = QuadraticForm<QQ>(Mat<QQ>::identity(QQ{}, 3));
    CHECK(id3.evaluate({Rat(1), Rat(0), Rat(0)}) == Rat(1));
    CHECK(id3.evaluate({Rat(0), Rat(0), Rat(0)}) == Rat(0));
    auto anti = QuadraticForm<QQ>(qmat({{0, 1}, {1, 0}}));
    CHECK(anti.evaluate({Rat(1), Rat(1)}) == Rat(2));
    CHECK_THROWS_AS(anti.evaluate({Rat(1)}), std::invalid_argument);
    CHECK_THROWS_AS(QuadraticForm<QQ>(qmat({{0, 1}, {2, 0}})), std::invalid_argument);
}

TEST_CASE("congruence diagonalization") {
    auto check_diag = [](const QuadraticForm<QQ>& q) {
        auto d = diagonalize_congruence(q);
        auto gt = d.basis.transpose() * q.gram() * d.basis;
        for (int i = 0; i < q.dim(); ++i)
            for (int j = 0; j < q.dim(); ++j)
                CHECK(gt.at(i, j) == (i == j ? d.entries[i] : Rat(0)));
        // determinant square class is preserved
        Rat dp = d.basis.det();
        REQUIRE(dp != 0);
        Rat prod(1);
        for (auto& e : d.entries) prod *= e;
        CHECK(q.gram().det() * dp * dp == prod);
    };

    auto id = QuadraticForm<QQ>(Mat<QQ>::identity(QQ{}, 4));
    check_diag(id);
    auto d0 = diagonalize_congruence(id);
    CHECK(d0.basis == Mat<QQ>::identity(QQ{}, 4));

    // hyperbolic plane: diagonal entries multiply to -1 times a square
    auto hyp = QuadraticForm<QQ>(qmat({{0, 1}, {1, 0}}));
    check_diag(hyp);
    auto dh = diagonalize_congruence(hyp);
    CHECK(dh.entries[0] * dh.entries[1] < 0);
    CHECK(rat_is_square(-dh.entries[0] * dh.entries[1]));

    // rank-1 form: one nonzero entry
    auto r1 = QuadraticForm<QQ>(qmat({{1, 1}, {1, 1}}));
    auto dr = diagonalize_congruence(r1);
    int nz = 0;
    for (auto& e : dr.entries) nz += (e != 0);
    CHECK(nz == 1);

    // over F_q too
    std::mt19937_64 rng(3);
    for (int64_t p : {3, 5, 7}) {
        Fq f(p);
        for (int trial = 0; trial < 10; ++trial) {
            auto q = random_nonsingular_form(f, 4, rng);
            auto d = diagonalize_congruence(q);
            auto gt = d.basis.transpose() * q.gram() * d.basis;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    if (i == j)
                        CHECK(f.eq(gt.at(i, j), d.entries[i]));
                    else
                        CHECK(f.is_zero(gt.at(i, j)));
                }
        }
    }
}

TEST_CASE("radical") {
    auto ns = QuadraticForm<QQ>(qmat({{1, 2}, {2, 1}}));
    CHECK(radical(ns).dim() == 0);
    auto zero = QuadraticForm<QQ>(qmat({{0, 0}, {0, 0}}));
    CHECK(radical(zero).dim() == 2);
    auto r1 = QuadraticForm<QQ>(qmat({{1, 1}, {1, 1}}));
    CHECK(radical(r1).dim() == 1);
    CHECK(radical(r1).contains({Rat(1), Rat(-1)}));
}

TEST_CASE("witt index over F_q") {
    Fq f3(3);
    // hyperbolic form of dimension 6: three planes
    Mat<Fq> h6(f3, 6, 6);
    for (int i = 0; i < 3; ++i) {
        h6.at(2 * i, 2 * i + 1) = f3.one();
        h6.at(2 * i + 1, 2 * i) = f3.one();
    }
    QuadraticForm<Fq> hyp6(h6);
    CHECK(witt_index(hyp6) == 3);
    CHECK(is_hyperbolic(hyp6));
    CHECK(oracles::brute_max_isotropic(hyp6) == 3);

    // anisotropic binary form: diag(1, -u), u a nonsquare
    FqElem u = f3.from_int(2);  // 2 is not a square mod 3
    REQUIRE(f3.legendre(u) == -1);
    auto aniso = QuadraticForm<Fq>::diagonal(f3, {f3.one(), f3.neg(u)});
    // oracle: no nonzero isotropic vector among all q^2 vectors
    {
        int count = 0;
        for (uint64_t i = 0; i < 3; ++i)
            for (uint64_t j = 0; j < 3; ++j) {
                Vec<Fq> v{f3.elem_at(i), f3.elem_at(j)};
                if ((i || j) && f3.is_zero(aniso.evaluate(v))) ++count;
            }
        CHECK(count == 0);
    }
    CHECK(witt_index(aniso) == 0);
    CHECK_FALSE(is_hyperbolic(aniso));

    auto dim1 = QuadraticForm<Fq>::diagonal(f3, {f3.one()});
    CHECK(witt_index(dim1) == 0);

    auto singular = QuadraticForm<Fq>::diagonal(f3, {f3.one(), f3.zero()});
    CHECK_THROWS_AS(witt_index(singular), std::invalid_argument);

    // agreement with the brute-force flag search
    std::mt19937_64 rng(17);
    for (int64_t p : {3, 5}) {
        Fq f(p);
        for (int dim = 2; dim <= (p == 3 ? 6 : 4); ++dim) {
            for (int trial = 0; trial < 4; ++trial) {
                auto q = random_nonsingular_form(f, dim, rng);
                CHECK(witt_index(q, trial) == oracles::brute_max_isotropic(q));
            }
        }
    }
    Fq f9(3, first_irreducible(3, 2));
    for (int trial = 0; trial < 3; ++trial) {
        auto q = random_nonsingular_form(f9, 4, rng);
        CHECK(witt_index(q, trial) == oracles::brute_max_isotropic(q));
    }
}

TEST_CASE("real signature") {
    auto id6 = QuadraticForm<QQ>(Mat<QQ>::identity(QQ{}, 6));
    auto s = signature_r(id6);
    CHECK(s.positives == 6);
    CHECK(s.negatives == 0);
    CHECK(s.radical_dim == 0);

    Mat<QQ> anti(QQ{}, 6, 6);
    for (int i = 0; i < 6; ++i) anti.at(i, 5 - i) = Rat(1);
    auto sa = signature_r(QuadraticForm<QQ>(anti));
    CHECK(sa.positives == 3);
    CHECK(sa.negatives == 3);

    auto sd = signature_r(qdiag({1, -1}));
    CHECK(sd.positives == 1);
    CHECK(sd.negatives == 1);

    auto ssing = signature_r(QuadraticForm<QQ>(qmat({{1, 1}, {1, 1}})));
    CHECK(ssing.radical_dim == 1);
    CHECK(ssing.positives == 1);
}

TEST_CASE("hilbert symbols") {
    auto p2 = Place::prime(Int(2));
    auto p7 = Place::prime(Int(7));
    auto real = Place::infinite();

    CHECK(hasse_invariant({Rat(1), Rat(1)}, p7) == 1);
    CHECK(hasse_invariant({Rat(1), Rat(1)}, p2) == 1);
    CHECK(hasse_invariant({Rat(1), Rat(17)}, p2) == 1);
    CHECK(hasse_invariant({Rat(-1), Rat(-1)}, p2) == -1);
    CHECK(hilbert_symbol(Rat(-1), Rat(-1), real) == -1);

    // (-1,-1)_2 = -1 certified by the p-adic oracle: x^2+y^2+z^2 has no
    // primitive zero over Z_2
    auto tri = oracles::padic_isotropic_dfs({Int(1), Int(1), Int(1)}, Int(2), 8);
    CHECK(tri == oracles::Tri::no);

    CHECK_THROWS_AS(hilbert_symbol(Rat(0), Rat(1), p2), std::invalid_argument);

    // bimultiplicativity and symmetry on random inputs, all places
    std::mt19937_64 rng(23);
    auto rand_rat = [&]() {
        long n = static_cast<long>(rng() % 40) - 20;
        long d = 1 + static_cast<long>(rng() % 12);
        if (n == 0) n = 1;
        return make_rat(n, d);
    };
    std::vector<Place> places{real, p2, p7, Place::prime(Int(3)), Place::prime(Int(5))};
    for (int trial = 0; trial < 100; ++trial) {
        Rat a = rand_rat(), b = rand_rat(), c = rand_rat();
        for (const auto& v : places) {
            CHECK(hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v));
            CHECK(hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v));
        }
    }

    // product formula over all places
    for (int trial = 0; trial < 100; ++trial) {
        Rat a = rand_rat(), b = rand_rat();
        int prod = hilbert_symbol(a, b, real);
        for (const auto& v : relevant_places({a, b}))
            if (!v.real) prod *= hilbert_symbol(a, b, v);
        CHECK(prod == 1);
    }
}

TEST_CASE("local and global isotropy") {
    // dimension 5 nonsingular over Q_7: always isotropic
    CHECK(isotropic_over_qp(qdiag({1, 2, 3, 4, 5}), Place::prime(Int(7))));
    {
        auto tri = oracles::padic_isotropic_dfs({Int(1), Int(2), Int(3), Int(4), Int(5)}, Int(7), 6);
        CHECK(tri == oracles::Tri::yes);
    }

    // positive definite: real obstruction
    auto pd = isotropic_over_q(qdiag({1, 2, 3}));
    CHECK_FALSE(pd.isotropic);
    REQUIRE(pd.obstruction.has_value());
    CHECK(pd.obstruction->real);

    // <1,-1> isotropic with witness (1,1)
    auto hr = isotropic_over_q(qdiag({1, -1}));
    CHECK(hr.isotropic);
    auto w = find_rational_zero(qdiag({1, -1}), 4);
    REQUIRE(w.has_value());
    CHECK(qdiag({1, -1}).evaluate(*w) == Rat(0));

    // norm form of the quaternion algebra (2,3): anisotropic exactly at 2 and 3
    auto qf = qdiag({1, -2, -3, 6});
    CHECK_FALSE(isotropic_over_qp(qf, Place::prime(Int(3))));
    CHECK_FALSE(isotropic_over_qp(qf, Place::prime(Int(2))));
    CHECK(isotropic_over_qp(qf, Place::prime(Int(5))));
    CHECK(oracles::padic_isotropic_dfs({Int(1), Int(-2), Int(-3), Int(6)}, Int(3), 7) ==
          oracles::Tri::no);
    auto qr = isotropic_over_q(qf);
    CHECK_FALSE(qr.isotropic);
    REQUIRE(qr.obstruction.has_value());
    CHECK((qr.obstruction->p == 2 || qr.obstruction->p == 3));

    // Hasse–Minkowski agrees with the certified p-adic oracle on random forms
    std::mt19937_64 rng(29);
    std::vector<Int> ps{Int(2), Int(3), Int(5), Int(7)};
    int done = 0;
    for (int trial = 0; done < 40 && trial < 200; ++trial) {
        int dim = 2 + static_cast<int>(rng() % 3);
        std::vector<Rat> diag;
        std::vector<Int> idiag;
        for (int i = 0; i < dim; ++i) {
            long v = static_cast<long>(rng() % 30) - 15;
            if (v == 0) v = 1;
            diag.push_back(Rat(v));
            idiag.push_back(Int(v));
        }
        auto form = QuadraticForm<QQ>::diagonal(QQ{}, diag);
        for (const auto& p : ps) {
            auto tri = oracles::padic_isotropic_dfs(idiag, p, p == 2 ? 9 : 6);
            if (tri == oracles::Tri::unknown) continue;
            bool lib = isotropic_over_qp(form, Place::prime(p));
            CHECK(lib == (tri == oracles::Tri::yes));
            ++done;
        }
    }
    CHECK(done >= 40);

    // global decisions: true implies every local place passes; witnesses are exact zeros
    for (int trial = 0; trial < 25; ++trial) {
        int dim = 2 + static_cast<int>(rng() % 3);
        std::vector<Rat> diag;
        for (int i = 0; i < dim; ++i) {
            long v = static_cast<long>(rng() % 20) - 10;
            if (v == 0) v = 3;
            diag.push_back(Rat(v));
        }
        auto form = QuadraticForm<QQ>::diagonal(QQ{}, diag);
        auto res = isotropic_over_q(form);
        if (res.isotropic) {
            auto wit = find_rational_zero(form, 60);
            if (wit) CHECK(form.evaluate(*wit) == Rat(0));
        } else {
            REQUIRE(res.obstruction.has_value());
            CHECK_FALSE(isotropic_over_qp(form, *res.obstruction));
        }
    }
}
