#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pencils/hyperell.hpp"
#include "pencils/pencil.hpp"

using namespace pencils;

namespace {

FqPoly fqpoly(const Fq& f, std::initializer_list<long> coeffs) {
    std::vector<FqElem> c;
    for (long v : coeffs) c.push_back(f.from_int(v));
    return FqPoly(f, std::move(c));
}

HyperellipticCurve curve(const Fq& f, std::initializer_list<long> coeffs) {
    return HyperellipticCurve(fqpoly(f, coeffs));
}

}  // namespace

TEST_CASE("point counts") {
    Fq f7(7), f5(5);
    CHECK(count_points(curve(f7, {-1, 0, 0, 0, 0, 0, 1}), 1) == 8);
    CHECK(count_points(curve(f5, {-1, 0, 0, 0, 0, 0, 1}), 1) == 6);
    // y^2 = t^6 - t over F_3
    CHECK(count_points(curve(Fq(3), {0, -1, 0, 0, 0, 0, 1}), 1) == 4);
    // at least the two points at infinity, also over extensions
    auto c5 = curve(f5, {-1, 0, 0, 0, 0, 0, 1});
    for (int m = 1; m <= 3; ++m) CHECK(count_points(c5, m) >= 2);
    // resource bound is a hard refusal
    CHECK_THROWS_AS(count_points(c5, 12), ResourceError);
    // worker partitioning does not change the count
    CHECK(count_points(c5, 2, 4) == count_points(c5, 2, 1));
}

TEST_CASE("zeta numerator and jacobian order") {
    Fq f3(3);
    auto c = curve(f3, {0, -1, 0, 0, 0, 0, 1});  // y^2 = t^6 - t
    auto coef = zeta_numerator(c);
    REQUIRE(coef.size() == 5);
    CHECK(coef[0] == 1);
    // functional equation: c_3 = q c_1, c_4 = q^2
    CHECK(coef[3] == 3 * coef[1]);
    CHECK(coef[4] == 9);
    Int order = jacobian_order(c);
    CHECK(order > 0);
    CHECK(in_weil_interval(order, Int(3), 2));

    // the numerator computed from N_1, N_2 must predict N_3 exactly
    Int e1 = -coef[1], e2 = coef[2], e3 = -coef[3];
    Int p1 = e1;
    Int p2 = e1 * p1 - 2 * e2;
    Int p3 = e1 * p2 - e2 * p1 + 3 * e3;
    Int predicted = Int(27) + 1 - p3;
    CHECK(Int(static_cast<long>(count_points(c, 3))) == predicted);

    // Weil interval is tight enough to reject wild values
    CHECK_FALSE(in_weil_interval(Int(1000), Int(3), 2));
    CHECK_FALSE(in_weil_interval(Int(0), Int(3), 2));

    // jacobian order matches the Cantor enumeration oracle (independent path)
    auto model = OddModel::from_curve(c);
    CHECK(Int(static_cast<long>(model.enumerate_group().size())) == order);
}

TEST_CASE("jacobian order vs cantor for several F_3 curves") {
    Fq f3(3);
    // monic squarefree sextics over F_3 with a rational Weierstrass point
    std::vector<std::vector<long>> polys{
        {0, -1, 0, 0, 0, 0, 1},   // t^6 - t
        {0, 1, 0, 0, 1, 0, 1},    // t^6 + t^4 + t
        {0, 2, 1, 0, 0, 1, 1},    //
        {0, 1, 2, 1, 0, 0, 1},    //
    };
    int tested = 0;
    for (const auto& pc : polys) {
        std::vector<FqElem> c;
        for (long v : pc) c.push_back(f3.from_int(v));
        FqPoly f(f3, c);
        if (!poly_squarefree(f)) continue;
        HyperellipticCurve cur(f);
        auto ord = jacobian_order(cur);
        auto model = OddModel::from_curve(cur);
        auto group = model.enumerate_group();
        CHECK(Int(static_cast<long>(group.size())) == ord);
        // 2-torsion count divides the order (Lagrange)
        auto tt = two_torsion(cur);
        CHECK(mpz_divisible_ui_p(ord.get_mpz_t(), tt.classes.size()));
        ++tested;
    }
    CHECK(tested >= 3);
}

TEST_CASE("two torsion groups") {
    Fq f7(7), f5(5);
    auto t7 = two_torsion(curve(f7, {-1, 0, 0, 0, 0, 0, 1}));
    CHECK(t7.classes.size() == 16);
    auto t5 = two_torsion(curve(f5, {-1, 0, 0, 0, 0, 0, 1}));
    CHECK(t5.classes.size() == 4);

    // irreducible sextic: trivial group
    Fq f3(3);
    auto mod = first_irreducible(3, 6);
    std::vector<FqElem> c;
    for (auto v : mod) c.push_back(f3.from_int(v));
    FqPoly irr(f3, c);
    auto ti = two_torsion(HyperellipticCurve(irr));
    CHECK(ti.classes.size() == 1);
    CHECK(ti.classes[0].empty());

    // classes are closed under symmetric difference (group law)
    for (const auto& a : t5.classes)
        for (const auto& b : t5.classes) {
            std::vector<int> sym;
            std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                          std::back_inserter(sym));
            auto canon = canonical_subset(sym, 6);
            CHECK(std::find(t5.classes.begin(), t5.classes.end(), canon) != t5.classes.end());
        }
}

TEST_CASE("cantor arithmetic") {
    Fq f5(5);
    auto c = curve(f5, {-1, 0, 0, 0, 0, 0, 1});
    auto model = OddModel::from_curve(c);
    auto group = model.enumerate_group();
    auto id = model.identity();
    REQUIRE(group.size() >= 4);

    for (const auto& d : group) {
        CHECK(model.is_valid(d));
        CHECK(model.add(d, id) == d);
        CHECK(model.add(d, model.negate(d)) == id);
    }

    // associativity on 100 pseudorandom triples
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        const auto& a = group[rng() % group.size()];
        const auto& b = group[rng() % group.size()];
        const auto& e = group[rng() % group.size()];
        CHECK(model.add(model.add(a, b), e) == model.add(a, model.add(b, e)));
    }

    // sums stay in the enumerated group (closure spot check)
    for (int trial = 0; trial < 50; ++trial) {
        const auto& a = group[rng() % group.size()];
        const auto& b = group[rng() % group.size()];
        auto s = model.add(a, b);
        CHECK(model.is_valid(s));
        CHECK(std::find(group.begin(), group.end(), s) != group.end());
    }

    CHECK_FALSE(model.is_valid(MumfordDivisor{fqpoly(f5, {0, 0, 1}), fqpoly(f5, {1})}));
}

TEST_CASE("brute two torsion scan matches the subset model") {
    Fq f5(5), f3(3);
    CHECK(brute_two_torsion_count(curve(f5, {-1, 0, 0, 0, 0, 0, 1})) == 4);
    // counts are powers of two and match two_torsion wherever both run
    std::vector<std::pair<long, std::vector<long>>> cases{
        {5, {-1, 0, 0, 0, 0, 0, 1}},
        {3, {0, -1, 0, 0, 0, 0, 1}},
        {3, {0, 1, 0, 0, 1, 0, 1}},
        {5, {0, 3, 1, 0, 0, 0, 1}},
    };
    for (auto& [p, pc] : cases) {
        Fq fp(p);
        std::vector<FqElem> cc;
        for (long v : pc) cc.push_back(fp.from_int(v));
        FqPoly f(fp, cc);
        if (!poly_squarefree(f)) continue;
        HyperellipticCurve cur(f);
        auto brute = brute_two_torsion_count(cur);
        auto subsets = two_torsion(cur).classes.size();
        CHECK(brute == subsets);
        CHECK((brute & (brute - 1)) == 0);  // power of two
    }
}

TEST_CASE("model validation") {
    Fq f5(5);
    CHECK_THROWS_AS(curve(f5, {1, 2, 1}), std::invalid_argument);           // degree 2
    CHECK_THROWS_AS(curve(f5, {1, 0, 0, 0, 0, 1}), std::invalid_argument);  // odd degree
    CHECK_THROWS_AS(curve(f5, {0, 0, 1, 0, 0, 0, 1}), std::invalid_argument);  // t^2(t^4+1)
    // no rational Weierstrass point: odd model refuses
    auto irr2 = fqpoly(f5, {2, 0, 1});  // t^2 + 2 irreducible over F_5
    REQUIRE(is_irreducible(irr2));
    auto irr3 = fqpoly(f5, {1, 2, 0, 1});
    if (is_irreducible(irr3)) {
        auto f = irr2 * irr2;  // fake; build squarefree sextic instead
    }
    // t^6 + t^3 + 1? just use a known rootless squarefree sextic: (t^2+2)(t^4+2)
    auto f = irr2 * fqpoly(f5, {2, 0, 0, 0, 1});
    if (poly_squarefree(f)) {
        bool has_root = !roots_in_field(f).empty();
        if (!has_root) CHECK_THROWS_AS(OddModel::from_curve(HyperellipticCurve(f)),
                                       std::invalid_argument);
    }
}
