#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pencils/arulwang.hpp"
#include "pencils/isotropic.hpp"

using namespace pencils;

namespace {

FqPoly fqpoly(const Fq& f, std::initializer_list<long> coeffs) {
    std::vector<FqElem> c;
    for (long v : coeffs) c.push_back(f.from_int(v));
    return FqPoly(f, std::move(c));
}

// independent oracle: all s-dimensional subspaces by generic RREF
// enumeration, filtered by the bilinear definition
std::vector<std::vector<uint64_t>> brute_catalog_keys(const Pencil<Fq>& p, int s) {
    const Fq& f = p.field();
    const int d = p.dim();
    const uint64_t q = *f.size();
    std::vector<std::vector<uint64_t>> keys;

    std::vector<int> cur(s);
    for (int i = 0; i < s; ++i) cur[i] = i;
    while (true) {
        // free positions for this pivot set
        std::vector<bool> is_pivot(d, false);
        for (int c : cur) is_pivot[c] = true;
        std::vector<std::pair<int, int>> free_pos;  // (row, col)
        for (int r = 0; r < s; ++r)
            for (int c = cur[r] + 1; c < d; ++c)
                if (!is_pivot[c]) free_pos.push_back({r, c});
        std::vector<uint64_t> assign(free_pos.size(), 0);
        while (true) {
            Mat<Fq> b(f, s, d);
            for (int r = 0; r < s; ++r) b.at(r, cur[r]) = f.one();
            for (size_t i = 0; i < free_pos.size(); ++i)
                b.at(free_pos[i].first, free_pos[i].second) = f.elem_at(assign[i]);
            if (is_common_isotropic(Subspace<Fq>(b), p)) {
                std::vector<uint64_t> key;
                for (int r = 0; r < s; ++r)
                    for (int c = 0; c < d; ++c) key.push_back(f.index_of(b.at(r, c)));
                keys.push_back(std::move(key));
            }
            size_t i = free_pos.size();
            bool more = false;
            while (i-- > 0) {
                if (++assign[i] < q) {
                    more = true;
                    break;
                }
                assign[i] = 0;
            }
            if (!more && !free_pos.empty()) break;
            if (free_pos.empty()) break;
        }
        int i = s - 1;
        while (i >= 0 && cur[i] == d - s + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < s; ++j) cur[j] = cur[j - 1] + 1;
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

std::vector<std::vector<uint64_t>> catalog_keys(const IsotropicCatalog& cat, const Fq& f) {
    std::vector<std::vector<uint64_t>> keys;
    for (const auto& m : cat.members) {
        std::vector<uint64_t> key;
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) key.push_back(f.index_of(m.at(r, c)));
        keys.push_back(std::move(key));
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

uint64_t projective_point_count(const Pencil<Fq>& p) {
    const Fq& f = p.field();
    const int d = p.dim();
    const uint64_t q = *f.size();
    uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    uint64_t count = 0;
    for (uint64_t idx = 1; idx < total; ++idx) {
        Vec<Fq> v(d, f.zero());
        uint64_t t = idx;
        for (int i = d - 1; i >= 0; --i) {
            v[i] = f.elem_at(t % q);
            t /= q;
        }
        int lead = -1;
        for (int i = 0; i < d; ++i)
            if (!f.is_zero(v[i])) {
                lead = i;
                break;
            }
        if (!f.eq(v[lead], f.one())) continue;  // one representative per line
        if (f.is_zero(p.q1().evaluate(v)) && f.is_zero(p.q2().evaluate(v))) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("is_common_isotropic") {
    Fq f7(7);
    auto aw = arul_wang_build(fqpoly(f7, {-1, 0, 0, 0, 0, 0, 1}));
    CHECK(is_common_isotropic(aw.witness, aw.pencil));

    // a 1-dim span with Q1(v) != 0 is not isotropic
    Mat<Fq> v(f7, 1, 6);
    v.at(0, 0) = f7.one();
    v.at(0, 5) = f7.one();  // Q1 = antidiagonal: Q1(v) = 2
    CHECK_FALSE(is_common_isotropic(Subspace<Fq>(v), aw.pencil));

    Mat<Fq> bad(f7, 1, 4);
    CHECK_THROWS_AS(is_common_isotropic(Subspace<Fq>(bad), aw.pencil), std::invalid_argument);
}

TEST_CASE("enumeration matches the brute-force subspace filter at q = 3") {
    Fq f3(3);
    auto aw = arul_wang_build(fqpoly(f3, {0, -1, 0, 0, 0, 0, 1}));  // t^6 - t
    for (int s = 1; s <= 3; ++s) {
        auto cat = enumerate_common_isotropic(aw.pencil, s);
        auto fast = catalog_keys(cat, f3);
        auto brute = brute_catalog_keys(aw.pencil, s);
        CHECK(fast == brute);
        CHECK(cat.count == brute.size());
    }

    // a random-looking nonsingular diagonal-ish pencil as a second sample
    std::vector<FqElem> a{f3.one(), f3.one(), f3.from_int(2), f3.one(), f3.from_int(2), f3.one()};
    std::vector<FqElem> al;
    std::vector<long> lam{0, 1, 2, 0, 1, 2};
    Mat<Fq> g2(f3, 6, 6);
    // tridiagonal twist to avoid a plainly diagonal pencil
    for (int i = 0; i < 6; ++i) g2.at(i, i) = f3.from_int(lam[i]);
    g2.at(0, 1) = f3.one();
    g2.at(1, 0) = f3.one();
    Pencil<Fq> p(2, QuadraticForm<Fq>::diagonal(f3, a), QuadraticForm<Fq>(g2));
    if (is_nonsingular(p)) {
        for (int s = 1; s <= 3; ++s) {
            auto cat = enumerate_common_isotropic(p, s);
            CHECK(catalog_keys(cat, f3) == brute_catalog_keys(p, s));
        }
    }
}

TEST_CASE("I_2 count equals the Jacobian order") {
    // q = 7, f = t^6 - 1: two completely independent pipelines
    Fq f7(7);
    auto f = fqpoly(f7, {-1, 0, 0, 0, 0, 0, 1});
    auto aw = arul_wang_build(f);
    auto cat = enumerate_common_isotropic(aw.pencil, 2, {.count_only = true});
    auto jac = jacobian_order(HyperellipticCurve(f));
    CHECK(Int(static_cast<long>(cat.count)) == jac);

    Fq f3(3);
    auto g = fqpoly(f3, {0, -1, 0, 0, 0, 0, 1});
    auto aw3 = arul_wang_build(g);
    auto cat3 = enumerate_common_isotropic(aw3.pencil, 2, {.count_only = true});
    CHECK(Int(static_cast<long>(cat3.count)) == jacobian_order(HyperellipticCurve(g)));
}

TEST_CASE("no common isotropic subspace of dimension g+1") {
    Fq f3(3), f5(5);
    auto aw3 = arul_wang_build(fqpoly(f3, {0, -1, 0, 0, 0, 0, 1}));
    CHECK(enumerate_common_isotropic(aw3.pencil, 3).count == 0);
    auto aw5 = arul_wang_build(fqpoly(f5, {-1, 0, 0, 0, 0, 0, 1}));
    CHECK(enumerate_common_isotropic(aw5.pencil, 3).count == 0);
    // and for a non-standard nonsingular pencil
    std::vector<FqElem> a{f5.one(),        f5.from_int(2), f5.from_int(3),
                          f5.from_int(4),  f5.one(),       f5.from_int(2)};
    std::vector<FqElem> al;
    std::vector<long> lam{0, 1, 2, 3, 4, 1};
    Mat<Fq> g2(f5, 6, 6);
    for (int i = 0; i < 6; ++i) g2.at(i, i) = f5.mul(a[i], f5.from_int(lam[i]));
    g2.at(2, 3) = f5.one();
    g2.at(3, 2) = f5.one();
    Pencil<Fq> p(2, QuadraticForm<Fq>::diagonal(f5, a), QuadraticForm<Fq>(g2));
    if (is_nonsingular(p)) CHECK(enumerate_common_isotropic(p, 3).count == 0);
}

TEST_CASE("I_1 count equals the projective base locus") {
    Fq f5(5);
    auto aw = arul_wang_build(fqpoly(f5, {-1, 0, 0, 0, 0, 0, 1}));
    auto cat = enumerate_common_isotropic(aw.pencil, 1);
    CHECK(cat.count == projective_point_count(aw.pencil));
}

TEST_CASE("solubility search") {
    Fq f5(5);
    auto aw = arul_wang_build(fqpoly(f5, {-1, 0, 0, 0, 0, 0, 1}));
    auto w = soluble_witness(aw.pencil);
    REQUIRE(w.has_value());
    CHECK(w->dim() == 2);
    CHECK(is_common_isotropic(*w, aw.pencil));

    // quartic: the base locus always has a rational point over F_q
    auto aw4 = arul_wang_build(fqpoly(f5, {2, 0, 1, 0, 1}));
    if (is_nonsingular(aw4.pencil)) {
        auto w4 = soluble_witness(aw4.pencil);
        REQUIRE(w4.has_value());
        CHECK(w4->dim() == 1);
    }
}

TEST_CASE("aut action on the line catalog") {
    Fq f7(7);
    auto aw = arul_wang_build(fqpoly(f7, {-1, 0, 0, 0, 0, 0, 1}));
    auto sd = simultaneous_diagonalize(aw.pencil);
    auto group = aut_plus(aw.pencil, sd);
    REQUIRE(group.size() == 16);
    auto cat = enumerate_common_isotropic(aw.pencil, 2);
    REQUIRE(cat.count > 0);

    for (const auto& el : group) {
        REQUIRE(el.rational);
        // restrict the lift to the base field (split case: it already is)
        Mat<Fq> m(f7, 6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) m.at(i, j) = sd.ext.restrict_to_base(el.lift.at(i, j));
        auto act = aut_action(m, cat, aw.pencil);
        if (el.subset.empty()) {
            CHECK(act.fixed_points == cat.count);
        } else {
            CHECK(act.fixed_points == 0);  // free action on the s = g catalog
        }
        // involution: applying twice gives the identity permutation
        for (uint64_t i = 0; i < cat.count; ++i) CHECK(act.perm[act.perm[i]] == i);
    }
}

TEST_CASE("determinism and resource guards") {
    Fq f5(5);
    auto aw = arul_wang_build(fqpoly(f5, {-1, 0, 0, 0, 0, 0, 1}));
    auto c1 = enumerate_common_isotropic(aw.pencil, 2, {.workers = 1});
    auto c4 = enumerate_common_isotropic(aw.pencil, 2, {.workers = 4});
    CHECK(c1.count == c4.count);
    REQUIRE(c1.members.size() == c4.members.size());
    for (size_t i = 0; i < c1.members.size(); ++i) CHECK(c1.members[i] == c4.members[i]);

    auto co = enumerate_common_isotropic(aw.pencil, 2, {.count_only = true});
    CHECK(co.count == c1.count);
    CHECK(co.members.empty());

    CHECK_THROWS_AS(enumerate_common_isotropic(aw.pencil, 2, {.node_cap = 10}), ResourceError);
}
