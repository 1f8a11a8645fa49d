#include "pencils/hyperell.hpp"

#include <algorithm>
#include <thread>

#include "pencils/pencil.hpp"

namespace pencils {

namespace {

uint64_t checked_pow(uint64_t q, int m) {
    uint64_t r = 1;
    for (int i = 0; i < m; ++i) {
        if (r > kEnumerationBound / q + 1) return UINT64_MAX;
        r *= q;
    }
    return r;
}

// affine count over the field of fpoly
uint64_t affine_count(const FqPoly& fpoly, int workers) {
    const Fq& k = fpoly.field();
    uint64_t q = *k.size();
    // square indicator by index
    std::vector<uint8_t> is_sq(q, 0);
    for (uint64_t i = 0; i < q; ++i) {
        auto x = k.elem_at(i);
        is_sq[k.index_of(k.mul(x, x))] = 1;
    }
    workers = std::max(1, workers);
    std::vector<uint64_t> partial(workers, 0);
    auto run = [&](int w) {
        uint64_t cnt = 0;
        for (uint64_t i = w; i < q; i += workers) {
            auto v = fpoly.eval(k.elem_at(i));
            if (k.is_zero(v))
                cnt += 1;
            else
                cnt += 2 * is_sq[k.index_of(v)];
        }
        partial[w] = cnt;
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> ths;
        for (int w = 0; w < workers; ++w) ths.emplace_back(run, w);
        for (auto& t : ths) t.join();
    }
    uint64_t total = 0;
    for (uint64_t c : partial) total += c;
    return total;
}

}  // namespace

uint64_t count_points(const HyperellipticCurve& c, int m, int workers) {
    const Fq& base = c.field();
    auto qopt = base.size();
    if (!qopt || checked_pow(*qopt, m) > kEnumerationBound)
        throw ResourceError("q^m exceeds the enumeration bound");
    if (m == 1) return affine_count(c.f(), workers) + 2;
    FqEmbedding ext = extend_field(base, m);
    std::vector<FqElem> fc;
    for (auto& cc : c.f().coeffs()) fc.push_back(ext.embed(cc));
    FqPoly ftop(ext.top(), fc);
    // monic model: the two points at infinity are rational in every extension
    return affine_count(ftop, workers) + 2;
}

std::vector<Int> zeta_numerator(const HyperellipticCurve& c, int workers) {
    const int g = c.genus();
    if (g > 3) throw std::invalid_argument("zeta computation supports genus <= 3");
    Int q(static_cast<long>(c.field().p()));
    Int qq(1);
    for (int i = 0; i < c.field().deg(); ++i) qq *= q;

    // power sums s_r = q^r + 1 - N_r of the Frobenius eigenvalues
    std::vector<Int> s(g + 1);
    Int qr(1);
    for (int r = 1; r <= g; ++r) {
        qr *= qq;
        s[r] = qr + 1 - Int(static_cast<long>(count_points(c, r, workers)));
    }
    // Newton identities for e_1..e_g
    std::vector<Int> e(g + 1);
    e[0] = 1;
    for (int i = 1; i <= g; ++i) {
        Int acc(0);
        for (int j = 1; j <= i; ++j) {
            Int term = e[i - j] * s[j];
            acc += (j % 2 == 1) ? term : -term;
        }
        // acc = i * e_i  (alternating Newton identity)
        if (!mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(i)))
            throw std::logic_error("Newton identity division must be exact");
        e[i] = acc / i;
    }
    // P(T) = sum c_i T^i with c_i = (-1)^i e_i for i <= g and the functional
    // equation c_{2g-i} = q^{g-i} c_i for the top half
    std::vector<Int> coef(2 * g + 1);
    for (int i = 0; i <= g; ++i) coef[i] = (i % 2 == 0) ? e[i] : -e[i];
    for (int i = g + 1; i <= 2 * g; ++i) {
        Int qpow(1);
        for (int j = 0; j < i - g; ++j) qpow *= qq;
        coef[i] = coef[2 * g - i] * qpow;
    }
    return coef;
}

Int jacobian_order(const HyperellipticCurve& c, int workers) {
    auto coef = zeta_numerator(c, workers);
    Int total(0);
    for (const Int& v : coef) total += v;
    if (total <= 0) throw std::logic_error("Jacobian order must be positive");
    return total;
}

bool in_weil_interval(const Int& n, const Int& q, int g) {
    // (sqrt(q) +- 1)^{2g} = A +- B sqrt(q) with A, B >= 0 integers
    Int a(1), b(0);
    for (int i = 0; i < 2 * g; ++i) {
        Int a2 = a + b * q;  // (a + b sqrt q)(1 + sqrt q) = (a + bq) + (a + b) sqrt q
        Int b2 = a + b;
        a = a2;
        b = b2;
    }
    // upper: n <= A + B sqrt q  <=>  n - A <= B sqrt q
    Int d = n - a;
    bool upper_ok = d <= 0 || d * d <= b * b * q;
    // lower: A - B sqrt q <= n  <=>  A - n <= B sqrt q
    Int d2 = a - n;
    bool lower_ok = d2 <= 0 || d2 * d2 <= b * b * q;
    return upper_ok && lower_ok;
}

TwoTorsionGroup two_torsion(const HyperellipticCurve& c, uint64_t seed) {
    auto sf = splitting_field(c.f(), seed);
    const Fq& top = sf.ext.top();
    auto factors = factor_over_fq(c.f(), seed);
    const int d = c.f().deg();

    // orbit of each root = the irreducible factor it satisfies
    std::vector<std::vector<int>> orbits(factors.size());
    for (int i = 0; i < d; ++i) {
        bool placed = false;
        for (size_t j = 0; j < factors.size() && !placed; ++j) {
            std::vector<FqElem> fc;
            for (auto& cc : factors[j].first.coeffs()) fc.push_back(sf.ext.embed(cc));
            FqPoly fj(top, fc);
            if (top.is_zero(fj.eval(sf.roots[i]))) {
                orbits[j].push_back(i);
                placed = true;
            }
        }
        if (!placed) throw std::logic_error("root does not satisfy any factor");
    }

    std::vector<std::vector<int>> classes;
    for (uint32_t mask = 0; mask < (1u << factors.size()); ++mask) {
        int total = 0;
        for (size_t j = 0; j < factors.size(); ++j)
            if (mask & (1u << j)) total += factors[j].first.deg();
        if (total % 2 != 0) continue;
        std::vector<int> s;
        for (size_t j = 0; j < factors.size(); ++j)
            if (mask & (1u << j)) s.insert(s.end(), orbits[j].begin(), orbits[j].end());
        classes.push_back(canonical_subset(s, d));
    }
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return TwoTorsionGroup{std::move(sf), std::move(classes)};
}

OddModel OddModel::from_curve(const HyperellipticCurve& c, uint64_t seed) {
    if (c.genus() != 2) throw std::invalid_argument("Cantor oracle is genus-2 only");
    const Fq& k = c.field();
    auto rts = roots_in_field(c.f(), seed);
    if (rts.empty())
        throw std::invalid_argument(
            "no rational Weierstrass point: the odd-model oracle needs a root of f in F_q");
    const FqElem lambda = rts.front();
    const int d = c.f().deg();

    // b_j: Taylor coefficients of f at lambda
    std::vector<FqElem> b(d + 1, k.zero());
    {
        FqPoly rem = c.f();
        FqPoly lin(k, {k.neg(lambda), k.one()});
        for (int j = 0; j <= d; ++j) {
            auto [quot, r] = rem.divmod(lin);
            b[j] = r.is_zero() ? k.zero() : r.coeff(0);
            rem = quot;
        }
    }
    if (!k.is_zero(b[0])) throw std::logic_error("lambda must be a root");
    // g(s) = s^d f(lambda + 1/s) = sum_{j>=1} b_j s^{d-j}, degree d-1, lead b_1 = f'(lambda)
    const int dd = d - 1;  // 2g+1
    FqElem a = b[1];
    // monic model h(x) = x^dd + sum_{j<dd} g_j a^{dd-1-j} x^j with g_j = b_{d-j}
    std::vector<FqElem> hc(dd + 1, k.zero());
    hc[dd] = k.one();
    for (int j = 0; j < dd; ++j) {
        FqElem gj = b[d - j];
        FqElem apow = k.one();
        for (int i = 0; i < dd - 1 - j; ++i) apow = k.mul(apow, a);
        hc[j] = k.mul(gj, apow);
    }
    FqPoly h(k, hc);
    if (!poly_squarefree(h)) throw std::logic_error("odd model must stay squarefree");
    return OddModel(std::move(h), c.genus());
}

MumfordDivisor OddModel::identity() const {
    const Fq& k = field();
    return {FqPoly::one(k), FqPoly::zero(k)};
}

bool OddModel::is_valid(const MumfordDivisor& d) const {
    if (d.u.is_zero() || !d.u.is_monic()) return false;
    if (d.u.deg() > g_) return false;
    if (!d.v.is_zero() && d.v.deg() >= d.u.deg()) return false;
    return ((d.v * d.v - h_) % d.u).is_zero();
}

MumfordDivisor OddModel::negate(const MumfordDivisor& d) const {
    return {d.u, (-d.v) % d.u};
}

MumfordDivisor OddModel::add(const MumfordDivisor& d1, const MumfordDivisor& d2) const {
    const Fq& k = field();
    // Cantor composition
    auto g1 = poly_xgcd(d1.u, d2.u);                 // g1.g = e1 u1 + e2 u2
    auto g2 = poly_xgcd(g1.g, d1.v + d2.v);          // g2.g = c1 g1.g + c2 (v1+v2)
    FqPoly dgcd = g2.g;
    FqPoly s1 = g2.u * g1.u, s2 = g2.u * g1.v, s3 = g2.v;
    FqPoly u = (d1.u * d2.u) / (dgcd * dgcd);
    FqPoly num = s1 * d1.u * d2.v + s2 * d2.u * d1.v + s3 * (d1.v * d2.v + h_);
    auto [vq, vr] = num.divmod(dgcd);
    if (!vr.is_zero()) throw std::logic_error("Cantor composition division must be exact");
    FqPoly v = vq % u;
    // reduction
    while (u.deg() > g_) {
        FqPoly unext = (h_ - v * v) / u;
        unext = unext.monic();
        v = (-v) % unext;
        u = unext;
    }
    u = u.monic();
    v = v % u;
    (void)k;
    return {u, v};
}

std::vector<MumfordDivisor> OddModel::enumerate_group() const {
    const Fq& k = field();
    auto qopt = k.size();
    if (!qopt || *qopt * *qopt > kEnumerationBound)
        throw ResourceError("field too large for group enumeration");
    const uint64_t q = *qopt;
    std::vector<MumfordDivisor> out;
    out.push_back(identity());
    // degree 1: u = x - a, v = b with b^2 = h(a)
    for (uint64_t ia = 0; ia < q; ++ia) {
        FqElem av = k.elem_at(ia);
        FqPoly u(k, {k.neg(av), k.one()});
        FqElem ha = h_.eval(av);
        for (uint64_t ib = 0; ib < q; ++ib) {
            FqElem bv = k.elem_at(ib);
            if (k.eq(k.mul(bv, bv), ha)) out.push_back({u, FqPoly::constant(k, bv)});
        }
    }
    // degree 2: u = x^2 + c1 x + c0, v = v1 x + v0 with u | v^2 - h
    for (uint64_t ic1 = 0; ic1 < q; ++ic1)
        for (uint64_t ic0 = 0; ic0 < q; ++ic0) {
            FqPoly u(k, {k.elem_at(ic0), k.elem_at(ic1), k.one()});
            for (uint64_t iv1 = 0; iv1 < q; ++iv1)
                for (uint64_t iv0 = 0; iv0 < q; ++iv0) {
                    FqPoly v(k, {k.elem_at(iv0), k.elem_at(iv1)});
                    if (((v * v - h_) % u).is_zero()) out.push_back({u, v});
                }
        }
    return out;
}

uint64_t brute_two_torsion_count(const HyperellipticCurve& c, uint64_t seed) {
    auto model = OddModel::from_curve(c, seed);
    auto all = model.enumerate_group();
    auto id = model.identity();
    uint64_t count = 0;
    for (const auto& d : all)
        if (model.add(d, d) == id) ++count;
    return count;
}

}  // namespace pencils
