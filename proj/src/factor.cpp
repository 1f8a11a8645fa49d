#include "pencils/factor.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pencils/matrix.hpp"

namespace pencils {

namespace {

mpz_class field_card(const Fq& f) {
    mpz_class q(1);
    for (int i = 0; i < f.deg(); ++i) q *= static_cast<long>(f.p());
    return q;
}

// next polynomial in the canonical (low-coefficient-first) odometer order
bool next_poly_coeffs(std::vector<int64_t>& c, int64_t p) {
    for (auto& v : c) {
        if (++v < p) return true;
        v = 0;
    }
    return false;
}

void sort_factors(std::vector<std::pair<FqPoly, int>>& fs) {
    std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) {
        if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
        const auto& ca = a.first.coeffs();
        const auto& cb = b.first.coeffs();
        for (size_t i = 0; i < ca.size(); ++i) {
            if (ca[i] < cb[i]) return true;
            if (cb[i] < ca[i]) return false;
        }
        return a.second < b.second;
    });
}

// squarefree part handling: returns list of (g_i, e_i) with g_i squarefree,
// pairwise coprime, f = prod g_i^{e_i} up to lead. Yun's algorithm needs
// char > deg; use the simple repeated-gcd variant that handles p <= deg.
std::vector<std::pair<FqPoly, int>> squarefree_decomposition(FqPoly f) {
    std::vector<std::pair<FqPoly, int>> out;
    const Fq& K = f.field();
    f = f.monic();
    int mult_base = 1;
    while (f.deg() > 0) {
        FqPoly d = f.derivative();
        if (d.is_zero()) {
            // f is a p-th power: f(x) = g(x^p) with g obtained by p-th roots
            int64_t p = K.p();
            std::vector<FqElem> gc;
            for (int i = 0; i <= f.deg(); i += static_cast<int>(p)) {
                // coefficient c of x^{i}: p-th root is c^{p^{k-1}} (Frobenius inverse)
                gc.push_back(K.frobenius_power(f.coeff(i), K.deg() - 1));
            }
            f = FqPoly(K, gc);
            mult_base *= static_cast<int>(p);
            continue;
        }
        FqPoly g = poly_gcd(f, d);
        FqPoly w = f / g;  // product of the factors with multiplicity prime to p
        int e = 1;
        while (w.deg() > 0) {
            FqPoly y = poly_gcd(w, g);
            FqPoly part = w / y;  // factors of multiplicity exactly e
            if (part.deg() > 0) out.push_back({part.monic(), e * mult_base});
            w = y;
            g = g / y;
            ++e;
        }
        f = g;  // what remains has all multiplicities divisible by p
    }
    return out;
}

// distinct-degree: split squarefree monic f into products of irreducibles of
// equal degree d
std::vector<std::pair<FqPoly, int>> distinct_degree(const FqPoly& f) {
    const Fq& K = f.field();
    mpz_class q = field_card(K);
    std::vector<std::pair<FqPoly, int>> out;  // (product, degree d)
    FqPoly rem = f;
    FqPoly x = FqPoly::x(K);
    FqPoly h = x;  // x^{q^d} mod f, built incrementally
    for (int d = 1; rem.deg() >= 2 * d; ++d) {
        h = h.pow_mod(q, rem);
        FqPoly g = poly_gcd(h - x, rem);
        if (g.deg() > 0) {
            out.push_back({g, d});
            rem = rem / g;
            h = h % rem;
        }
    }
    if (rem.deg() > 0) out.push_back({rem, rem.deg()});
    return out;
}

// Cantor–Zassenhaus equal-degree splitting of a product of irreducibles of
// degree d (odd characteristic)
void equal_degree(const FqPoly& f, int d, std::mt19937_64& rng, std::vector<FqPoly>& out) {
    if (f.deg() == d) {
        out.push_back(f.monic());
        return;
    }
    const Fq& K = f.field();
    mpz_class q = field_card(K);
    mpz_class e;
    mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    while (true) {
        // random polynomial of degree < deg f
        std::vector<FqElem> c;
        c.reserve(f.deg());
        for (int i = 0; i < f.deg(); ++i) c.push_back(K.rand_elem(rng));
        FqPoly a(K, c);
        if (a.deg() < 1) continue;
        FqPoly g = poly_gcd(a, f);
        if (g.deg() == 0) {
            g = poly_gcd(a.pow_mod(e, f) - FqPoly::one(K), f);
        }
        if (g.deg() > 0 && g.deg() < f.deg()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FqPoly, int>> factor_over_fq(const FqPoly& f, uint64_t seed) {
    if (f.is_zero()) throw std::invalid_argument("factorization of zero polynomial");
    std::vector<std::pair<FqPoly, int>> out;
    if (f.deg() == 0) return out;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (auto& [g, e] : squarefree_decomposition(f)) {
        for (auto& [prodpoly, d] : distinct_degree(g)) {
            std::vector<FqPoly> irr;
            equal_degree(prodpoly, d, rng, irr);
            for (auto& h : irr) out.push_back({h, e});
        }
    }
    sort_factors(out);
    return out;
}

std::vector<std::pair<FqPoly, int>> factor_trial_division(const FqPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("factorization of zero polynomial");
    const Fq& K = f.field();
    auto qsz = K.size();
    if (!qsz) throw std::invalid_argument("field too large for trial division");
    double budget = 1.0;
    for (int i = 0; i < (f.deg() + 1) / 2; ++i) budget *= static_cast<double>(*qsz);
    if (budget > 2e7) throw std::invalid_argument("trial division bound exceeded");

    std::vector<std::pair<FqPoly, int>> out;
    FqPoly rem = f.monic();
    for (int d = 1; 2 * d <= rem.deg(); ++d) {
        // iterate monic polynomials of degree d in canonical order
        std::vector<int64_t> idx(d, 0);
        bool more = true;
        while (more && 2 * d <= rem.deg()) {
            std::vector<FqElem> c;
            c.reserve(d + 1);
            for (int i = 0; i < d; ++i) c.push_back(K.elem_at(static_cast<uint64_t>(idx[i])));
            c.push_back(K.one());
            FqPoly cand(K, c);
            int mult = 0;
            while ((rem % cand).is_zero()) {
                rem = rem / cand;
                ++mult;
            }
            if (mult > 0) out.push_back({cand, mult});
            // advance odometer over element indices
            more = false;
            for (auto& v : idx) {
                if (static_cast<uint64_t>(++v) < *qsz) {
                    more = true;
                    break;
                }
                v = 0;
            }
        }
    }
    if (rem.deg() > 0) out.push_back({rem, 1});
    sort_factors(out);
    return out;
}

bool is_irreducible(const FqPoly& f) {
    if (f.deg() < 1) return false;
    if (f.deg() == 1) return true;
    const Fq& K = f.field();
    mpz_class q = field_card(K);
    const int n = f.deg();
    FqPoly x = FqPoly::x(K);
    mpz_class qn;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n));
    if (!(x.pow_mod(qn, f) - (x % f)).is_zero()) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool lprime = true;
        for (int dd = 2; dd * dd <= l; ++dd)
            if (l % dd == 0) lprime = false;
        if (!lprime) continue;
        mpz_class qm;
        mpz_pow_ui(qm.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n / l));
        FqPoly g = poly_gcd(x.pow_mod(qm, f) - x, f);
        if (g.deg() != 0) return false;
    }
    return true;
}

std::vector<FqElem> roots_in_field(const FqPoly& f, uint64_t seed) {
    std::vector<FqElem> roots;
    for (auto& [g, e] : factor_over_fq(f, seed)) {
        (void)e;
        if (g.deg() == 1) {
            const Fq& K = f.field();
            roots.push_back(K.neg(g.coeff(0)));
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

FqEmbedding::FqEmbedding(Fq base) : base_(base), top_(base), gen_image_(base.zero()) {
    if (base_.deg() >= 2) gen_image_ = base_.gen();
}

FqEmbedding::FqEmbedding(Fq base, Fq top, FqElem base_gen_image)
    : base_(std::move(base)), top_(std::move(top)), gen_image_(std::move(base_gen_image)) {
    if (top_.p() != base_.p() || top_.deg() % base_.deg() != 0)
        throw std::invalid_argument("incompatible extension");
}

FqElem FqEmbedding::embed(const FqElem& x) const {
    if (base_ == top_) return x;
    // evaluate the coefficient representation at the image of the generator
    FqElem acc = top_.zero();
    for (int i = base_.deg() - 1; i >= 0; --i) {
        acc = top_.mul(acc, gen_image_);
        acc = top_.add(acc, top_.from_int(x.c[i]));
    }
    return acc;
}

bool FqEmbedding::in_base(const FqElem& y) const {
    if (base_ == top_) return true;
    return top_.eq(top_.frobenius_power(y, base_.deg()), y);
}

FqElem FqEmbedding::restrict_to_base(const FqElem& y) const {
    if (base_ == top_) return y;
    // solve sum_i x_i gen_image^i = y over F_p
    const int k = base_.deg(), K = top_.deg();
    Fq fp(base_.p());
    Mat<Fq> A(fp, K, k);
    FqElem pw = top_.one();
    for (int i = 0; i < k; ++i) {
        for (int r = 0; r < K; ++r) A.at(r, i) = fp.from_int(pw.c[r]);
        pw = top_.mul(pw, gen_image_);
    }
    Vec<Fq> b(K, fp.zero());
    for (int r = 0; r < K; ++r) b[r] = fp.from_int(y.c[r]);
    auto sol = A.solve(b);
    if (!sol) throw std::domain_error("element is not in the base field");
    // verify (solve() gives some solution; the system is consistent only for
    // genuine base elements, but re-check exactly)
    std::vector<int64_t> coeffs(k);
    for (int i = 0; i < k; ++i) coeffs[i] = sol->at(i).c[0];
    FqElem cand = base_.make(coeffs);
    if (!top_.eq(embed(cand), y)) throw std::domain_error("element is not in the base field");
    return cand;
}

FqElem FqEmbedding::rel_frobenius(const FqElem& y, long e) const {
    return top_.frobenius_power(y, e * base_.deg());
}

FqEmbedding embed_into(const Fq& sub, const Fq& super) {
    if (sub.p() != super.p() || super.deg() % sub.deg() != 0)
        throw std::invalid_argument("no embedding between these fields");
    if (sub == super) return FqEmbedding(sub);
    if (sub.deg() == 1) return FqEmbedding(sub, super, super.zero());
    std::vector<FqElem> mc;
    for (int64_t c : sub.modulus()) mc.push_back(super.from_int(c));
    FqPoly submod(super, mc);
    auto rts = roots_in_field(submod, /*seed=*/1);
    if (rts.empty()) throw std::logic_error("subfield modulus has no root in the extension");
    return FqEmbedding(sub, super, rts.front());
}

FqEmbedding extend_field(const Fq& base, int m) {
    if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
    if (m == 1) return FqEmbedding(base);
    const int K = base.deg() * m;
    Fq top(base.p(), first_irreducible(base.p(), K));
    return embed_into(base, top);
}

SplittingField splitting_field(const FqPoly& f, uint64_t seed) {
    if (!poly_squarefree(f)) throw std::invalid_argument("splitting field of non-squarefree input");
    auto factors = factor_over_fq(f, seed);
    long m = 1;
    for (auto& [g, e] : factors) m = std::lcm(m, static_cast<long>(g.deg()));
    const Fq& base = f.field();
    FqEmbedding ext = extend_field(base, static_cast<int>(m));
    const Fq& top = ext.top();
    std::vector<FqElem> mc;
    for (auto& c : f.coeffs()) mc.push_back(ext.embed(c));
    FqPoly ftop(top, mc);
    auto roots = roots_in_field(ftop, seed);
    if (static_cast<int>(roots.size()) != f.deg())
        throw std::logic_error("polynomial did not split in computed splitting field");
    return SplittingField{std::move(ext), std::move(roots)};
}

}  // namespace pencils
