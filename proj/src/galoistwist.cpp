#include "pencils/galoistwist.hpp"

#include <algorithm>
#include <numeric>

namespace pencils {

namespace {

std::vector<int> perm_subset(const std::vector<int>& perm, const std::vector<int>& s) {
    std::vector<int> out;
    out.reserve(s.size());
    for (int i : s) out.push_back(perm[i]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> symdiff(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// norm of the subset value over m Frobenius steps, canonicalized
std::vector<int> subset_norm(const std::vector<int>& s, const std::vector<int>& frob, int m,
                             int dim) {
    std::vector<int> acc;
    std::vector<int> cur = s;
    for (int i = 0; i < m; ++i) {
        acc = symdiff(acc, cur);
        cur = perm_subset(frob, cur);
    }
    return canonical_subset(acc, dim);
}

struct Workspace {
    Fq e;                  // working extension E of the base field
    FqEmbedding base_emb;  // base -> E, coherent with top_emb
    FqEmbedding top_emb;   // splitting field -> E
    int level;             // [E : base]
    Mat<Fq> q1, q2;        // Grams over E
    Mat<Fq> lift;          // cocycle value lift over E

    // Frobenius of the base field, acting entrywise
    FqElem frob(const FqElem& x) const { return e.frobenius_power(x, base_emb.base().deg()); }
    Mat<Fq> frob(const Mat<Fq>& m) const {
        Mat<Fq> out(e, m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) out.at(i, j) = frob(m.at(i, j));
        return out;
    }
};

Workspace make_workspace(const Pencil<Fq>& p, const SplittingData& sd,
                         const std::vector<int>& subset, int level) {
    const Fq& base = p.field();
    Fq e(base.p(), first_irreducible(base.p(), base.deg() * level));
    FqEmbedding top_emb = embed_into(sd.ext.top(), e);
    // route base -> splitting field -> E so every embedded datum is coherent
    FqElem gen_img = base.deg() >= 2 ? top_emb.embed(sd.ext.embed(base.gen())) : e.zero();
    FqEmbedding base_emb(base, e, gen_img);

    const int d = p.dim();
    Mat<Fq> q1(e, d, d), q2(e, d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            q1.at(i, j) = base_emb.embed(p.q1().gram().at(i, j));
            q2.at(i, j) = base_emb.embed(p.q2().gram().at(i, j));
        }
    auto el = make_aut_element(sd, subset);
    Mat<Fq> lift(e, d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) lift.at(i, j) = top_emb.embed(el.lift.at(i, j));
    return Workspace{std::move(e), std::move(base_emb), std::move(top_emb),
                     level,        std::move(q1),       std::move(q2),
                     std::move(lift)};
}

// extract the scalar of a scalar matrix, or nothing
std::optional<FqElem> scalar_of(const Mat<Fq>& m) {
    const Fq& f = m.field();
    FqElem c = m.at(0, 0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (i == j && !f.eq(m.at(i, j), c)) return std::nullopt;
            if (i != j && !f.is_zero(m.at(i, j))) return std::nullopt;
        }
    return c;
}

// d-th roots of unity in E, sorted canonically
std::vector<FqElem> roots_of_unity(const Fq& e, int d) {
    std::vector<FqElem> c(d + 1, e.zero());
    c[0] = e.neg(e.one());
    c[d] = e.one();
    FqPoly xd1(e, c);
    return roots_in_field(xd1, /*seed=*/1);
}

}  // namespace

GaloisCocycle cocycle_from_two_torsion(const std::vector<int>& cls, int m, const Pencil<Fq>& p,
                                       const SplittingData& sd) {
    auto s = canonical_subset(cls, sd.dim());
    // the value must live in Aut^+(F_{q^m}): stable under phi^m modulo complement
    std::vector<int> img = s;
    for (int i = 0; i < m; ++i) img = perm_subset(sd.frob, img);
    if (canonical_subset(img, sd.dim()) != s)
        throw std::invalid_argument("class is not defined at this level");
    if (!subset_norm(s, sd.frob, m, sd.dim()).empty())
        throw std::invalid_argument("symmetric-difference orbit does not close into a cocycle");
    (void)p;
    return GaloisCocycle{m, std::move(s)};
}

CocycleValidation validate_cocycle(const GaloisCocycle& c, const Pencil<Fq>& p,
                                   const SplittingData& sd) {
    CocycleValidation out;
    const int d = p.dim();
    int level = static_cast<int>(std::lcm(static_cast<long>(c.m),
                                          static_cast<long>(sd.ext.rel_degree())));
    out.level = level;
    std::vector<int> s;
    try {
        s = canonical_subset(c.subset, d);
    } catch (const std::invalid_argument& e) {
        out.reason = e.what();
        return out;
    }
    if (!subset_norm(s, sd.frob, level, d).empty()) {
        out.reason = "norm of the cocycle value is nontrivial";
        return out;
    }

    Workspace w = make_workspace(p, sd, s, level);
    const Fq& e = w.e;
    // A_i by the cocycle recursion
    std::vector<Mat<Fq>> a;
    a.push_back(Mat<Fq>::identity(e, d));
    for (int i = 1; i <= level; ++i) a.push_back(w.lift * w.frob(a[i - 1]));
    // the epsilon table must be scalar with values in mu_{2n+2}
    out.epsilon.assign(level, std::vector<FqElem>(level, e.one()));
    for (int i = 0; i < level; ++i) {
        Mat<Fq> phi_i_a(e, d, d);
        for (int j = 0; j < level; ++j) {
            Mat<Fq> aj = a[j];
            for (int t = 0; t < i; ++t) aj = w.frob(aj);
            Mat<Fq> eps = a[i] * aj * a[(i + j) % level].inverse();
            auto sc = scalar_of(eps);
            if (!sc) {
                out.reason = "lift products are not scalar";
                return out;
            }
            FqElem pw = e.one();
            for (int t = 0; t < d; ++t) pw = e.mul(pw, *sc);
            if (!e.eq(pw, e.one())) {
                out.reason = "epsilon value is not a 2n+2 root of unity";
                return out;
            }
            out.epsilon[i][j] = *sc;
        }
    }
    out.valid = true;
    return out;
}

TwistResult twist_pencil(const Pencil<Fq>& p, const GaloisCocycle& c, uint64_t seed,
                         int max_growth_doublings) {
    const Fq& base = p.field();
    auto sd = simultaneous_diagonalize(p, seed);
    const int d = p.dim();
    auto s = canonical_subset(c.subset, d);

    int level0 = static_cast<int>(std::lcm(static_cast<long>(c.m),
                                           static_cast<long>(sd.ext.rel_degree())));
    if (!subset_norm(s, sd.frob, level0, d).empty())
        throw std::invalid_argument("invalid cocycle: nontrivial norm");

    for (int growth = 0; growth <= max_growth_doublings; ++growth) {
        const int level = level0 << growth;
        Workspace w = make_workspace(p, sd, s, level);
        const Fq& e = w.e;

        // cocycle lifts
        std::vector<Mat<Fq>> a;
        a.push_back(Mat<Fq>::identity(e, d));
        for (int i = 1; i <= level; ++i) a.push_back(w.lift * w.frob(a[i - 1]));
        // eps(1, i) = A phi(A_i) A_{i+1 mod level}^{-1}; by construction this
        // is the identity except at the wraparound, where it is +-1
        auto wrap = scalar_of(a[level]);
        if (!wrap) throw std::logic_error("cocycle norm lift must be scalar");

        // split epsilon: g_0 = 1, g_{i+1} = z phi(g_i) eps(1,i)^{-1}; only the
        // wraparound eps matters, so the condition is Norm(z) = wrap scalar
        auto mus = roots_of_unity(e, d);
        std::optional<FqElem> zfound;
        std::vector<FqElem> g(level + 1, e.one());
        for (const auto& z : mus) {
            g.assign(level + 1, e.one());
            for (int i = 1; i <= level; ++i) {
                FqElem gi = e.mul(z, w.frob(g[i - 1]));
                if (i == level) gi = e.div(gi, *wrap);
                g[i] = gi;
            }
            if (e.eq(g[level], e.one())) {
                zfound = z;
                break;
            }
        }
        if (!zfound) {
            if (growth == max_growth_doublings)
                throw ExtensionGrowthError(
                    "no mu-valued splitting in the working extension: raise the level");
            continue;
        }
        g.pop_back();  // g_0..g_{level-1}

        // B_i = g_i^{-1} A_i has similitude factor mu_i = g_i^{-2}; find theta
        // with theta^{-1} phi(theta) = mu_1 by the averaging construction
        FqElem mu1 = e.inv(e.mul(g[1], g[1]));
        std::vector<FqElem> n(level, e.one());
        for (int i = 1; i < level; ++i) n[i] = e.mul(e.inv(mu1), w.frob(n[i - 1]));
        FqElem theta = e.zero();
        for (uint64_t ci = 1; e.is_zero(theta); ++ci) {
            FqElem cand = e.elem_at(ci % *e.size() == 0 ? 1 : ci % *e.size());
            FqElem acc = e.zero();
            FqElem img = cand;
            for (int i = 0; i < level; ++i) {
                acc = e.add(acc, e.mul(n[i], img));
                img = w.frob(img);
            }
            // acc = sum n_i phi^i(cand)
            theta = acc;
            if (ci > 4 * *e.size()) throw std::logic_error("Hilbert 90 search failed");
        }
        // orientation check
        if (!e.eq(e.div(w.frob(theta), theta), mu1)) {
            // try the inverse orientation
            std::vector<FqElem> n2(level, e.one());
            for (int i = 1; i < level; ++i) n2[i] = e.mul(mu1, w.frob(n2[i - 1]));
            theta = e.zero();
            for (uint64_t ci = 1; e.is_zero(theta); ++ci) {
                FqElem cand = e.elem_at(ci % *e.size() == 0 ? 1 : ci % *e.size());
                FqElem acc = e.zero();
                FqElem img = cand;
                for (int i = 0; i < level; ++i) {
                    acc = e.add(acc, e.mul(n2[i], img));
                    img = w.frob(img);
                }
                theta = acc;
                if (ci > 4 * *e.size()) throw std::logic_error("Hilbert 90 search failed");
            }
            theta = e.inv(theta);
        }
        if (!e.eq(e.div(w.frob(theta), theta), mu1))
            throw std::logic_error("Hilbert 90 certificate failed");

        auto delta = e.sqrt(theta);
        if (!delta) {
            if (growth == max_growth_doublings)
                throw ExtensionGrowthError("theta is not a square in the working extension");
            continue;
        }

        // C = (delta / phi(delta)) g_1^{-1} A: a 1-cocycle in SO(Q1) cap SO(Q2)
        FqElem scale = e.div(*delta, w.frob(*delta));
        Mat<Fq> cmat = w.lift.scale(e.div(scale, g[1]));
        // exact certificates
        if (!(cmat.transpose() * w.q1 * cmat == w.q1) ||
            !(cmat.transpose() * w.q2 * cmat == w.q2))
            throw std::logic_error("rescaled cocycle must be an isometry of both forms");
        {
            Mat<Fq> acc = Mat<Fq>::identity(e, d);
            for (int i = 0; i < level; ++i) acc = cmat * w.frob(acc);
            if (!(acc == Mat<Fq>::identity(e, d)))
                throw std::logic_error("rescaled cocycle must have trivial norm");
        }

        // descent: fixed space of x -> C phi(x), solved over F_p
        Fq fp(base.p());
        const int K = e.deg();
        Mat<Fq> system(fp, d * K, d * K);
        for (int col = 0; col < d * K; ++col) {
            // basis vector: coordinate col = (component, power) over F_p
            Vec<Fq> x(d, e.zero());
            std::vector<int64_t> coeffs(K, 0);
            coeffs[col % K] = 1;
            x[col / K] = e.make(coeffs);
            // tau(x) - x
            Vec<Fq> fx(d, e.zero());
            for (int i = 0; i < d; ++i) fx[i] = w.frob(x[i]);
            Vec<Fq> tx = cmat.apply(fx);
            for (int i = 0; i < d; ++i) tx[i] = e.sub(tx[i], x[i]);
            for (int i = 0; i < d; ++i)
                for (int r = 0; r < K; ++r)
                    system.at(i * K + r, col) = fp.from_int(tx[i].c[r]);
        }
        Mat<Fq> ker = system.kernel();  // rows are F_p-solutions
        if (ker.rows() != d * base.deg())
            throw std::logic_error("descent fixed space has the wrong dimension");

        // choose d columns spanning over F_q: greedy by F_p-span of q-multiples
        std::vector<Vec<Fq>> chosen;  // vectors in E^d
        Mat<Fq> span(fp, 0, d * K);
        std::vector<Vec<Fq>> span_rows;
        auto to_evec = [&](int krow) {
            Vec<Fq> x(d, e.zero());
            for (int i = 0; i < d; ++i) {
                std::vector<int64_t> coeffs(K, 0);
                for (int r = 0; r < K; ++r) coeffs[r] = ker.at(krow, i * K + r).c[0];
                x[i] = e.make(coeffs);
            }
            return x;
        };
        // q-basis multiples of a vector, flattened over F_p
        auto flat = [&](const Vec<Fq>& x) {
            Vec<Fq> row(d * K, fp.zero());
            for (int i = 0; i < d; ++i)
                for (int r = 0; r < K; ++r) row[i * K + r] = fp.from_int(x[i].c[r]);
            return row;
        };
        std::vector<Vec<Fq>> qbasis_elems;  // F_q basis embedded into E
        {
            for (int t = 0; t < base.deg(); ++t) {
                std::vector<int64_t> bc(base.deg(), 0);
                bc[t] = 1;
                qbasis_elems.push_back({w.base_emb.embed(base.make(bc))});
            }
        }
        std::vector<Vec<Fq>> span_flat;
        auto rank_of = [&](const std::vector<Vec<Fq>>& rows) {
            if (rows.empty()) return 0;
            Mat<Fq> m(fp, static_cast<int>(rows.size()), d * K);
            for (size_t i = 0; i < rows.size(); ++i)
                for (int j = 0; j < d * K; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
            return m.rank();
        };
        for (int krow = 0; krow < ker.rows() && static_cast<int>(chosen.size()) < d; ++krow) {
            Vec<Fq> x = to_evec(krow);
            // candidate extends the F_q-span iff adding its F_p-multiples grows the rank
            std::vector<Vec<Fq>> trial = span_flat;
            for (const auto& qb : qbasis_elems) {
                Vec<Fq> mx(d, e.zero());
                for (int i = 0; i < d; ++i) mx[i] = e.mul(qb[0], x[i]);
                trial.push_back(flat(mx));
            }
            if (rank_of(trial) > rank_of(span_flat)) {
                chosen.push_back(x);
                span_flat = std::move(trial);
            }
        }
        if (static_cast<int>(chosen.size()) != d)
            throw std::logic_error("descent basis extraction failed");

        Mat<Fq> psi(e, d, d);
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < d; ++i) psi.at(i, j) = chosen[j][i];
        FqElem det = psi.det();
        if (e.is_zero(det)) throw std::logic_error("descent matrix is singular");
        if (!w.base_emb.in_base(det)) throw std::logic_error("descent determinant must be rational");
        // normalize det(psi) = 1
        for (int i = 0; i < d; ++i) psi.at(i, 0) = e.div(psi.at(i, 0), det);

        Mat<Fq> t1 = psi.transpose() * w.q1 * psi;
        Mat<Fq> t2 = psi.transpose() * w.q2 * psi;
        Mat<Fq> g1(base, d, d), g2(base, d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                g1.at(i, j) = w.base_emb.restrict_to_base(t1.at(i, j));
                g2.at(i, j) = w.base_emb.restrict_to_base(t2.at(i, j));
            }
        Pencil<Fq> twisted(p.n(), QuadraticForm<Fq>(std::move(g1)),
                           QuadraticForm<Fq>(std::move(g2)));
        if (!(twisted.q1().gram().det() == p.q1().gram().det()) ||
            !(twisted.q2().gram().det() == p.q2().gram().det()))
            throw std::logic_error("twisting must preserve the determinants");
        return TwistResult{std::move(twisted), level, std::move(psi), e};
    }
    throw ExtensionGrowthError("twist failed within the allowed extension growth");
}

}  // namespace pencils
