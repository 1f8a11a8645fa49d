#include "pencils/isotropic.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <thread>

namespace pencils {

namespace {

constexpr int kMaxDim = 8;
using KVec = std::array<int32_t, kMaxDim>;

struct KernelForm {
    int d;
    int32_t g[kMaxDim][kMaxDim];
};

KernelForm to_kernel(const SmallFq& k, const Mat<Fq>& gram) {
    KernelForm f{};
    f.d = gram.rows();
    for (int i = 0; i < f.d; ++i)
        for (int j = 0; j < f.d; ++j) f.g[i][j] = k.from_elem(gram.at(i, j));
    return f;
}

int32_t eval_form(const SmallFq& k, const KernelForm& f, const KVec& v) {
    int32_t acc = 0;
    for (int i = 0; i < f.d; ++i) {
        if (v[i] == 0) continue;
        int32_t row = 0;
        for (int j = 0; j < f.d; ++j) {
            if (v[j] == 0) continue;
            row = k.add(row, k.mul(f.g[i][j], v[j]));
        }
        acc = k.add(acc, k.mul(v[i], row));
    }
    return acc;
}

KVec apply_gram(const SmallFq& k, const KernelForm& f, const KVec& v) {
    KVec out{};
    for (int i = 0; i < f.d; ++i) {
        int32_t acc = 0;
        for (int j = 0; j < f.d; ++j)
            if (v[j] != 0) acc = k.add(acc, k.mul(f.g[i][j], v[j]));
        out[i] = acc;
    }
    return out;
}

int32_t dot(const SmallFq& k, int d, const KVec& a, const KVec& b) {
    int32_t acc = 0;
    for (int i = 0; i < d; ++i)
        if (a[i] != 0 && b[i] != 0) acc = k.add(acc, k.mul(a[i], b[i]));
    return acc;
}

// all size-s subsets of {0..d-1} in lexicographic order
std::vector<std::vector<int>> pivot_sets(int d, int s) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(s);
    for (int i = 0; i < s; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = s - 1;
        while (i >= 0 && cur[i] == d - s + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < s; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

struct SearchContext {
    const SmallFq& k;
    KernelForm g1, g2;
    int d, s;
    std::atomic<uint64_t>* nodes;
    uint64_t node_cap;
    std::atomic<bool>* stop;
    // visitor returns false to stop the whole search
    std::function<bool(const std::vector<KVec>&)> visit;
};

// Candidate rows at this level: pivot entry 1, zero at other pivots and
// before the own pivot, free entries beyond. The bilinear pairings against
// the accepted rows are linear conditions on the free entries; enumerate the
// affine solution space and filter by the two quadratic conditions.
std::vector<KVec> level_candidates(SearchContext& ctx, const std::vector<int>& pivots, int level,
                                   const std::vector<KVec>& g1rows,
                                   const std::vector<KVec>& g2rows) {
    const SmallFq& k = ctx.k;
    std::vector<bool> is_pivot(ctx.d, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<int> free_cols;
    for (int c = pivots[level] + 1; c < ctx.d; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    const int nfree = static_cast<int>(free_cols.size());
    const uint32_t q = k.q();
    const int piv = pivots[level];

    // linear system rows: one per (previous row, form)
    const int ncons = 2 * level;
    std::vector<std::array<int32_t, kMaxDim + 1>> sys;  // coefficients | rhs
    for (int r = 0; r < level; ++r) {
        for (const auto* grows : {&g1rows, &g2rows}) {
            std::array<int32_t, kMaxDim + 1> row{};
            const KVec& gr = (*grows)[r];
            for (int i = 0; i < nfree; ++i) row[i] = gr[free_cols[i]];
            row[kMaxDim] = k.neg(gr[piv]);  // rhs
            sys.push_back(row);
        }
    }
    // Gaussian elimination over the kernel field
    int rank = 0;
    std::vector<int> pivcol;
    for (int col = 0; col < nfree && rank < ncons; ++col) {
        int sel = -1;
        for (int i = rank; i < static_cast<int>(sys.size()); ++i)
            if (sys[i][col] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(sys[sel], sys[rank]);
        int32_t inv = k.inv(sys[rank][col]);
        for (int j = 0; j <= kMaxDim; ++j)
            if (j < nfree || j == kMaxDim) sys[rank][j] = k.mul(sys[rank][j], inv);
        for (int i = 0; i < static_cast<int>(sys.size()); ++i) {
            if (i == rank || sys[i][col] == 0) continue;
            int32_t c = sys[i][col];
            for (int j = 0; j <= kMaxDim; ++j)
                if (j < nfree || j == kMaxDim)
                    sys[i][j] = k.sub(sys[i][j], k.mul(c, sys[rank][j]));
        }
        pivcol.push_back(col);
        ++rank;
    }
    for (int i = rank; i < static_cast<int>(sys.size()); ++i)
        if (sys[i][kMaxDim] != 0) return {};  // inconsistent constraints

    std::vector<bool> free_is_pivot(nfree, false);
    for (int c : pivcol) free_is_pivot[c] = true;
    std::vector<int> free_free;
    for (int c = 0; c < nfree; ++c)
        if (!free_is_pivot[c]) free_free.push_back(c);

    std::vector<KVec> out;
    std::vector<int32_t> assign(free_free.size(), 0);
    while (true) {
        uint64_t n = ctx.nodes->fetch_add(1, std::memory_order_relaxed);
        if (n >= ctx.node_cap) throw ResourceError("isotropic search exceeded the node budget");
        // solve for the dependent free entries
        std::array<int32_t, kMaxDim> vals{};
        for (size_t i = 0; i < free_free.size(); ++i) vals[free_free[i]] = assign[i];
        for (int i = 0; i < rank; ++i) {
            int32_t v = sys[i][kMaxDim];
            for (size_t j = 0; j < free_free.size(); ++j)
                if (sys[i][free_free[j]] != 0)
                    v = k.sub(v, k.mul(sys[i][free_free[j]], assign[j]));
            vals[pivcol[i]] = v;
        }
        KVec row{};
        row[piv] = 1;
        for (int i = 0; i < nfree; ++i) row[free_cols[i]] = vals[i];
        if (eval_form(k, ctx.g1, row) == 0 && eval_form(k, ctx.g2, row) == 0)
            out.push_back(row);
        size_t i = assign.size();
        bool more = false;
        while (i-- > 0) {
            if (static_cast<uint32_t>(++assign[i]) < q) {
                more = true;
                break;
            }
            assign[i] = 0;
        }
        if (assign.empty() || !more) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// backtracking over the rows of an RREF matrix with fixed pivot columns
bool extend_rows(SearchContext& ctx, const std::vector<int>& pivots, int level,
                 std::vector<KVec>& rows, std::vector<KVec>& g1rows, std::vector<KVec>& g2rows) {
    if (ctx.stop->load(std::memory_order_relaxed)) return false;
    if (level == ctx.s) return ctx.visit(rows);

    for (const KVec& row : level_candidates(ctx, pivots, level, g1rows, g2rows)) {
        rows.push_back(row);
        g1rows.push_back(apply_gram(ctx.k, ctx.g1, row));
        g2rows.push_back(apply_gram(ctx.k, ctx.g2, row));
        bool keep = extend_rows(ctx, pivots, level + 1, rows, g1rows, g2rows);
        rows.pop_back();
        g1rows.pop_back();
        g2rows.pop_back();
        if (!keep) return false;
    }
    return true;
}

Mat<Fq> rows_to_mat(const SmallFq& k, const std::vector<KVec>& rows, int d) {
    Mat<Fq> m(k.big(), static_cast<int>(rows.size()), d);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < d; ++j) m.at(static_cast<int>(i), j) = k.to_elem(rows[i][j]);
    return m;
}

void kernel_rref(const SmallFq& k, std::vector<KVec>& rows, int d) {
    int rank = 0;
    for (int col = 0; col < d && rank < static_cast<int>(rows.size()); ++col) {
        int sel = -1;
        for (int i = rank; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][col] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[sel], rows[rank]);
        int32_t inv = k.inv(rows[rank][col]);
        for (int j = 0; j < d; ++j) rows[rank][j] = k.mul(rows[rank][j], inv);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            int32_t c = rows[i][col];
            for (int j = 0; j < d; ++j)
                rows[i][j] = k.sub(rows[i][j], k.mul(c, rows[rank][j]));
        }
        ++rank;
    }
}

void run_search(const Pencil<Fq>& p, int s, const EnumOptions& opts,
                const std::function<bool(const std::vector<KVec>&)>& visit_locked,
                std::vector<std::vector<std::vector<KVec>>>* per_pivot_out) {
    const Fq& base = p.field();
    SmallFq k(base);
    const int d = p.dim();
    if (s < 1 || s > d) throw std::invalid_argument("subspace dimension out of range");

    auto pivots = pivot_sets(d, s);
    std::atomic<uint64_t> nodes{0};
    std::atomic<bool> stop{false};

    KernelForm kg1 = to_kernel(k, p.q1().gram());
    KernelForm kg2 = to_kernel(k, p.q2().gram());

    int workers = std::max(1, opts.workers);
    if (visit_locked) workers = 1;  // streaming visitors run single-threaded
    if (per_pivot_out) per_pivot_out->assign(pivots.size(), {});

    std::exception_ptr error;
    std::mutex error_mu;
    auto run_block = [&](int w) {
        try {
            for (size_t ji = w; ji < pivots.size(); ji += workers) {
                SearchContext ctx{k,     kg1,   kg2, d, s, &nodes, opts.node_cap, &stop,
                                  nullptr};
                if (visit_locked) {
                    ctx.visit = visit_locked;
                } else {
                    auto* sink = &(*per_pivot_out)[ji];
                    ctx.visit = [sink](const std::vector<KVec>& rows) {
                        sink->push_back(rows);
                        return true;
                    };
                }
                std::vector<KVec> rows, g1rows, g2rows;
                if (!extend_rows(ctx, pivots[ji], 0, rows, g1rows, g2rows)) {
                    stop.store(true);
                    return;
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(error_mu);
            if (!error) error = std::current_exception();
            stop.store(true);
        }
    };
    if (workers == 1) {
        run_block(0);
    } else {
        std::vector<std::thread> ths;
        for (int w = 0; w < workers; ++w) ths.emplace_back(run_block, w);
        for (auto& t : ths) t.join();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace

IsotropicCatalog enumerate_common_isotropic(const Pencil<Fq>& p, int s, EnumOptions opts) {
    std::vector<std::vector<std::vector<KVec>>> per_pivot;
    run_search(p, s, opts, nullptr, &per_pivot);
    SmallFq k(p.field());
    IsotropicCatalog cat;
    cat.s = s;
    for (auto& block : per_pivot) {
        cat.count += block.size();
        if (!opts.count_only)
            for (auto& rows : block) cat.members.push_back(rows_to_mat(k, rows, p.dim()));
    }
    return cat;
}

std::optional<Subspace<Fq>> soluble_witness(const Pencil<Fq>& p, EnumOptions opts) {
    SmallFq k(p.field());
    std::optional<Mat<Fq>> found;
    auto visit = [&](const std::vector<KVec>& rows) {
        found = rows_to_mat(k, rows, p.dim());
        return false;  // stop at the first witness
    };
    run_search(p, p.n(), opts, visit, nullptr);
    if (!found) return std::nullopt;
    return Subspace<Fq>(std::move(*found));
}

Pencil<Fq> base_change(const Pencil<Fq>& p, const FqEmbedding& ext) {
    const int d = p.dim();
    Mat<Fq> g1(ext.top(), d, d), g2(ext.top(), d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            g1.at(i, j) = ext.embed(p.q1().gram().at(i, j));
            g2.at(i, j) = ext.embed(p.q2().gram().at(i, j));
        }
    return Pencil<Fq>(p.n(), QuadraticForm<Fq>(std::move(g1)), QuadraticForm<Fq>(std::move(g2)));
}

AutAction aut_action(const Mat<Fq>& transform, const IsotropicCatalog& catalog,
                     const Pencil<Fq>& p) {
    if (catalog.members.empty() && catalog.count > 0)
        throw std::invalid_argument("aut_action needs a materialized catalog");
    const Fq& base = p.field();
    if (!(transform.field() == base))
        throw std::invalid_argument("transform must be over the catalog field");
    SmallFq k(base);
    const int d = p.dim();

    // kernel representation of the transform and of the catalog
    KernelForm t{};
    t.d = d;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) t.g[i][j] = k.from_elem(transform.at(i, j));

    std::vector<std::vector<KVec>> reps;
    reps.reserve(catalog.members.size());
    for (const auto& m : catalog.members) {
        std::vector<KVec> rows(m.rows());
        for (int i = 0; i < m.rows(); ++i) {
            rows[i].fill(0);
            for (int j = 0; j < d; ++j) rows[i][j] = k.from_elem(m.at(i, j));
        }
        reps.push_back(std::move(rows));
    }
    // sorted index for lookup
    std::vector<size_t> order(reps.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto key_less = [&](size_t a, size_t b) { return reps[a] < reps[b]; };
    std::sort(order.begin(), order.end(), key_less);

    AutAction act;
    act.perm.resize(reps.size());
    for (size_t i = 0; i < reps.size(); ++i) {
        std::vector<KVec> img(reps[i].size());
        for (size_t r = 0; r < reps[i].size(); ++r) img[r] = apply_gram(k, t, reps[i][r]);
        kernel_rref(k, img, d);
        auto it = std::lower_bound(order.begin(), order.end(), img, [&](size_t a, const std::vector<KVec>& v) {
            return reps[a] < v;
        });
        if (it == order.end() || !(reps[*it] == img))
            throw std::invalid_argument("transform does not preserve the catalog (pencil mismatch)");
        act.perm[i] = *it;
        if (*it == i) ++act.fixed_points;
    }
    return act;
}

}  // namespace pencils
