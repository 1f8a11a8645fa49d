#pragma once

#include <functional>
#include <optional>

#include "pencils/hyperell.hpp"
#include "pencils/pencil.hpp"
#include "pencils/smallfq.hpp"

namespace pencils {

// full bilinear vanishing of both forms on the subspace
template <class F>
bool is_common_isotropic(const Subspace<F>& a, const Pencil<F>& p) {
    if (a.ambient_dim() != p.dim()) throw std::invalid_argument("ambient dimension mismatch");
    const F& f = p.field();
    const auto& b = a.basis();
    for (int i = 0; i < b.rows(); ++i)
        for (int j = i; j < b.rows(); ++j) {
            if (!f.is_zero(p.q1().pair(b.row(i), b.row(j)))) return false;
            if (!f.is_zero(p.q2().pair(b.row(i), b.row(j)))) return false;
        }
    return true;
}

struct EnumOptions {
    bool count_only = false;
    int workers = 1;
    uint64_t node_cap = 100'000'000;
};

// Complete duplicate-free catalog of s-dimensional common isotropic
// subspaces, as reduced-row-echelon bases in canonical order (pivot-column
// set lexicographic, then free entries lexicographic).
struct IsotropicCatalog {
    int s = 0;
    uint64_t count = 0;
    std::vector<Mat<Fq>> members;  // empty when count_only
};

IsotropicCatalog enumerate_common_isotropic(const Pencil<Fq>& p, int s, EnumOptions opts = {});

// n-dimensional witness when the pencil is soluble; early-exit search
std::optional<Subspace<Fq>> soluble_witness(const Pencil<Fq>& p, EnumOptions opts = {});

// pencil with Gram matrices pushed through a field embedding
Pencil<Fq> base_change(const Pencil<Fq>& p, const FqEmbedding& ext);

// The permutation a pencil automorphism induces on a catalog. The transform
// must be defined over the catalog's field and map the catalog to itself.
struct AutAction {
    std::vector<uint64_t> perm;
    uint64_t fixed_points = 0;
};
AutAction aut_action(const Mat<Fq>& transform, const IsotropicCatalog& catalog,
                     const Pencil<Fq>& p);

}  // namespace pencils
