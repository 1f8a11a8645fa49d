#pragma once

#include <random>
#include <utility>
#include <vector>

#include "pencils/fq.hpp"
#include "pencils/poly.hpp"

namespace pencils {

using FqPoly = Poly<Fq>;

// Monic irreducible factors with multiplicities; the product times the unit
// lead(f) reconstructs f. Distinct-degree plus Cantor–Zassenhaus equal-degree
// splitting, deterministic trial division for small search spaces.
std::vector<std::pair<FqPoly, int>> factor_over_fq(const FqPoly& f, uint64_t seed = 0);

// Deterministic trial-division factorization; requires q^{deg f / 2} within a
// desk-scale bound. Cross-check oracle for the randomized path.
std::vector<std::pair<FqPoly, int>> factor_trial_division(const FqPoly& f);

bool is_irreducible(const FqPoly& f);

// Roots of f lying in its own coefficient field, sorted canonically.
std::vector<FqElem> roots_in_field(const FqPoly& f, uint64_t seed = 0);

// A flattened extension F_{p^{k m}} of a base field F_{p^k}, with the
// embedding determined by a canonical root of the base modulus.
class FqEmbedding {
  public:
    // trivial embedding (m = 1)
    explicit FqEmbedding(Fq base);
    FqEmbedding(Fq base, Fq top, FqElem base_gen_image);

    const Fq& base() const { return base_; }
    const Fq& top() const { return top_; }
    int rel_degree() const { return top_.deg() / base_.deg(); }

    FqElem embed(const FqElem& x) const;
    bool in_base(const FqElem& y) const;
    // inverse of embed; throws when y is not in the image
    FqElem restrict_to_base(const FqElem& y) const;

    // Frobenius of the base field extended to the top: y -> y^{q}, q = |base|
    FqElem rel_frobenius(const FqElem& y, long e = 1) const;

  private:
    Fq base_, top_;
    FqElem gen_image_;  // image of the base generator (unused when base is prime)
};

// Flattened degree-m extension of base with canonical modulus and embedding.
FqEmbedding extend_field(const Fq& base, int m);

// Embedding of sub into super (same p, sub.deg() | super.deg()), sending the
// generator of sub to the canonical (smallest) root of its modulus in super.
FqEmbedding embed_into(const Fq& sub, const Fq& super);

struct SplittingField {
    FqEmbedding ext;
    // distinct roots of f in ext.top(), sorted by coefficient vectors
    std::vector<FqElem> roots;
};

// Splitting field of a squarefree f over its coefficient field: the extension
// degree is the lcm of the irreducible factor degrees.
SplittingField splitting_field(const FqPoly& f, uint64_t seed = 0);

}  // namespace pencils
