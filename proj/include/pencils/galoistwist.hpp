#pragma once

#include <optional>

#include "pencils/pencil.hpp"

namespace pencils {

// A 1-cocycle of Gal(F_{q^m}/F_q) with values in Aut^+_Q(F_{q^m}), recorded
// by its value at the Frobenius generator in the even-subset model.
struct GaloisCocycle {
    int m = 1;                // splitting level
    std::vector<int> subset;  // value at Frobenius, canonical representative
};

struct CocycleValidation {
    bool valid = false;
    std::string reason;                          // set when invalid
    int level = 1;                               // level of the epsilon table
    std::vector<std::vector<FqElem>> epsilon;    // scalar 2-cocycle values, level x level
};

// Verifies the cocycle condition (the norm of the value is trivial in
// Aut^+), and computes the mu_{2n+2}-valued 2-cocycle of the chosen
// determinant-1 lifts by explicit matrix products.
CocycleValidation validate_cocycle(const GaloisCocycle& c, const Pencil<Fq>& p,
                                   const SplittingData& sd);

// Builds the cocycle with value theta_Q(cls) at Frobenius, checking that the
// symmetric-difference orbit closes at level m.
GaloisCocycle cocycle_from_two_torsion(const std::vector<int>& cls, int m, const Pencil<Fq>& p,
                                       const SplittingData& sd);

struct ExtensionGrowthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TwistResult {
    Pencil<Fq> twisted;
    int level = 1;   // extension degree where the descent was computed
    Mat<Fq> psi;     // over F_{q^level}: psi^T Q_i psi = twisted Q_i, det(psi) = 1
    Fq top;          // the working extension field of psi
};

// Case-1 twisting over a finite field: split the scalar 2-cocycle of the
// lifts by a mu_{2n+2}-valued function, rescale into the isometry group by
// Hilbert 90, and descend the forms along the fixed space of the semilinear
// operator x -> B phi(x). det(Q~_i) = det(Q_i) exactly.
TwistResult twist_pencil(const Pencil<Fq>& p, const GaloisCocycle& c, uint64_t seed = 0,
                         int max_growth_doublings = 2);

}  // namespace pencils
