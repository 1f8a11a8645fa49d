#pragma once

#include <vector>

#include "pencils/poly.hpp"
#include "pencils/rational.hpp"

namespace pencils {

// Exact real-root machinery for rational polynomials via Sturm chains.

// number of distinct real roots in (a, b]
int sturm_count(const Poly<QQ>& f, const Rat& a, const Rat& b);

// disjoint isolating intervals (l_i, r_i], one simple real root each, sorted
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const Poly<QQ>& f);

// exact rational sample points: one below all real roots, one strictly
// between each consecutive pair, one above all roots. For a squarefree f
// these are the open intervals where sign data is constant.
std::vector<Rat> interval_samples(const Poly<QQ>& f);

}  // namespace pencils
