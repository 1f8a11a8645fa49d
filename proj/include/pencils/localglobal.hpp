#pragma once

#include <optional>
#include <string>

#include "pencils/hilbert.hpp"
#include "pencils/pencil.hpp"
#include "pencils/realroots.hpp"

namespace pencils {

enum class LineVerdict { found, none, unknown };

// Verdict of the line test at one place, with enough data to re-verify the
// certificate from scratch.
struct PlaceVerdict {
    Place place;
    LineVerdict verdict = LineVerdict::unknown;
    std::string note;
    // mod-p^precision echelon basis of a line (2 rows of 6), when found
    std::optional<std::vector<std::vector<Int>>> line_basis;
    int precision = 0;
    long jacobian_minor_valuation = -1;
    std::optional<Rat> real_witness_t;  // sample with a definite-ish member
};

struct Hypotheses {
    bool disc_q1_square = false;  // leading coefficient of f is a square
    Poly<QQ> f = Poly<QQ>(QQ{});
    bool smooth = false;  // f squarefree of full degree
};

Hypotheses check_hypotheses(const Pencil<QQ>& p);

// primes where the integral model can degenerate: 2 and the divisors of
// det(Q1) det(Q2) res(f, f') together with entry denominators
std::vector<Int> bad_primes(const Pencil<QQ>& p);

struct LocalOptions {
    int max_precision = 9;        // hard ceiling on mod-p^k lifting depth
    uint64_t node_cap = 5'000'000;
};

PlaceVerdict local_line_test(const Pencil<QQ>& p, const Int& prime, LocalOptions opts = {});

// Interval-sampled necessary condition at the real place: every real member
// of the pencil needs Witt index >= 2 for a real line to exist.
PlaceVerdict real_line_test(const Pencil<QQ>& p);

// re-verify a line certificate from scratch (forms vanish mod p^k, Hensel margin)
bool verify_line_certificate(const Pencil<QQ>& p, const PlaceVerdict& v);

// first primitive integer projective point with both forms exactly zero, by
// max-norm shells with lexicographic tie-break
std::optional<std::vector<Int>> point_search(const Pencil<QQ>& p, long height_bound);

struct AnalysisReport {
    int schema = 1;
    Hypotheses hypotheses;
    bool aborted_unsmooth = false;
    std::vector<Int> bad;
    std::vector<PlaceVerdict> places;
    PlaceVerdict real;
    std::optional<std::vector<Int>> point;
    long height_bound = 0;
    Int prime_bound;
    bool obstruction_found = false;
    bool unknowns_remain = false;
    bool consistent = true;
    std::string severe_flag;  // set only if a run contradicts the main theorem
};

AnalysisReport analyze(const Pencil<QQ>& p, const Int& prime_bound, long height_bound,
                       LocalOptions opts = {});

// exit code per the reporting contract: 0 consistent, 2 obstruction found,
// 3 unknowns remain, 4 hypothesis failure
int report_exit_code(const AnalysisReport& r);

}  // namespace pencils
