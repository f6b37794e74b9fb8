#pragma once

#include "quenchlab/bigmath.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace quenchlab {

// The block parameters (ell_k, M_k) and their partial sums N_k.  The
// M_k grow like prod k*ell_k^5 under the default rule and leave 64-bit
// range around k = 5, so they are kept as exact big integers.
struct ParameterSchedule {
    std::vector<std::int64_t> ell;  // strictly increasing, positive
    std::vector<BigInt> m;          // strictly increasing, m[k] >= 2*ell[k]
    std::vector<BigInt> n;          // n[k] = m[1] + ... + m[k]
    BigInt m0 = 1;

    int k_max() const { return static_cast<int>(ell.size()); }

    // 1-based block accessors; k = 0 gives the conventional boundary
    // values m0 and N_0 = 0.
    std::int64_t ell_at(int k) const;
    const BigInt& m_at(int k) const;
    const BigInt& n_at(int k) const;

    // Block containing time index t, i.e. the k with N_{k-1} < t <= N_k.
    // Returns nullopt when t > N_{k_max}.
    std::optional<int> block_of(const BigInt& t) const;

    nlohmann::json to_json() const;
    static ParameterSchedule from_json(const nlohmann::json& j);
};

// Default rule M_k = k * ell_k^5 * M_{k-1}, clamped below by 2*ell_k.
ParameterSchedule build_schedule(const std::vector<std::int64_t>& ell);

// Explicit M sequence; validates monotonicity and M_k >= 2*ell_k.
ParameterSchedule build_schedule(const std::vector<std::int64_t>& ell,
                                 const std::vector<BigInt>& m, BigInt m0 = 1);

// ell_k = 2^k for k = 1..k_max.
std::vector<std::int64_t> pow2_ell(int k_max);

// The innovation law of block k: +-magnitude with probability
// 1/tail_denom each, 0 otherwise.  tail_denom = 2*k*M_k is exact.
struct ThreePointLaw {
    double magnitude = 0;  // sqrt(M_k)/ell_k
    BigInt tail_denom;     // 2*k*M_k
    int k = 0;

    double tail_prob() const { return big_ratio(1, tail_denom); }
    double mean() const { return 0.0; }
    double second_moment() const;  // 1/(k*ell_k^2)
    std::int64_t ell = 0;
};

ThreePointLaw three_point_law(const ParameterSchedule& s, int k);

// Per-term report for the block-decay summability condition
//   sum_k [ 1/sqrt(k*ell_k) + ell_k^2 * sqrt(M_{k-1}/M_k) ] < infinity.
// Reported at finite k_max with a geometric tail estimate when the term
// ratios have settled below 1.
struct SummabilityReport {
    std::vector<double> terms;
    std::vector<double> summand_decay;   // 1/sqrt(k*ell_k)
    std::vector<double> summand_ratio;   // ell_k^2 * sqrt(M_{k-1}/M_k)
    std::vector<double> partial_sums;
    std::optional<double> tail_bound;    // nullopt: no bounded-tail evidence
};

SummabilityReport check_summability(const ParameterSchedule& s);

// Triangular weight c_{k,r}: r+1 rising for 0 <= r <= ell_k-1, then
// 2*ell_k-1-r falling; 0 outside [0, 2*ell_k-2] so overlap formulas can
// index freely.
std::int64_t triangle_coefficient(std::int64_t ell, std::int64_t r);
std::int64_t coefficient(const ParameterSchedule& s, int k, std::int64_t r);

// Closed-form block moments.
struct BlockMoments {
    double e_l1;        // ||e_k||_1   = 1/(k*ell_k*sqrt(M_k))
    double e_l2sq;      // ||e_k||_2^2 = 1/(k*ell_k^2)
    double f_l2sq;      // ||f_k||_2^2 = 2/(k*ell_k)
    double g_l1_bound;  // ||g_k||_1  <= ell_k/(k*sqrt(M_k))
};

BlockMoments exact_block_moments(const ParameterSchedule& s, int k);

// Truncation tails over blocks k > k_from (within the schedule):
// sum 2/(k*ell_k) in L2, sum ell_k/(k*sqrt(M_k)) in L1.
double l2_tail(const ParameterSchedule& s, int k_from);
double l1_tail(const ParameterSchedule& s, int k_from);

}  // namespace quenchlab
