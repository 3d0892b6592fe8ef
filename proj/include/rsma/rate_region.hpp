#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rsma/messages.hpp"
#include "rsma/scenario.hpp"

namespace rsma {

/// Per-user rates (bits/s) and their sum.
struct RateAllocation {
    std::vector<double> rates;
    double sum = 0.0;

    RateAllocation() = default;
    explicit RateAllocation(std::vector<double> r);
};

/// Subset-sum capacity B log2(1 + sum_{k in subset} h_k P_k / sigma^2 B) for a
/// nonempty set of user indices.
[[nodiscard]] double subset_capacity(const Scenario& s, std::span<const std::size_t> subset);

/// Same, for a bitmask over users (bit k = user k).
[[nodiscard]] double subset_capacity(const Scenario& s, std::uint32_t mask);

inline constexpr std::size_t kMaxSubsetUsers = 25;

struct RsmaOptimum {
    double tau = 0.0;                   ///< optimal sum-rate
    RateAllocation rates;               ///< r_k = D_k tau
    std::vector<std::size_t> binding;   ///< binding subset, ascending user indices
};

/// Optimal proportional-fair sum-rate over the full multiple-access region:
/// the minimum over all 2^K - 1 nonempty subsets of capacity / weight-sum.
/// Refuses K > 25.
[[nodiscard]] RsmaOptimum rsma_optimal_sum_rate(const Scenario& s);

/// Slack of every subset constraint (capacity minus rate sum), indexed by mask.
/// Entry 0 is unused.
[[nodiscard]] std::vector<double> subset_slacks(const Scenario& s, std::span<const double> rates);

struct TwoUserCorners {
    double r1 = 0.0;     ///< single-user capacity of user 1
    double r2 = 0.0;     ///< single-user capacity of user 2
    double r_max = 0.0;  ///< sum capacity
};

[[nodiscard]] TwoUserCorners two_user_corners(const Scenario& s);

enum class BoundaryCase { user1_max, user2_max, sum_max };

[[nodiscard]] std::string to_string(BoundaryCase c);

struct TwoUserBoundaryPoint {
    double r1 = 0.0;
    double r2 = 0.0;
    PowerSplit powers;
    DecodingOrder order{{{1, 0}, {0, 0}, {1, 1}, {0, 1}}};
    BoundaryCase case_tag = BoundaryCase::sum_max;
};

/// The two-user RSMA decoding order s21, s11, s22 (s12 carries no power).
[[nodiscard]] DecodingOrder two_user_rsma_order();

/// Largest r2 reachable alongside r1 (0 <= r1 <= R1) on the two-user RSMA
/// region, with closed-form powers realising it under two_user_rsma_order().
[[nodiscard]] TwoUserBoundaryPoint two_user_boundary_point(const Scenario& s, double r1);

enum class BaselineScheme { noma, fdma, tdma };

[[nodiscard]] std::string to_string(BaselineScheme s);

/// Largest r2 reachable alongside r1 under a two-user baseline. NOMA decodes
/// the stronger user first.
[[nodiscard]] double two_user_baseline_boundary(BaselineScheme scheme, const Scenario& s, double r1);

/// One row of a sampled two-user frontier.
struct RegionSample {
    double r1 = 0.0;
    double r2 = 0.0;
    std::string scheme;
    std::string case_tag;
};

/// Samples every scheme's frontier on an evenly spaced r1 grid from 0 to R1
/// (grid_points >= 2). The RSMA frontier is closed with its (R1, 0) vertex.
[[nodiscard]] std::vector<RegionSample> sample_region(const Scenario& s, std::size_t grid_points);

}  // namespace rsma
