#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsma/rate_region.hpp"
#include "rsma/scenario.hpp"

namespace rsma {

/// Channel-rank pairing rules: strong-weak, strong-middle, strong-strong.
enum class PairingStrategy { sw, sm, ss };

[[nodiscard]] std::string to_string(PairingStrategy p);
[[nodiscard]] PairingStrategy parse_pairing_strategy(const std::string& name);

struct PairingPlan {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  ///< user indices
    PairingStrategy strategy = PairingStrategy::sw;
};

/// Sorts users by descending gain (ties by index) and pairs ranks:
/// SW i with K+1-i, SM i with K/2+i, SS 2i-1 with 2i. K must be even.
[[nodiscard]] PairingPlan make_pairs(const Scenario& s, PairingStrategy strategy);

/// Checks that the plan partitions the scenario's users.
void validate_plan(const Scenario& s, const PairingPlan& plan);

/// Per-pair fraction requirements at a common rate scale tau.
struct PairFractions {
    double f_first = 0.0;    ///< first user alone
    double f_second = 0.0;   ///< second user alone
    double f_sum = 0.0;      ///< both users against their combined received power

    [[nodiscard]] double required() const;
};

/// Fractions each pair constraint needs, or nullopt when some demand exceeds
/// the full-band capacity.
[[nodiscard]] std::optional<PairFractions> pair_fractions(const Scenario& s, std::pair<std::size_t, std::size_t> pair,
                                                          double tau);

/// max(f_m1, f_m2, f_m3) for one pair, or nullopt when infeasible.
[[nodiscard]] std::optional<double> pair_min_fraction(const Scenario& s, std::pair<std::size_t, std::size_t> pair,
                                                      double tau);

/// Sum over pairs of the minimum fractions is at most one.
[[nodiscard]] bool pairing_feasible(const Scenario& s, const PairingPlan& plan, double tau);

struct PairAllocation {
    PairingPlan plan;
    std::vector<double> fractions;   ///< per pair
    double tau = 0.0;
    std::vector<double> rates;       ///< per user, D_k * tau
    std::size_t bisection_steps = 0;
};

inline constexpr double kDefaultPairingEps = 1e-6;

/// Bisection on tau over [0, tau*_RSMA] until (hi - lo) / hi <= eps. Returns the
/// last feasible tau with its minimum fractions.
[[nodiscard]] PairAllocation pairing_solve(const Scenario& s, const PairingPlan& plan,
                                           double eps = kDefaultPairingEps);

/// Two-user RSMA realisation of pair m inside its band B * f_m: closed-form
/// boundary point at the pair's first-user rate, using the order s21, s11, s22.
[[nodiscard]] TwoUserBoundaryPoint realize_pair(const Scenario& s, const PairAllocation& alloc, std::size_t m);

}  // namespace rsma
