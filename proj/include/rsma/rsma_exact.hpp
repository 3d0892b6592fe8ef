#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rsma/messages.hpp"
#include "rsma/rate_region.hpp"
#include "rsma/scenario.hpp"
#include "rsma/special_fn.hpp"

namespace rsma {

/// Tuning for the successive convex approximation (SCA) that recovers split
/// powers for a fixed decoding order.
struct ScaOptions {
    std::size_t n_starts = 10;
    std::size_t max_iterations = 100;
    double alpha_tol = 1e-7;          ///< stop when |delta alpha| <= alpha_tol * max(1, alpha)
    double accept_tol = 1e-4;         ///< an order is accepted once alpha >= 1 - accept_tol
    double alpha_max = 10.0;          ///< returned when every rate target is zero
    double barrier_gap = 1e-10;       ///< duality-gap target of each convex subproblem
    std::uint64_t seed = 1;
    bool stop_at_accept = true;       ///< skip remaining starts once a start is accepted
};

/// Concave lower bound on user k's rate obtained by linearizing the
/// interference log-terms at p_ref. Equals user_rate at powers == p_ref.
[[nodiscard]] double dc_lower_bound(const Scenario& s, const DecodingOrder& order, const PowerSplit& powers,
                                    const PowerSplit& p_ref, std::size_t k);

/// min_k user_rate / target over users with a positive target.
[[nodiscard]] double achieved_alpha(const Scenario& s, const DecodingOrder& order, const PowerSplit& powers,
                                    std::span<const double> targets);

struct LinearizedSolution {
    double alpha = 0.0;       ///< min_k dc_lower_bound(powers) / target_k
    PowerSplit powers;        ///< strictly feasible
    std::size_t newton_steps = 0;
};

/// Maximizes alpha subject to dc_lower_bound(p, p_ref, k) >= alpha * target_k,
/// p >= 0 and per-user budgets, with a log-barrier Newton method. Users with a
/// zero target carry no constraint; an all-zero target returns alpha_max.
/// Throws NumericError if the barrier iteration breaks down.
[[nodiscard]] LinearizedSolution solve_linearized(const Scenario& s, const DecodingOrder& order,
                                                  const RateAllocation& r_target, const PowerSplit& p_ref,
                                                  const ScaOptions& opts = {});

struct InnerResult {
    double alpha = 0.0;
    PowerSplit powers;
    std::size_t iterations = 0;          ///< SCA iterations summed over starts
    std::size_t starts_run = 0;
    std::vector<double> alpha_history;   ///< per-iteration alpha of the best start
};

/// Draws a feasible power point: p_kj ~ U(0, P_k), rows exceeding the budget
/// rescaled onto it.
[[nodiscard]] PowerSplit random_feasible_powers(const Scenario& s, std::uint64_t seed);

/// Runs SCA from `opts.n_starts` random feasible points and keeps the best.
/// Within a start alpha (evaluated on true rates) never decreases.
[[nodiscard]] InnerResult solve_inner(const Scenario& s, const DecodingOrder& order,
                                      const RateAllocation& r_target, const ScaOptions& opts = {});

struct OrderTrace {
    std::string order;
    double alpha = 0.0;
    std::size_t iterations = 0;
    std::size_t starts = 0;
};

struct OrderRecovery {
    DecodingOrder order;
    PowerSplit powers;
    double alpha = 0.0;
    std::vector<double> achieved_rates;
    std::vector<OrderTrace> trace;   ///< one entry per order tried
};

/// No order reached the acceptance threshold.
class OrderSearchFailed : public NumericError {
public:
    OrderSearchFailed(const std::string& what, double best_alpha, std::vector<OrderTrace> trace)
        : NumericError(what), best_alpha_(best_alpha), trace_(std::move(trace)) {}

    [[nodiscard]] double best_alpha() const noexcept { return best_alpha_; }
    [[nodiscard]] const std::vector<OrderTrace>& trace() const noexcept { return trace_; }

private:
    double best_alpha_;
    std::vector<OrderTrace> trace_;
};

/// Walks enumerate_orders() and returns the first order whose SCA alpha reaches
/// 1 - accept_tol, with its split powers. K <= 4.
[[nodiscard]] OrderRecovery recover_order_and_power(const Scenario& s, const RateAllocation& r_star,
                                                    const ScaOptions& opts = {});

}  // namespace rsma
