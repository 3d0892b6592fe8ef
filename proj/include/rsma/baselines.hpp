#pragma once

#include <cstddef>
#include <vector>

#include "rsma/scenario.hpp"

namespace rsma {

struct NomaSolution {
    double tau = 0.0;
    std::vector<double> q;                 ///< per-user powers, original indexing
    std::vector<std::size_t> order;        ///< users by descending gain (decoding order)
    std::vector<double> rates;             ///< forward-evaluated SIC rates
};

struct FdmaSolution {
    double tau = 0.0;
    std::vector<double> shares;            ///< bandwidth fractions b_k
    std::vector<double> rates;
};

struct TdmaSolution {
    double tau = 0.0;
    std::vector<double> shares;            ///< time fractions a_k
    std::vector<double> rates;
};

/// Users sorted by descending channel gain, ties by index.
[[nodiscard]] std::vector<std::size_t> descending_gain_order(const Scenario& s);

/// NOMA powers delivering r_k = D_k tau when users are decoded strongest
/// first, from the interference recursion z_k = 2^{D_k tau/B} z_{k+1} + (2^{D_k tau/B} - 1) sigma^2 B.
/// Powers are returned in original user indexing and ignore the budgets.
[[nodiscard]] std::vector<double> noma_power_for_tau(const Scenario& s, double tau);

/// SIC rates for NOMA powers q with the descending-gain decoding order.
[[nodiscard]] std::vector<double> noma_rates(const Scenario& s, const std::vector<double>& q);

/// Relative bracket width at which the tau bisections stop.
inline constexpr double kDefaultTauTol = 1e-15;

[[nodiscard]] NomaSolution noma_solve(const Scenario& s, double tau_tol = kDefaultTauTol);
[[nodiscard]] FdmaSolution fdma_solve(const Scenario& s, double tau_tol = kDefaultTauTol);
[[nodiscard]] TdmaSolution tdma_solve(const Scenario& s);

struct OrderingReport {
    double tau_rsma = 0.0;
    double tau_noma = 0.0;
    double tau_fdma = 0.0;
    double tau_tdma = 0.0;
    bool rsma_ge_noma = false;
    bool rsma_ge_fdma = false;
    bool fdma_ge_tdma = false;

    [[nodiscard]] bool holds() const { return rsma_ge_noma && rsma_ge_fdma && fdma_ge_tdma; }
};

/// Solves all four schemes and checks tau_RSMA >= tau_NOMA and
/// tau_RSMA >= tau_FDMA >= tau_TDMA with `slack` relative tolerance.
[[nodiscard]] OrderingReport check_ordering(const Scenario& s, double slack = 1e-9);

}  // namespace rsma
