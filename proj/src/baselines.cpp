#include "rsma/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "rsma/rate_region.hpp"
#include "rsma/special_fn.hpp"

namespace rsma {

namespace {

// 2^{D tau / B} - 1
double growth(double weight, double tau, double b) { return std::expm1(weight * tau / b * std::numbers::ln2); }

}  // namespace

std::vector<std::size_t> descending_gain_order(const Scenario& s) {
    std::vector<std::size_t> idx(s.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return s.user(a).h > s.user(b).h; });
    return idx;
}

std::vector<double> noma_power_for_tau(const Scenario& s, double tau) {
    if (!(tau >= 0.0)) {
        throw std::invalid_argument("noma_power_for_tau: tau must be >= 0");
    }
    const auto order = descending_gain_order(s);
    const double b = s.bandwidth_hz();
    const double noise = s.noise_power();
    std::vector<double> q(s.size(), 0.0);
    // Walk from the last-decoded user upwards; z holds the received power of
    // all users decoded after the current one.
    double z = 0.0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t k = *it;
        const double g = growth(s.user(k).d, tau, b);
        q[k] = g * (z + noise) / s.user(k).h;
        z += s.user(k).h * q[k];
    }
    return q;
}

std::vector<double> noma_rates(const Scenario& s, const std::vector<double>& q) {
    if (q.size() != s.size()) {
        throw std::invalid_argument("noma_rates: power count does not match user count");
    }
    const auto order = descending_gain_order(s);
    std::vector<double> rates(s.size(), 0.0);
    double later = 0.0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t k = *it;
        const double signal = s.user(k).h * q[k];
        rates[k] = s.bandwidth_hz() * std::log2(1.0 + signal / (later + s.noise_power()));
        later += signal;
    }
    return rates;
}

NomaSolution noma_solve(const Scenario& s, double tau_tol) {
    const auto order = descending_gain_order(s);
    double tau_star = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double cap = s.user(k).p_max;
        const auto excess = [&](double tau) { return noma_power_for_tau(s, tau)[k] - cap; };
        const double tau_k = bisect_root_expanding(excess, 0.0, s.single_user_capacity(k), tau_tol);
        tau_star = std::min(tau_star, tau_k);
    }
    NomaSolution out;
    out.tau = tau_star;
    out.q = noma_power_for_tau(s, tau_star);
    out.order = order;
    out.rates = noma_rates(s, out.q);
    return out;
}

FdmaSolution fdma_solve(const Scenario& s, double tau_tol) {
    const double b = s.bandwidth_hz();
    const double sigma2 = s.noise_psd_w_per_hz();
    const auto fractions = [&](double tau) {
        std::vector<double> f(s.size());
        for (std::size_t k = 0; k < s.size(); ++k) {
            const auto& u = s.user(k);
            f[k] = bandwidth_fraction_for_rate(u.d * tau, u.h, u.p_max, b, sigma2).value_or(
                std::numeric_limits<double>::infinity());
        }
        return f;
    };
    // Just above tau = min_k C_k / D_k the limiting user alone needs more than
    // the whole band.
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.size(); ++k) {
        hi = std::min(hi, s.single_user_capacity(k) / s.user(k).d);
    }
    const double cap = hi;
    hi *= 1.0 + 1e-12;
    const auto excess = [&](double tau) {
        const auto f = fractions(tau);
        return std::accumulate(f.begin(), f.end(), 0.0) - 1.0;
    };
    FdmaSolution out;
    out.tau = std::min(bisect_root(excess, 0.0, hi, tau_tol), cap);
    out.shares = fractions(out.tau);
    out.rates.resize(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto& u = s.user(k);
        out.rates[k] = rate_on_fraction(out.shares[k], u.h, u.p_max, b, sigma2);
    }
    return out;
}

TdmaSolution tdma_solve(const Scenario& s) {
    double inv = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        inv += s.user(k).d / s.single_user_capacity(k);
    }
    TdmaSolution out;
    out.tau = 1.0 / inv;
    out.shares.resize(s.size());
    out.rates.resize(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double cap = s.single_user_capacity(k);
        out.shares[k] = s.user(k).d * out.tau / cap;
        out.rates[k] = out.shares[k] * cap;
    }
    return out;
}

OrderingReport check_ordering(const Scenario& s, double slack) {
    OrderingReport r;
    r.tau_rsma = rsma_optimal_sum_rate(s).tau;
    r.tau_noma = noma_solve(s).tau;
    r.tau_fdma = fdma_solve(s).tau;
    r.tau_tdma = tdma_solve(s).tau;
    const auto ge = [slack](double a, double b) { return a >= b - slack * std::abs(b); };
    r.rsma_ge_noma = ge(r.tau_rsma, r.tau_noma);
    r.rsma_ge_fdma = ge(r.tau_rsma, r.tau_fdma);
    r.fdma_ge_tdma = ge(r.tau_fdma, r.tau_tdma);
    return r;
}

}  // namespace rsma
