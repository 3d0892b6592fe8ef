#include "rsma/pairing.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "rsma/baselines.hpp"
#include "rsma/special_fn.hpp"

namespace rsma {

std::string to_string(PairingStrategy p) {
    switch (p) {
        case PairingStrategy::sw: return "SW";
        case PairingStrategy::sm: return "SM";
        case PairingStrategy::ss: return "SS";
    }
    return "?";
}

PairingStrategy parse_pairing_strategy(const std::string& name) {
    std::string up(name);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (up == "SW") return PairingStrategy::sw;
    if (up == "SM") return PairingStrategy::sm;
    if (up == "SS") return PairingStrategy::ss;
    throw std::invalid_argument("unknown pairing strategy: " + name);
}

PairingPlan make_pairs(const Scenario& s, PairingStrategy strategy) {
    const std::size_t k = s.size();
    if (k % 2 != 0) {
        throw std::invalid_argument("make_pairs: user count must be even");
    }
    const auto rank = descending_gain_order(s);
    const std::size_t m = k / 2;
    PairingPlan plan;
    plan.strategy = strategy;
    plan.pairs.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        switch (strategy) {
            case PairingStrategy::sw: plan.pairs.emplace_back(rank[i], rank[k - 1 - i]); break;
            case PairingStrategy::sm: plan.pairs.emplace_back(rank[i], rank[m + i]); break;
            case PairingStrategy::ss: plan.pairs.emplace_back(rank[2 * i], rank[2 * i + 1]); break;
        }
    }
    return plan;
}

void validate_plan(const Scenario& s, const PairingPlan& plan) {
    if (plan.pairs.size() * 2 != s.size()) {
        throw std::invalid_argument("pairing plan does not cover every user");
    }
    std::vector<bool> seen(s.size(), false);
    for (const auto& [a, b] : plan.pairs) {
        for (std::size_t u : {a, b}) {
            if (u >= s.size() || seen[u]) {
                throw std::invalid_argument("pairing plan is not a partition of the users");
            }
            seen[u] = true;
        }
    }
}

double PairFractions::required() const { return std::max({f_first, f_second, f_sum}); }

std::optional<PairFractions> pair_fractions(const Scenario& s, std::pair<std::size_t, std::size_t> pair, double tau) {
    if (!(tau >= 0.0)) {
        throw std::invalid_argument("pair_fractions: tau must be >= 0");
    }
    const auto& u1 = s.user(pair.first);
    const auto& u2 = s.user(pair.second);
    const double b = s.bandwidth_hz();
    const double sigma2 = s.noise_psd_w_per_hz();
    const auto f1 = bandwidth_fraction_for_rate(u1.d * tau, u1.h, u1.p_max, b, sigma2);
    const auto f2 = bandwidth_fraction_for_rate(u2.d * tau, u2.h, u2.p_max, b, sigma2);
    // Sum constraint: the pair behaves like one user with received power h1 P1 + h2 P2.
    const auto f3 = bandwidth_fraction_for_rate((u1.d + u2.d) * tau, s.received_power(pair.first) + s.received_power(pair.second),
                                                1.0, b, sigma2);
    if (!f1 || !f2 || !f3) {
        return std::nullopt;
    }
    return PairFractions{*f1, *f2, *f3};
}

std::optional<double> pair_min_fraction(const Scenario& s, std::pair<std::size_t, std::size_t> pair, double tau) {
    const auto f = pair_fractions(s, pair, tau);
    if (!f) {
        return std::nullopt;
    }
    return f->required();
}

namespace {

// Sum of pair fractions, or nullopt as soon as one pair is infeasible.
std::optional<double> total_fraction(const Scenario& s, const PairingPlan& plan, double tau,
                                     std::vector<double>* per_pair) {
    double total = 0.0;
    if (per_pair) per_pair->clear();
    for (const auto& pr : plan.pairs) {
        const auto f = pair_min_fraction(s, pr, tau);
        if (!f) {
            return std::nullopt;
        }
        total += *f;
        if (per_pair) per_pair->push_back(*f);
    }
    return total;
}

}  // namespace

bool pairing_feasible(const Scenario& s, const PairingPlan& plan, double tau) {
    validate_plan(s, plan);
    const auto total = total_fraction(s, plan, tau, nullptr);
    return total && *total <= 1.0;
}

PairAllocation pairing_solve(const Scenario& s, const PairingPlan& plan, double eps) {
    validate_plan(s, plan);
    if (!(eps > 0.0)) {
        throw std::invalid_argument("pairing_solve: eps must be positive");
    }
    const auto feasible = [&](double tau) {
        const auto total = total_fraction(s, plan, tau, nullptr);
        return total && *total <= 1.0;
    };
    double lo = 0.0;
    double hi = rsma_optimal_sum_rate(s).tau;
    PairAllocation out;
    out.plan = plan;
    if (feasible(hi)) {
        lo = hi;
    } else {
        while ((hi - lo) / hi > eps) {
            const double mid = 0.5 * (lo + hi);
            if (feasible(mid)) {
                lo = mid;
            } else {
                hi = mid;
            }
            ++out.bisection_steps;
        }
    }
    out.tau = lo;
    const auto total = total_fraction(s, plan, lo, &out.fractions);
    if (!total) {
        throw NumericError("pairing_solve: returned tau is not feasible");
    }
    out.rates.resize(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        out.rates[k] = s.user(k).d * lo;
    }
    return out;
}

TwoUserBoundaryPoint realize_pair(const Scenario& s, const PairAllocation& alloc, std::size_t m) {
    if (m >= alloc.plan.pairs.size() || m >= alloc.fractions.size()) {
        throw std::out_of_range("realize_pair: pair index out of range");
    }
    const double f = alloc.fractions[m];
    if (!(f > 0.0)) {
        throw std::invalid_argument("realize_pair: pair has no bandwidth");
    }
    const auto [a, b] = alloc.plan.pairs[m];
    const Scenario sub({s.user(a), s.user(b)}, s.bandwidth_hz() * f, s.noise_psd_w_per_hz());
    const double r1 = std::min(alloc.rates[a], sub.single_user_capacity(0));
    return two_user_boundary_point(sub, r1);
}

}  // namespace rsma
