#include "rsma/rsma_exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace rsma {

double dc_lower_bound(const Scenario& s, const DecodingOrder& order, const PowerSplit& powers,
                      const PowerSplit& p_ref, std::size_t k) {
    if (order.users() != s.size() || powers.users() != s.size() || p_ref.users() != s.size()) {
        throw std::invalid_argument("dc_lower_bound: shape mismatch");
    }
    const double b = s.bandwidth_hz();
    const double noise = s.noise_power();
    double lb = 0.0;
    for (std::size_t j = 0; j < 2; ++j) {
        const std::size_t own = order.rank(k, j);
        double with_own = noise;      // ranks >= own, at powers
        double later = noise;         // ranks > own, at powers
        double later_ref = noise;     // ranks > own, at p_ref
        for (const auto& m : order.sequence()) {
            const std::size_t r = order.rank(m.user, m.split);
            const double h = s.user(m.user).h;
            if (r >= own) {
                with_own += h * powers.p[m.user][m.split];
            }
            if (r > own) {
                later += h * powers.p[m.user][m.split];
                later_ref += h * p_ref.p[m.user][m.split];
            }
        }
        lb += b * (std::log2(with_own) - std::log2(later_ref) -
                   (later - later_ref) / (std::numbers::ln2 * later_ref));
    }
    return lb;
}

double achieved_alpha(const Scenario& s, const DecodingOrder& order, const PowerSplit& powers,
                      std::span<const double> targets) {
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (targets[k] > 0.0) {
            alpha = std::min(alpha, user_rate(s, order, powers, k) / targets[k]);
        }
    }
    return alpha;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// The linearized alpha-maximization in normalized variables u_kj = p_kj / P_k
// (index 2k + j) and alpha (last index). Received powers are in units of the
// noise power, so each user constraint reads
//   phi_k(u) = c_k sum_j [ln(1 + g_kj . u) - ln(1 + l_kj . u_ref) - l_kj . (u - u_ref) / (1 + l_kj . u_ref)]
//   phi_k(u) - alpha > 0
// with c_k = B / (ln 2 * target_k).
class LinearizedProblem {
public:
    LinearizedProblem(const Scenario& s, const DecodingOrder& order, std::span<const double> targets,
                      const PowerSplit& p_ref)
        : k_users_(s.size()), n_(2 * s.size()) {
        VectorXd snr(n_);
        u_ref_.resize(n_);
        for (std::size_t k = 0; k < k_users_; ++k) {
            for (std::size_t j = 0; j < 2; ++j) {
                snr[2 * k + j] = s.user(k).h * s.user(k).p_max / s.noise_power();
                u_ref_[2 * k + j] = p_ref.p[k][j] / s.user(k).p_max;
            }
        }
        for (std::size_t k = 0; k < k_users_; ++k) {
            if (!(targets[k] > 0.0)) {
                continue;
            }
            UserTerm term;
            term.user = k;
            term.scale = s.bandwidth_hz() / (std::numbers::ln2 * targets[k]);
            for (std::size_t j = 0; j < 2; ++j) {
                const std::size_t own = order.rank(k, j);
                VectorXd g = VectorXd::Zero(n_);
                VectorXd l = VectorXd::Zero(n_);
                for (std::size_t i = 0; i < n_; ++i) {
                    const std::size_t r = order.rank(i / 2, i % 2);
                    if (r >= own) {
                        g[i] = snr[i];
                    }
                    if (r > own) {
                        l[i] = snr[i];
                    }
                }
                const double i_ref = 1.0 + l.dot(u_ref_);
                term.g[j] = g;
                term.lin[j] = l / i_ref;
                term.offset += -std::log(i_ref) + l.dot(u_ref_) / i_ref;
            }
            terms_.push_back(std::move(term));
        }
    }

    [[nodiscard]] bool unconstrained() const { return terms_.empty(); }
    [[nodiscard]] std::size_t dim() const { return n_ + 1; }
    [[nodiscard]] const VectorXd& u_ref() const { return u_ref_; }
    [[nodiscard]] std::size_t barrier_terms() const { return terms_.size() + n_ + k_users_; }

    [[nodiscard]] double phi(std::size_t t, const VectorXd& u) const {
        const auto& term = terms_[t];
        double v = term.offset;
        for (std::size_t j = 0; j < 2; ++j) {
            v += std::log1p(term.g[j].dot(u)) - term.lin[j].dot(u);
        }
        return term.scale * v;
    }

    [[nodiscard]] double min_phi(const VectorXd& u) const {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < terms_.size(); ++t) {
            m = std::min(m, phi(t, u));
        }
        return m;
    }

    // Barrier objective weight * (-alpha) - sum log(slacks); +inf outside the
    // strict interior.
    [[nodiscard]] double barrier(const VectorXd& x, double weight) const {
        const auto u = x.head(n_);
        const double alpha = x[n_];
        double f = -weight * alpha;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!(u[i] > 0.0)) {
                return std::numeric_limits<double>::infinity();
            }
            f -= std::log(u[i]);
        }
        for (std::size_t k = 0; k < k_users_; ++k) {
            const double slack = 1.0 - u[2 * k] - u[2 * k + 1];
            if (!(slack > 0.0)) {
                return std::numeric_limits<double>::infinity();
            }
            f -= std::log(slack);
        }
        const VectorXd uu = u;
        for (std::size_t t = 0; t < terms_.size(); ++t) {
            const double g = phi(t, uu) - alpha;
            if (!(g > 0.0)) {
                return std::numeric_limits<double>::infinity();
            }
            f -= std::log(g);
        }
        return f;
    }

    void gradient_hessian(const VectorXd& x, double weight, VectorXd& grad, MatrixXd& hess) const {
        const std::size_t d = dim();
        grad = VectorXd::Zero(d);
        hess = MatrixXd::Zero(d, d);
        const VectorXd u = x.head(n_);
        const double alpha = x[n_];
        grad[n_] = -weight;
        for (std::size_t i = 0; i < n_; ++i) {
            grad[i] -= 1.0 / u[i];
            hess(i, i) += 1.0 / (u[i] * u[i]);
        }
        for (std::size_t k = 0; k < k_users_; ++k) {
            const std::size_t a = 2 * k;
            const std::size_t b = 2 * k + 1;
            const double slack = 1.0 - u[a] - u[b];
            const double inv = 1.0 / slack;
            grad[a] += inv;
            grad[b] += inv;
            const double inv2 = inv * inv;
            hess(a, a) += inv2;
            hess(a, b) += inv2;
            hess(b, a) += inv2;
            hess(b, b) += inv2;
        }
        VectorXd dg(d);
        MatrixXd phi_hess(n_, n_);
        for (std::size_t t = 0; t < terms_.size(); ++t) {
            const auto& term = terms_[t];
            dg.setZero();
            phi_hess.setZero();
            double value = term.offset;
            for (std::size_t j = 0; j < 2; ++j) {
                const double a = 1.0 + term.g[j].dot(u);
                value += std::log(a) - term.lin[j].dot(u);
                dg.head(n_) += term.g[j] / a - term.lin[j];
                phi_hess -= term.g[j] * term.g[j].transpose() / (a * a);
            }
            value *= term.scale;
            dg.head(n_) *= term.scale;
            phi_hess *= term.scale;
            dg[n_] = -1.0;
            const double g = value - alpha;
            grad -= dg / g;
            hess += dg * dg.transpose() / (g * g);
            hess.topLeftCorner(n_, n_) -= phi_hess / g;
        }
    }

private:
    struct UserTerm {
        std::size_t user = 0;
        double scale = 0.0;
        double offset = 0.0;
        VectorXd g[2];
        VectorXd lin[2];
    };

    std::size_t k_users_;
    std::size_t n_;
    VectorXd u_ref_;
    std::vector<UserTerm> terms_;
};

PowerSplit to_powers(const Scenario& s, const VectorXd& u) {
    PowerSplit p(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double cap = s.user(k).p_max;
        double p0 = std::max(0.0, u[2 * k]) * cap;
        double p1 = std::max(0.0, u[2 * k + 1]) * cap;
        const double total = p0 + p1;
        if (total > cap) {
            p0 *= cap / total;
            p1 *= cap / total;
        }
        p.p[k] = {p0, p1};
    }
    return p;
}

void check_inputs(const Scenario& s, const DecodingOrder& order, const RateAllocation& r_target) {
    if (order.users() != s.size() || r_target.rates.size() != s.size()) {
        throw std::invalid_argument("SCA: order, targets and scenario disagree on the user count");
    }
    for (double r : r_target.rates) {
        if (!(r >= 0.0) || !std::isfinite(r)) {
            throw std::invalid_argument("SCA: rate targets must be finite and >= 0");
        }
    }
}

}  // namespace

LinearizedSolution solve_linearized(const Scenario& s, const DecodingOrder& order, const RateAllocation& r_target,
                                    const PowerSplit& p_ref, const ScaOptions& opts) {
    check_inputs(s, order, r_target);
    if (!p_ref.feasible(s, 1e-12 * 1.0)) {
        throw std::invalid_argument("solve_linearized: p_ref is not feasible");
    }
    LinearizedSolution out;
    const LinearizedProblem problem(s, order, r_target.rates, p_ref);
    if (problem.unconstrained()) {
        out.alpha = opts.alpha_max;
        out.powers = p_ref;
        return out;
    }

    const std::size_t n = 2 * s.size();
    VectorXd x(n + 1);
    x.head(n) = 0.9 * problem.u_ref().array() + 0.04;
    {
        const VectorXd u0 = x.head(n);
        const double m = problem.min_phi(u0);
        x[n] = m - 0.5 - 0.5 * std::abs(m);
    }

    const double m_terms = static_cast<double>(problem.barrier_terms());
    double weight = m_terms;
    VectorXd grad;
    MatrixXd hess;
    std::size_t steps = 0;
    for (int outer = 0; outer < 200; ++outer) {
        for (int inner = 0; inner < 200; ++inner) {
            problem.gradient_hessian(x, weight, grad, hess);
            const Eigen::LDLT<MatrixXd> ldlt(hess);
            const VectorXd dx = ldlt.solve(-grad);
            if (!dx.allFinite()) {
                throw NumericError("solve_linearized: singular Newton system");
            }
            ++steps;
            const double decrement = -grad.dot(dx);
            if (decrement / 2.0 <= 1e-12) {
                break;
            }
            // Inside the quadratic-convergence region a full step always stays
            // interior and decreases the barrier, but the decrease may be below
            // the rounding noise of f at large weights, so skip the Armijo test.
            if (decrement < 1e-2) {
                const VectorXd trial = x + dx;
                if (std::isfinite(problem.barrier(trial, weight))) {
                    x = trial;
                    if (decrement / 2.0 <= 1e-10) {
                        break;
                    }
                    continue;
                }
            }
            const double f0 = problem.barrier(x, weight);
            double step = 1.0;
            bool moved = false;
            for (int ls = 0; ls < 80; ++ls) {
                const VectorXd trial = x + step * dx;
                const double f1 = problem.barrier(trial, weight);
                if (std::isfinite(f1) && f1 <= f0 - 0.25 * step * decrement) {
                    x = trial;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) {
                break;
            }
        }
        if (m_terms / weight <= opts.barrier_gap) {
            break;
        }
        weight *= 20.0;
    }

    const VectorXd u = x.head(n);
    out.powers = to_powers(s, u);
    out.newton_steps = steps;
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (r_target.rates[k] > 0.0) {
            alpha = std::min(alpha, dc_lower_bound(s, order, out.powers, p_ref, k) / r_target.rates[k]);
        }
    }
    out.alpha = alpha;
    return out;
}

PowerSplit random_feasible_powers(const Scenario& s, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PowerSplit p(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double cap = s.user(k).p_max;
        double a = cap * unit(rng);
        double b = cap * unit(rng);
        if (a + b > cap) {
            const double scale = cap / (a + b);
            a *= scale;
            b *= scale;
        }
        p.p[k] = {a, b};
    }
    return p;
}

InnerResult solve_inner(const Scenario& s, const DecodingOrder& order, const RateAllocation& r_target,
                        const ScaOptions& opts) {
    check_inputs(s, order, r_target);
    if (opts.n_starts == 0) {
        throw std::invalid_argument("solve_inner: n_starts must be >= 1");
    }
    const auto& targets = r_target.rates;
    InnerResult best;
    best.alpha = -std::numeric_limits<double>::infinity();
    std::size_t total_iterations = 0;
    for (std::size_t start = 0; start < opts.n_starts; ++start) {
        PowerSplit p = random_feasible_powers(s, derive_seed(opts.seed, start));
        double alpha = achieved_alpha(s, order, p, targets);
        if (!std::isfinite(alpha)) {
            // All targets are zero.
            best.alpha = opts.alpha_max;
            best.powers = p;
            best.starts_run = start + 1;
            best.alpha_history = {opts.alpha_max};
            return best;
        }
        std::vector<double> history{alpha};
        for (std::size_t it = 0; it < opts.max_iterations; ++it) {
            const auto sol = solve_linearized(s, order, r_target, p, opts);
            ++total_iterations;
            const double next = achieved_alpha(s, order, sol.powers, targets);
            if (!(next >= alpha)) {
                break;
            }
            const double delta = next - alpha;
            p = sol.powers;
            alpha = next;
            history.push_back(alpha);
            if (delta <= opts.alpha_tol * std::max(1.0, alpha)) {
                break;
            }
        }
        if (alpha > best.alpha) {
            best.alpha = alpha;
            best.powers = p;
            best.alpha_history = std::move(history);
        }
        best.starts_run = start + 1;
        if (opts.stop_at_accept && best.alpha >= 1.0 - opts.accept_tol) {
            break;
        }
    }
    best.iterations = total_iterations;
    return best;
}

OrderRecovery recover_order_and_power(const Scenario& s, const RateAllocation& r_star, const ScaOptions& opts) {
    if (s.size() > kMaxOrderSearchUsers) {
        throw std::invalid_argument("recover_order_and_power: exhaustive order search is limited to K <= 4");
    }
    if (r_star.rates.size() != s.size()) {
        throw std::invalid_argument("recover_order_and_power: rate count does not match user count");
    }
    if (s.size() == 1) {
        PowerSplit p(1);
        p.p[0] = {s.user(0).p_max, 0.0};
        auto order = DecodingOrder::from_user_sequence({0, 0});
        const double target = r_star.rates[0];
        const double alpha = target > 0.0 ? user_rate(s, order, p, 0) / target : opts.alpha_max;
        OrderRecovery out{order, p, alpha, user_rates(s, order, p), {{order.to_string(), alpha, 0, 0}}};
        if (alpha < 1.0 - opts.accept_tol) {
            throw OrderSearchFailed("single-user target exceeds capacity", alpha, out.trace);
        }
        return out;
    }

    std::vector<OrderTrace> trace;
    double best_alpha = -std::numeric_limits<double>::infinity();
    const auto orders = enumerate_orders(s.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
        ScaOptions per_order = opts;
        per_order.seed = derive_seed(opts.seed, 1000 + i);
        const auto inner = solve_inner(s, orders[i], r_star, per_order);
        trace.push_back({orders[i].to_string(), inner.alpha, inner.iterations, inner.starts_run});
        best_alpha = std::max(best_alpha, inner.alpha);
        if (inner.alpha >= 1.0 - opts.accept_tol) {
            auto rates = user_rates(s, orders[i], inner.powers);
            return OrderRecovery{orders[i], inner.powers, inner.alpha, std::move(rates), std::move(trace)};
        }
    }
    throw OrderSearchFailed("no decoding order reached alpha >= 1 - accept_tol", best_alpha, std::move(trace));
}

}  // namespace rsma
