#include "rsma/rate_region.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "rsma/special_fn.hpp"

namespace rsma {

RateAllocation::RateAllocation(std::vector<double> r)
    : rates(std::move(r)), sum(std::accumulate(rates.begin(), rates.end(), 0.0)) {}

namespace {

// 2^(r/B) - 1 without cancellation for small rates.
double snr_for_rate(double rate, double b) { return std::expm1(rate / b * std::numbers::ln2); }

double capacity_of(const Scenario& s, double received) {
    return s.bandwidth_hz() * std::log2(1.0 + received / s.noise_power());
}

// Split-table subset sums: value(mask) = low[mask & low_mask] + high[mask >> low_bits].
class SubsetSums {
public:
    SubsetSums(std::span<const double> values) : low_bits_(values.size() / 2) {
        const std::size_t high_bits = values.size() - low_bits_;
        low_ = build(values.subspan(0, low_bits_));
        high_ = build(values.subspan(low_bits_, high_bits));
    }

    double operator()(std::uint32_t mask) const {
        return low_[mask & ((1u << low_bits_) - 1u)] + high_[mask >> low_bits_];
    }

private:
    static std::vector<double> build(std::span<const double> v) {
        std::vector<double> t(std::size_t{1} << v.size(), 0.0);
        for (std::size_t m = 1; m < t.size(); ++m) {
            const auto bit = static_cast<std::size_t>(std::countr_zero(m));
            t[m] = t[m & (m - 1)] + v[bit];
        }
        return t;
    }

    std::size_t low_bits_;
    std::vector<double> low_;
    std::vector<double> high_;
};

}  // namespace

double subset_capacity(const Scenario& s, std::span<const std::size_t> subset) {
    if (subset.empty()) {
        throw std::invalid_argument("subset_capacity: empty subset");
    }
    std::vector<bool> seen(s.size(), false);
    double received = 0.0;
    for (std::size_t k : subset) {
        if (k >= s.size()) {
            throw std::invalid_argument("subset_capacity: user index out of range");
        }
        if (seen[k]) {
            throw std::invalid_argument("subset_capacity: duplicate user index");
        }
        seen[k] = true;
        received += s.received_power(k);
    }
    return capacity_of(s, received);
}

double subset_capacity(const Scenario& s, std::uint32_t mask) {
    if (mask == 0) {
        throw std::invalid_argument("subset_capacity: empty subset");
    }
    if (s.size() < 32 && (mask >> s.size()) != 0) {
        throw std::invalid_argument("subset_capacity: mask references unknown users");
    }
    double received = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (mask & (1u << k)) {
            received += s.received_power(k);
        }
    }
    return capacity_of(s, received);
}

RsmaOptimum rsma_optimal_sum_rate(const Scenario& s) {
    const std::size_t k_users = s.size();
    if (k_users > kMaxSubsetUsers) {
        throw std::invalid_argument("rsma_optimal_sum_rate: subset enumeration is limited to K <= 25");
    }
    std::vector<double> received(k_users);
    std::vector<double> weights(k_users);
    for (std::size_t k = 0; k < k_users; ++k) {
        received[k] = s.received_power(k);
        weights[k] = s.user(k).d;
    }
    const SubsetSums received_sum(received);
    const SubsetSums weight_sum(weights);

    const std::uint32_t full = (1u << k_users) - 1u;
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_mask = full;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const double tau = capacity_of(s, received_sum(mask)) / weight_sum(mask);
        if (tau < best) {
            best = tau;
            best_mask = mask;
        }
    }

    RsmaOptimum out;
    out.tau = best;
    std::vector<double> rates(k_users);
    for (std::size_t k = 0; k < k_users; ++k) {
        rates[k] = s.user(k).d * best;
        if (best_mask & (1u << k)) {
            out.binding.push_back(k);
        }
    }
    out.rates = RateAllocation(std::move(rates));
    return out;
}

std::vector<double> subset_slacks(const Scenario& s, std::span<const double> rates) {
    if (rates.size() != s.size()) {
        throw std::invalid_argument("subset_slacks: rate count does not match user count");
    }
    if (s.size() > 20) {
        throw std::invalid_argument("subset_slacks: limited to K <= 20");
    }
    const std::uint32_t n = 1u << s.size();
    std::vector<double> out(n, 0.0);
    for (std::uint32_t mask = 1; mask < n; ++mask) {
        double sum = 0.0;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (mask & (1u << k)) {
                sum += rates[k];
            }
        }
        out[mask] = subset_capacity(s, mask) - sum;
    }
    return out;
}

TwoUserCorners two_user_corners(const Scenario& s) {
    if (s.size() != 2) {
        throw std::invalid_argument("two_user_corners: scenario must have exactly two users");
    }
    return {capacity_of(s, s.received_power(0)), capacity_of(s, s.received_power(1)),
            capacity_of(s, s.received_power(0) + s.received_power(1))};
}

std::string to_string(BoundaryCase c) {
    switch (c) {
    case BoundaryCase::user1_max:
        return "user1_max";
    case BoundaryCase::user2_max:
        return "user2_max";
    case BoundaryCase::sum_max:
        return "sum_max";
    }
    return "unknown";
}

DecodingOrder two_user_rsma_order() { return DecodingOrder({{1, 0}, {0, 0}, {1, 1}, {0, 1}}); }

namespace {

double checked_r1(const TwoUserCorners& c, double r1) {
    if (!(r1 >= 0.0) || r1 > c.r1 * (1.0 + 1e-12)) {
        throw std::invalid_argument("two-user boundary: r1 must lie in [0, R1]");
    }
    return std::min(r1, c.r1);
}

}  // namespace

TwoUserBoundaryPoint two_user_boundary_point(const Scenario& s, double r1) {
    const auto c = two_user_corners(s);
    r1 = checked_r1(c, r1);
    const double b = s.bandwidth_hz();
    const double noise = s.noise_power();
    const auto& u1 = s.user(0);
    const auto& u2 = s.user(1);

    TwoUserBoundaryPoint pt;
    pt.r1 = r1;
    pt.order = two_user_rsma_order();
    pt.powers = PowerSplit(2);
    auto& p = pt.powers.p;

    if (r1 >= c.r1) {
        pt.case_tag = BoundaryCase::user1_max;
        pt.r2 = std::max(0.0, c.r_max - c.r1);
        p[0][0] = u1.p_max;
        p[1][0] = std::min(u2.p_max, snr_for_rate(pt.r2, b) * (u1.h * u1.p_max + noise) / u2.h);
    } else if (r1 >= c.r_max - c.r2 && r1 >= b * 1e-12) {
        pt.case_tag = BoundaryCase::sum_max;
        pt.r2 = c.r_max - r1;
        p[0][0] = u1.p_max;
        const double p22 = u1.h * u1.p_max / (u2.h * snr_for_rate(r1, b)) - noise / u2.h;
        p[1][1] = std::clamp(p22, 0.0, u2.p_max);
        p[1][0] = u2.p_max - p[1][1];
    } else {
        pt.case_tag = BoundaryCase::user2_max;
        pt.r2 = c.r2;
        p[0][0] = std::min(u1.p_max, snr_for_rate(r1, b) * (u2.h * u2.p_max + noise) / u1.h);
        p[1][1] = u2.p_max;
    }
    return pt;
}

std::string to_string(BaselineScheme s) {
    switch (s) {
    case BaselineScheme::noma:
        return "NOMA";
    case BaselineScheme::fdma:
        return "FDMA";
    case BaselineScheme::tdma:
        return "TDMA";
    }
    return "unknown";
}

double two_user_baseline_boundary(BaselineScheme scheme, const Scenario& s, double r1) {
    const auto c = two_user_corners(s);
    r1 = checked_r1(c, r1);
    const double b = s.bandwidth_hz();
    const double noise = s.noise_power();
    switch (scheme) {
    case BaselineScheme::noma: {
        if (s.user(0).h >= s.user(1).h) {
            // User 1 decoded first against user 2's interference.
            if (r1 == 0.0) {
                return c.r2;
            }
            if (r1 == c.r1) {
                return 0.0;
            }
            const double r2 = b * std::log2(s.received_power(0) / (noise * snr_for_rate(r1, b)));
            return std::clamp(r2, 0.0, c.r2);
        }
        // User 2 decoded first; user 1 is decoded interference-free.
        const double r2 = b * std::log2(1.0 + s.received_power(1) / (noise * std::exp2(r1 / b)));
        return std::clamp(r2, 0.0, c.r2);
    }
    case BaselineScheme::fdma: {
        const auto& u1 = s.user(0);
        const auto& u2 = s.user(1);
        if (r1 == c.r1) {
            return 0.0;
        }
        const double f1 =
            bandwidth_fraction_for_rate(r1, u1.h, u1.p_max, b, s.noise_psd_w_per_hz()).value_or(1.0);
        return rate_on_fraction(1.0 - f1, u2.h, u2.p_max, b, s.noise_psd_w_per_hz());
    }
    case BaselineScheme::tdma:
        return std::max(0.0, c.r2 * (1.0 - r1 / c.r1));
    }
    throw std::invalid_argument("unknown baseline scheme");
}

std::vector<RegionSample> sample_region(const Scenario& s, std::size_t grid_points) {
    if (grid_points < 2) {
        throw std::invalid_argument("sample_region: need at least two grid points");
    }
    const auto c = two_user_corners(s);
    std::vector<double> grid(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        grid[i] = (i + 1 == grid_points) ? c.r1 : c.r1 * static_cast<double>(i) / static_cast<double>(grid_points - 1);
    }

    std::vector<RegionSample> rows;
    for (double r1 : grid) {
        const auto pt = two_user_boundary_point(s, r1);
        rows.push_back({pt.r1, pt.r2, "RSMA", to_string(pt.case_tag)});
    }
    rows.push_back({c.r1, 0.0, "RSMA", to_string(BoundaryCase::user1_max)});
    for (auto scheme : {BaselineScheme::noma, BaselineScheme::fdma, BaselineScheme::tdma}) {
        for (double r1 : grid) {
            rows.push_back({r1, two_user_baseline_boundary(scheme, s, r1), to_string(scheme), "frontier"});
        }
    }
    return rows;
}

}  // namespace rsma
