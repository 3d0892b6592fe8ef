#pragma once

#include <cmath>

#include "rsma/scenario.hpp"

namespace fixtures {

// Two-user reference pair: gains 9.45e-9 / 6.17e-9, 1 dBm, -174 dBm/Hz, 1 MHz.
inline constexpr double kH1 = 9.45e-9;
inline constexpr double kH2 = 6.17e-9;
inline constexpr double kBandwidth = 1e6;

// mpmath, see tests/oracles/compute_oracles.py
inline constexpr double kR1 = 11545617.258524367696;
inline constexpr double kR2 = 10930829.954077179384;
inline constexpr double kRmax = 12270434.830435235794;

inline double p_max() { return rsma::dbm_to_watt(1.0); }
inline double noise_psd() { return rsma::dbm_to_watt(-174.0); }

inline rsma::Scenario two_user(double d1 = 0.5, double d2 = 0.5) {
    return rsma::Scenario({{kH1, p_max(), d1}, {kH2, p_max(), d2}}, kBandwidth, noise_psd());
}

inline rsma::Scenario random_drop(std::size_t k, std::uint64_t seed, bool random_weights = false) {
    rsma::DropConfig cfg;
    cfg.k = k;
    cfg.seed = seed;
    rsma::DropDefaults d;
    if (random_weights) {
        for (std::size_t i = 0; i < k; ++i) {
            d.weights.push_back(0.05 + static_cast<double>(rsma::derive_seed(seed, 77 + i) % 1000) / 1000.0);
        }
    }
    return rsma::drop_users(cfg, d);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace fixtures
