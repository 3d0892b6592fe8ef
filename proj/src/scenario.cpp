#include "rsma/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace rsma {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be finite and > 0");
    }
}

}  // namespace

Scenario::Scenario(std::vector<UserParams> users, double bandwidth_hz, double noise_psd_w_per_hz)
    : users_(std::move(users)), bandwidth_hz_(bandwidth_hz), noise_psd_(noise_psd_w_per_hz) {
    if (users_.empty()) {
        throw std::invalid_argument("scenario needs at least one user");
    }
    require_positive(bandwidth_hz_, "bandwidth");
    require_positive(noise_psd_, "noise psd");
    double total = 0.0;
    for (const auto& u : users_) {
        require_positive(u.h, "channel gain");
        require_positive(u.p_max, "power budget");
        require_positive(u.d, "fairness weight");
        total += u.d;
    }
    for (auto& u : users_) {
        u.d /= total;
    }
    noise_power_ = noise_psd_ * bandwidth_hz_;
    require_positive(noise_power_, "noise power");
}

double Scenario::single_user_capacity(std::size_t k) const {
    return bandwidth_hz_ * std::log2(1.0 + received_power(k) / noise_power_);
}

Scenario Scenario::with_weights(std::span<const double> weights) const {
    if (weights.size() != users_.size()) {
        throw std::invalid_argument("weight count does not match user count");
    }
    auto users = users_;
    for (std::size_t k = 0; k < users.size(); ++k) {
        users[k].d = weights[k];
    }
    return Scenario(std::move(users), bandwidth_hz_, noise_psd_);
}

Scenario Scenario::with_power(double p_max_w) const {
    auto users = users_;
    for (auto& u : users) {
        u.p_max = p_max_w;
    }
    return Scenario(std::move(users), bandwidth_hz_, noise_psd_);
}

Scenario Scenario::with_bandwidth(double bandwidth_hz) const {
    return Scenario(users_, bandwidth_hz, noise_psd_);
}

double dbm_to_watt(double p_dbm) noexcept { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }

double watt_to_dbm(double p_w) noexcept { return 10.0 * std::log10(p_w) + 30.0; }

double channel_gain(double d_km, double shadow_db) {
    if (!(d_km > 0.0)) {
        throw std::invalid_argument("distance must be > 0");
    }
    const double loss_db = 128.1 + 37.6 * std::log10(d_km) + shadow_db;
    return std::pow(10.0, -loss_db / 10.0);
}

double UserPlacement::distance_m(double min_dist_m) const {
    return std::max(std::hypot(x_m, y_m), min_dist_m);
}

std::vector<UserPlacement> drop_placements(const DropConfig& cfg) {
    require_positive(cfg.area_side_m, "area side");
    require_positive(cfg.min_dist_m, "minimum distance");
    if (cfg.shadow_std_db < 0.0) {
        throw std::invalid_argument("shadowing std must be >= 0");
    }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> coord(-cfg.area_side_m / 2.0, cfg.area_side_m / 2.0);
    std::normal_distribution<double> shadow(0.0, 1.0);
    std::vector<UserPlacement> out(cfg.k);
    for (auto& p : out) {
        p.x_m = coord(rng);
        p.y_m = coord(rng);
        p.shadow_db = cfg.shadow_std_db * shadow(rng);
    }
    return out;
}

Scenario scenario_from_placements(std::span<const UserPlacement> placements, double min_dist_m,
                                  const DropDefaults& defaults) {
    if (!defaults.weights.empty() && defaults.weights.size() != placements.size()) {
        throw std::invalid_argument("weight count does not match user count");
    }
    std::vector<UserParams> users;
    users.reserve(placements.size());
    for (std::size_t k = 0; k < placements.size(); ++k) {
        const double d_km = placements[k].distance_m(min_dist_m) / 1000.0;
        users.push_back({channel_gain(d_km, placements[k].shadow_db), defaults.p_max_w,
                         defaults.weights.empty() ? 1.0 : defaults.weights[k]});
    }
    return Scenario(std::move(users), defaults.bandwidth_hz, defaults.noise_psd_w_per_hz);
}

Scenario drop_users(const DropConfig& cfg, const DropDefaults& defaults) {
    const auto placements = drop_placements(cfg);
    return scenario_from_placements(placements, cfg.min_dist_m, defaults);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace rsma
