#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rsma {

/// One uplink user: linear channel power gain, power budget (W) and
/// proportional-rate weight.
struct UserParams {
    double h = 0.0;
    double p_max = 0.0;
    double d = 0.0;
};

/// Immutable single-cell uplink scenario. Weights are normalized to sum to one
/// on construction; every field must be strictly positive.
class Scenario {
public:
    Scenario(std::vector<UserParams> users, double bandwidth_hz, double noise_psd_w_per_hz);

    [[nodiscard]] std::size_t size() const noexcept { return users_.size(); }
    [[nodiscard]] const std::vector<UserParams>& users() const noexcept { return users_; }
    [[nodiscard]] const UserParams& user(std::size_t k) const { return users_.at(k); }
    [[nodiscard]] double bandwidth_hz() const noexcept { return bandwidth_hz_; }
    [[nodiscard]] double noise_psd_w_per_hz() const noexcept { return noise_psd_; }

    /// sigma^2 * B in watts.
    [[nodiscard]] double noise_power() const noexcept { return noise_power_; }

    /// Received power h_k * P_k.
    [[nodiscard]] double received_power(std::size_t k) const { return users_.at(k).h * users_.at(k).p_max; }

    /// Full-band single-user capacity B log2(1 + h_k P_k / sigma^2 B).
    [[nodiscard]] double single_user_capacity(std::size_t k) const;

    /// Copy with new weights (renormalized).
    [[nodiscard]] Scenario with_weights(std::span<const double> weights) const;
    /// Copy with every power budget replaced.
    [[nodiscard]] Scenario with_power(double p_max_w) const;
    /// Copy with a different bandwidth.
    [[nodiscard]] Scenario with_bandwidth(double bandwidth_hz) const;

private:
    std::vector<UserParams> users_;
    double bandwidth_hz_;
    double noise_psd_;
    double noise_power_;
};

[[nodiscard]] double dbm_to_watt(double p_dbm) noexcept;
[[nodiscard]] double watt_to_dbm(double p_w) noexcept;

/// Path loss 128.1 + 37.6 log10(d_km) plus shadowing (dB), returned as a
/// linear power gain.
[[nodiscard]] double channel_gain(double d_km, double shadow_db);

struct DropConfig {
    double area_side_m = 500.0;
    std::size_t k = 2;
    double shadow_std_db = 8.0;
    std::uint64_t seed = 1;
    double min_dist_m = 1.0;
};

/// Values shared by every user of a drop.
struct DropDefaults {
    double p_max_w = 1.2589254117941673e-3;  // 1 dBm
    double bandwidth_hz = 1e6;
    double noise_psd_w_per_hz = 3.9810717055349565e-21;  // -174 dBm/Hz
    std::vector<double> weights;  // empty means equal weights
};

/// Position of a dropped user relative to the base station, plus its shadowing.
struct UserPlacement {
    double x_m = 0.0;
    double y_m = 0.0;
    double shadow_db = 0.0;

    [[nodiscard]] double distance_m(double min_dist_m) const;
};

/// Draws user positions uniformly over the square centred on the base station
/// together with one lognormal shadowing sample per user.
[[nodiscard]] std::vector<UserPlacement> drop_placements(const DropConfig& cfg);

/// Builds a scenario from explicit placements.
[[nodiscard]] Scenario scenario_from_placements(std::span<const UserPlacement> placements,
                                                double min_dist_m, const DropDefaults& defaults);

/// SplitMix64 hash of (seed, stream); used to give every trial or start its
/// own reproducible RNG stream.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Seeded random drop; identical inputs produce identical scenarios.
[[nodiscard]] Scenario drop_users(const DropConfig& cfg, const DropDefaults& defaults);

}  // namespace rsma
