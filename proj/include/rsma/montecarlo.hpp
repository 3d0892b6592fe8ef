#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rsma/pairing.hpp"
#include "rsma/scenario.hpp"

namespace rsma {

enum class Scheme { rsma, rsma_up_sw, rsma_up_sm, rsma_up_ss, noma, fdma, tdma };

/// "RSMA", "RSMA_UP_SW", ..., "NOMA", "FDMA", "TDMA".
[[nodiscard]] std::string to_string(Scheme s);
/// Case-insensitive inverse of to_string; "RSMA_UP(SW)" is also accepted.
[[nodiscard]] Scheme parse_scheme(const std::string& name);
[[nodiscard]] std::vector<Scheme> all_schemes();

/// Optimal tau of one scheme on one scenario. RSMA uses the subset bound
/// directly; the paired schemes need an even user count.
[[nodiscard]] double scheme_sum_rate(const Scenario& s, Scheme scheme, double pairing_eps = kDefaultPairingEps);

enum class SweepAxis { p_max_dbm, bandwidth_hz, d2_weight, k_users };

[[nodiscard]] std::string to_string(SweepAxis a);
[[nodiscard]] SweepAxis parse_axis(const std::string& name);

/// Random-drop parameters shared by sweeps and CDFs.
struct DropModel {
    std::size_t k = 2;                 ///< ignored by the k_users axis
    double area_side_m = 500.0;
    double shadow_std_db = 8.0;
    double min_dist_m = 1.0;
    DropDefaults defaults;
    /// When set, every trial uses these channel gains instead of a random drop
    /// (the user count is taken from here).
    std::optional<std::vector<double>> fixed_gains;
};

struct SweepSpec {
    SweepAxis axis = SweepAxis::p_max_dbm;
    std::vector<double> values;
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    std::vector<Scheme> schemes = all_schemes();
    double pairing_eps = kDefaultPairingEps;
    std::size_t threads = 0;           ///< 0 = hardware concurrency
};

struct ResultRow {
    double value = 0.0;
    Scheme scheme = Scheme::rsma;
    double mean = 0.0;                 ///< bits/s
    double std = 0.0;                  ///< sample standard deviation, 0 for one trial
    std::size_t trials = 0;

    bool operator==(const ResultRow&) const = default;
};

/// Throws std::invalid_argument for empty or unsorted values, zero trials,
/// out-of-range axis values or paired schemes with an odd user count.
void validate(const SweepSpec& spec, const DropModel& model);

/// Scenario for one (axis value, trial). Trial t draws its channels from
/// derive_seed(seed, t) independently of the axis value, so every value sees
/// the same drops except on the k_users axis.
[[nodiscard]] Scenario sweep_scenario(const SweepSpec& spec, const DropModel& model, double value, std::size_t trial);

/// Sum-rates per scheme and trial: result[scheme][trial]. Trials run on a
/// thread pool; results are stored by index so output does not depend on
/// scheduling.
[[nodiscard]] std::vector<std::vector<double>> sample_trials(const std::vector<Scheme>& schemes, std::size_t trials,
                                                             std::size_t threads, double pairing_eps,
                                                             const std::function<Scenario(std::size_t)>& make);

/// One row per (value, scheme), values outermost, schemes in spec order.
[[nodiscard]] std::vector<ResultRow> run_sweep(const SweepSpec& spec, const DropModel& model);

struct CdfSpec {
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    std::vector<Scheme> schemes = all_schemes();
    double pairing_eps = kDefaultPairingEps;
    std::size_t threads = 0;
};

struct CdfSeries {
    Scheme scheme = Scheme::rsma;
    std::vector<double> samples;       ///< ascending sum-rates
    std::vector<double> ordinates;     ///< (i - 0.5) / n

    bool operator==(const CdfSeries&) const = default;
};

/// Empirical CDFs over `trials` random drops (trials >= 10).
[[nodiscard]] std::vector<CdfSeries> run_cdf(const CdfSpec& spec, const DropModel& model);

/// Header "value,scheme,mean_bps,std_bps,trials"; numbers in %.16e.
void write_sweep_csv(std::ostream& os, const std::vector<ResultRow>& rows);
/// Header "scheme,index,sum_rate_bps,cdf".
void write_cdf_csv(std::ostream& os, const std::vector<CdfSeries>& series);
/// Writes to a file; throws std::runtime_error on I/O failure.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
void emit_csv(const std::vector<CdfSeries>& series, const std::string& path);

[[nodiscard]] std::vector<ResultRow> parse_sweep_csv(std::istream& is);
[[nodiscard]] std::vector<CdfSeries> parse_cdf_csv(std::istream& is);

/// Formats a double with 17 significant digits in scientific notation.
[[nodiscard]] std::string format_full(double v);

}  // namespace rsma
