#pragma once

#include <json.hpp>

#include "rsma/baselines.hpp"
#include "rsma/montecarlo.hpp"
#include "rsma/pairing.hpp"
#include "rsma/rate_region.hpp"
#include "rsma/rsma_exact.hpp"
#include "rsma/scenario.hpp"

namespace rsma {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// {"bandwidth_hz", "noise_psd_w_per_hz", "users": [{"gain", "p_max_w", "weight"}]}.
/// On input each user may give "p_max_dbm" instead of "p_max_w", the noise may
/// be given as "noise_psd_dbm_per_hz", and a missing weight means 1.
[[nodiscard]] json scenario_to_json(const Scenario& s);
[[nodiscard]] Scenario scenario_from_json(const json& j);

/// "drop" block: k, area_side_m, shadow_std_db, min_dist_m, fixed_gains; and
/// "defaults" block: p_max_w | p_max_dbm, bandwidth_hz, noise_psd_w_per_hz, weights.
/// Missing keys keep the struct defaults.
[[nodiscard]] DropModel drop_model_from_json(const json& config);
[[nodiscard]] json drop_model_to_json(const DropModel& m);

/// "sweep" block: axis, values, trials, seed, schemes, pairing_eps, threads.
[[nodiscard]] SweepSpec sweep_spec_from_json(const json& block);
[[nodiscard]] json sweep_spec_to_json(const SweepSpec& s);

/// "cdf" block: trials, seed, schemes, pairing_eps, threads.
[[nodiscard]] CdfSpec cdf_spec_from_json(const json& block);
[[nodiscard]] json cdf_spec_to_json(const CdfSpec& s);

void to_json(json& j, const RsmaOptimum& v);
void to_json(json& j, const NomaSolution& v);
void to_json(json& j, const FdmaSolution& v);
void to_json(json& j, const TdmaSolution& v);
void to_json(json& j, const OrderingReport& v);
void to_json(json& j, const PairAllocation& v);
void to_json(json& j, const PowerSplit& v);
void to_json(json& j, const OrderTrace& v);
void to_json(json& j, const OrderRecovery& v);
void to_json(json& j, const ResultRow& v);
void to_json(json& j, const ScaOptions& v);

}  // namespace rsma
