#include "rsma/serialization.hpp"

#include <stdexcept>

namespace rsma {

namespace {

double dbm_per_hz_to_watt(double dbm) { return dbm_to_watt(dbm); }

template <class T>
void read_if(const json& j, const char* key, T& out) {
    if (j.contains(key)) {
        out = j.at(key).get<T>();
    }
}

std::vector<Scheme> read_schemes(const json& j) {
    std::vector<Scheme> out;
    for (const auto& name : j) {
        out.push_back(parse_scheme(name.get<std::string>()));
    }
    return out;
}

json scheme_names(const std::vector<Scheme>& schemes) {
    json out = json::array();
    for (Scheme s : schemes) out.push_back(to_string(s));
    return out;
}

}  // namespace

json scenario_to_json(const Scenario& s) {
    json users = json::array();
    for (const auto& u : s.users()) {
        users.push_back({{"gain", u.h}, {"p_max_w", u.p_max}, {"weight", u.d}});
    }
    return {{"schema_version", kSchemaVersion},
            {"bandwidth_hz", s.bandwidth_hz()},
            {"noise_psd_w_per_hz", s.noise_psd_w_per_hz()},
            {"users", users}};
}

Scenario scenario_from_json(const json& j) {
    if (!j.is_object() || !j.contains("users") || !j.at("users").is_array()) {
        throw std::invalid_argument("scenario must be an object with a \"users\" array");
    }
    double noise = 0.0;
    if (j.contains("noise_psd_w_per_hz")) {
        noise = j.at("noise_psd_w_per_hz").get<double>();
    } else if (j.contains("noise_psd_dbm_per_hz")) {
        noise = dbm_per_hz_to_watt(j.at("noise_psd_dbm_per_hz").get<double>());
    } else {
        throw std::invalid_argument("scenario is missing noise_psd_w_per_hz");
    }
    std::vector<UserParams> users;
    for (const auto& u : j.at("users")) {
        UserParams p;
        p.h = u.at("gain").get<double>();
        if (u.contains("p_max_w")) {
            p.p_max = u.at("p_max_w").get<double>();
        } else if (u.contains("p_max_dbm")) {
            p.p_max = dbm_to_watt(u.at("p_max_dbm").get<double>());
        } else {
            throw std::invalid_argument("user is missing p_max_w");
        }
        p.d = u.value("weight", 1.0);
        users.push_back(p);
    }
    return Scenario(std::move(users), j.at("bandwidth_hz").get<double>(), noise);
}

DropModel drop_model_from_json(const json& config) {
    DropModel m;
    if (config.contains("drop")) {
        const auto& d = config.at("drop");
        read_if(d, "k", m.k);
        read_if(d, "area_side_m", m.area_side_m);
        read_if(d, "shadow_std_db", m.shadow_std_db);
        read_if(d, "min_dist_m", m.min_dist_m);
        if (d.contains("fixed_gains")) {
            m.fixed_gains = d.at("fixed_gains").get<std::vector<double>>();
        }
    }
    if (config.contains("defaults")) {
        const auto& d = config.at("defaults");
        if (d.contains("p_max_w") && d.contains("p_max_dbm")) {
            throw std::invalid_argument("defaults: give p_max_w or p_max_dbm, not both");
        }
        read_if(d, "p_max_w", m.defaults.p_max_w);
        if (d.contains("p_max_dbm")) {
            m.defaults.p_max_w = dbm_to_watt(d.at("p_max_dbm").get<double>());
        }
        read_if(d, "bandwidth_hz", m.defaults.bandwidth_hz);
        read_if(d, "noise_psd_w_per_hz", m.defaults.noise_psd_w_per_hz);
        if (d.contains("noise_psd_dbm_per_hz")) {
            m.defaults.noise_psd_w_per_hz = dbm_per_hz_to_watt(d.at("noise_psd_dbm_per_hz").get<double>());
        }
        read_if(d, "weights", m.defaults.weights);
    }
    return m;
}

json drop_model_to_json(const DropModel& m) {
    json drop = {{"k", m.k},
                 {"area_side_m", m.area_side_m},
                 {"shadow_std_db", m.shadow_std_db},
                 {"min_dist_m", m.min_dist_m}};
    if (m.fixed_gains) drop["fixed_gains"] = *m.fixed_gains;
    json defaults = {{"p_max_w", m.defaults.p_max_w},
                     {"bandwidth_hz", m.defaults.bandwidth_hz},
                     {"noise_psd_w_per_hz", m.defaults.noise_psd_w_per_hz},
                     {"weights", m.defaults.weights}};
    return {{"drop", drop}, {"defaults", defaults}};
}

SweepSpec sweep_spec_from_json(const json& block) {
    SweepSpec s;
    if (block.contains("axis")) s.axis = parse_axis(block.at("axis").get<std::string>());
    read_if(block, "values", s.values);
    read_if(block, "trials", s.trials);
    read_if(block, "seed", s.seed);
    if (block.contains("schemes")) s.schemes = read_schemes(block.at("schemes"));
    read_if(block, "pairing_eps", s.pairing_eps);
    read_if(block, "threads", s.threads);
    return s;
}

json sweep_spec_to_json(const SweepSpec& s) {
    return {{"axis", to_string(s.axis)}, {"values", s.values},           {"trials", s.trials},
            {"seed", s.seed},            {"schemes", scheme_names(s.schemes)}, {"pairing_eps", s.pairing_eps}};
}

CdfSpec cdf_spec_from_json(const json& block) {
    CdfSpec s;
    read_if(block, "trials", s.trials);
    read_if(block, "seed", s.seed);
    if (block.contains("schemes")) s.schemes = read_schemes(block.at("schemes"));
    read_if(block, "pairing_eps", s.pairing_eps);
    read_if(block, "threads", s.threads);
    return s;
}

json cdf_spec_to_json(const CdfSpec& s) {
    return {{"trials", s.trials},
            {"seed", s.seed},
            {"schemes", scheme_names(s.schemes)},
            {"pairing_eps", s.pairing_eps}};
}

void to_json(json& j, const RsmaOptimum& v) {
    j = {{"scheme", "RSMA"}, {"tau", v.tau}, {"rates", v.rates.rates}, {"binding_subset", v.binding}};
}

void to_json(json& j, const NomaSolution& v) {
    j = {{"scheme", "NOMA"}, {"tau", v.tau}, {"rates", v.rates}, {"powers_w", v.q}, {"decoding_order", v.order}};
}

void to_json(json& j, const FdmaSolution& v) {
    j = {{"scheme", "FDMA"}, {"tau", v.tau}, {"rates", v.rates}, {"bandwidth_fractions", v.shares}};
}

void to_json(json& j, const TdmaSolution& v) {
    j = {{"scheme", "TDMA"}, {"tau", v.tau}, {"rates", v.rates}, {"time_fractions", v.shares}};
}

void to_json(json& j, const OrderingReport& v) {
    j = {{"tau_rsma", v.tau_rsma},         {"tau_noma", v.tau_noma},         {"tau_fdma", v.tau_fdma},
         {"tau_tdma", v.tau_tdma},         {"rsma_ge_noma", v.rsma_ge_noma}, {"rsma_ge_fdma", v.rsma_ge_fdma},
         {"fdma_ge_tdma", v.fdma_ge_tdma}, {"holds", v.holds()}};
}

void to_json(json& j, const PairAllocation& v) {
    json pairs = json::array();
    for (const auto& [a, b] : v.plan.pairs) pairs.push_back({a, b});
    j = {{"scheme", "RSMA_UP_" + to_string(v.plan.strategy)},
         {"strategy", to_string(v.plan.strategy)},
         {"tau", v.tau},
         {"pairs", pairs},
         {"fractions", v.fractions},
         {"rates", v.rates},
         {"bisection_steps", v.bisection_steps}};
}

void to_json(json& j, const PowerSplit& v) {
    j = json::array();
    for (const auto& row : v.p) j.push_back({row[0], row[1]});
}

void to_json(json& j, const OrderTrace& v) {
    j = {{"order", v.order}, {"alpha", v.alpha}, {"iterations", v.iterations}, {"starts", v.starts}};
}

void to_json(json& j, const OrderRecovery& v) {
    j = {{"order", v.order.to_string()},
         {"split_powers_w", v.powers},
         {"alpha", v.alpha},
         {"achieved_rates", v.achieved_rates}};
}

void to_json(json& j, const ResultRow& v) {
    j = {{"value", v.value}, {"scheme", to_string(v.scheme)}, {"mean", v.mean}, {"std", v.std}, {"trials", v.trials}};
}

void to_json(json& j, const ScaOptions& v) {
    j = {{"n_starts", v.n_starts},       {"max_iterations", v.max_iterations}, {"alpha_tol", v.alpha_tol},
         {"accept_tol", v.accept_tol},   {"barrier_gap", v.barrier_gap},       {"seed", v.seed}};
}

}  // namespace rsma
