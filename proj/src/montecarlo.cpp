#include "rsma/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rsma/baselines.hpp"
#include "rsma/rate_region.hpp"

namespace rsma {

namespace {

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

bool is_paired(Scheme s) {
    return s == Scheme::rsma_up_sw || s == Scheme::rsma_up_sm || s == Scheme::rsma_up_ss;
}

PairingStrategy strategy_of(Scheme s) {
    switch (s) {
        case Scheme::rsma_up_sm: return PairingStrategy::sm;
        case Scheme::rsma_up_ss: return PairingStrategy::ss;
        default: return PairingStrategy::sw;
    }
}

std::size_t user_count(const SweepSpec& spec, const DropModel& model, double value) {
    if (model.fixed_gains) return model.fixed_gains->size();
    if (spec.axis == SweepAxis::k_users) return static_cast<std::size_t>(std::llround(value));
    return model.k;
}

Scenario make_drop(const DropModel& model, const DropDefaults& defaults, std::size_t k, std::uint64_t seed) {
    if (model.fixed_gains) {
        const auto& g = *model.fixed_gains;
        if (!defaults.weights.empty() && defaults.weights.size() != g.size()) {
            throw std::invalid_argument("weight count does not match user count");
        }
        std::vector<UserParams> users;
        for (std::size_t i = 0; i < g.size(); ++i) {
            users.push_back({g[i], defaults.p_max_w, defaults.weights.empty() ? 1.0 : defaults.weights[i]});
        }
        return Scenario(std::move(users), defaults.bandwidth_hz, defaults.noise_psd_w_per_hz);
    }
    DropConfig cfg;
    cfg.area_side_m = model.area_side_m;
    cfg.k = k;
    cfg.shadow_std_db = model.shadow_std_db;
    cfg.min_dist_m = model.min_dist_m;
    cfg.seed = seed;
    return drop_users(cfg, defaults);
}

std::size_t worker_count(std::size_t requested, std::size_t jobs) {
    std::size_t n = requested;
    if (n == 0) {
        n = std::max(1u, std::thread::hardware_concurrency());
    }
    return std::max<std::size_t>(1, std::min(n, jobs));
}

double parse_double(const std::string& field) {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) {
        throw std::invalid_argument("malformed number in CSV: " + field);
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    return out;
}

}  // namespace

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::rsma: return "RSMA";
        case Scheme::rsma_up_sw: return "RSMA_UP_SW";
        case Scheme::rsma_up_sm: return "RSMA_UP_SM";
        case Scheme::rsma_up_ss: return "RSMA_UP_SS";
        case Scheme::noma: return "NOMA";
        case Scheme::fdma: return "FDMA";
        case Scheme::tdma: return "TDMA";
    }
    return "?";
}

Scheme parse_scheme(const std::string& name) {
    std::string key = upper(name);
    if (key.size() > 8 && key.compare(0, 8, "RSMA_UP(") == 0 && key.back() == ')') {
        key = "RSMA_UP_" + key.substr(8, key.size() - 9);
    }
    for (Scheme s : all_schemes()) {
        if (to_string(s) == key) return s;
    }
    throw std::invalid_argument("unknown scheme: " + name);
}

std::vector<Scheme> all_schemes() {
    return {Scheme::rsma, Scheme::rsma_up_sw, Scheme::rsma_up_sm, Scheme::rsma_up_ss,
            Scheme::noma, Scheme::fdma, Scheme::tdma};
}

double scheme_sum_rate(const Scenario& s, Scheme scheme, double pairing_eps) {
    switch (scheme) {
        case Scheme::rsma: return rsma_optimal_sum_rate(s).tau;
        case Scheme::noma: return noma_solve(s).tau;
        case Scheme::fdma: return fdma_solve(s).tau;
        case Scheme::tdma: return tdma_solve(s).tau;
        default: break;
    }
    return pairing_solve(s, make_pairs(s, strategy_of(scheme)), pairing_eps).tau;
}

std::string to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::p_max_dbm: return "p_max_dbm";
        case SweepAxis::bandwidth_hz: return "bandwidth_hz";
        case SweepAxis::d2_weight: return "d2_weight";
        case SweepAxis::k_users: return "k_users";
    }
    return "?";
}

SweepAxis parse_axis(const std::string& name) {
    for (SweepAxis a : {SweepAxis::p_max_dbm, SweepAxis::bandwidth_hz, SweepAxis::d2_weight, SweepAxis::k_users}) {
        if (to_string(a) == name) return a;
    }
    throw std::invalid_argument("unknown sweep axis: " + name);
}

void validate(const SweepSpec& spec, const DropModel& model) {
    if (spec.values.empty()) {
        throw std::invalid_argument("sweep needs at least one value");
    }
    if (!std::is_sorted(spec.values.begin(), spec.values.end())) {
        throw std::invalid_argument("sweep values must be sorted");
    }
    if (spec.trials == 0) {
        throw std::invalid_argument("sweep needs at least one trial");
    }
    if (spec.schemes.empty()) {
        throw std::invalid_argument("sweep needs at least one scheme");
    }
    if (!(spec.pairing_eps > 0.0)) {
        throw std::invalid_argument("pairing eps must be positive");
    }
    if (spec.axis == SweepAxis::k_users && model.fixed_gains) {
        throw std::invalid_argument("k_users axis cannot use fixed channel gains");
    }
    const bool paired = std::any_of(spec.schemes.begin(), spec.schemes.end(), is_paired);
    for (double v : spec.values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("sweep values must be finite");
        }
        switch (spec.axis) {
            case SweepAxis::bandwidth_hz:
                if (!(v > 0.0)) throw std::invalid_argument("bandwidth values must be positive");
                break;
            case SweepAxis::d2_weight:
                if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("d2_weight values must lie in (0, 1)");
                break;
            case SweepAxis::k_users:
                if (v < 1.0 || v != std::floor(v)) throw std::invalid_argument("k_users values must be positive integers");
                break;
            case SweepAxis::p_max_dbm: break;
        }
        const std::size_t k = user_count(spec, model, v);
        if (k == 0) {
            throw std::invalid_argument("sweep needs at least one user");
        }
        if (spec.axis == SweepAxis::d2_weight && k < 2) {
            throw std::invalid_argument("d2_weight axis needs at least two users");
        }
        if (paired && k % 2 != 0) {
            throw std::invalid_argument("paired schemes need an even user count");
        }
    }
}

Scenario sweep_scenario(const SweepSpec& spec, const DropModel& model, double value, std::size_t trial) {
    DropDefaults defaults = model.defaults;
    const std::size_t k = user_count(spec, model, value);
    switch (spec.axis) {
        case SweepAxis::p_max_dbm: defaults.p_max_w = dbm_to_watt(value); break;
        case SweepAxis::bandwidth_hz: defaults.bandwidth_hz = value; break;
        case SweepAxis::d2_weight:
            // Second user gets D2, the rest share the remainder evenly.
            defaults.weights.assign(k, (1.0 - value) / static_cast<double>(k - 1));
            defaults.weights[1] = value;
            break;
        case SweepAxis::k_users: defaults.weights.clear(); break;
    }
    return make_drop(model, defaults, k, derive_seed(spec.seed, trial));
}

std::vector<std::vector<double>> sample_trials(const std::vector<Scheme>& schemes, std::size_t trials,
                                               std::size_t threads, double pairing_eps,
                                               const std::function<Scenario(std::size_t)>& make) {
    std::vector<std::vector<double>> out(schemes.size(), std::vector<double>(trials, 0.0));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto work = [&] {
        for (std::size_t t = next++; t < trials; t = next++) {
            try {
                const Scenario s = make(t);
                for (std::size_t j = 0; j < schemes.size(); ++j) {
                    out[j][t] = scheme_sum_rate(s, schemes[j], pairing_eps);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = trials;
            }
        }
    };
    const std::size_t n = worker_count(threads, trials);
    if (n == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n);
        for (std::size_t i = 0; i < n; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec, const DropModel& model) {
    validate(spec, model);
    std::vector<ResultRow> rows;
    for (double v : spec.values) {
        const auto samples = sample_trials(spec.schemes, spec.trials, spec.threads, spec.pairing_eps,
                                           [&](std::size_t t) { return sweep_scenario(spec, model, v, t); });
        for (std::size_t j = 0; j < spec.schemes.size(); ++j) {
            const auto& x = samples[j];
            const double n = static_cast<double>(x.size());
            double mean = 0.0;
            for (double y : x) mean += y;
            mean /= n;
            double ss = 0.0;
            for (double y : x) ss += (y - mean) * (y - mean);
            const double sd = x.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
            rows.push_back({v, spec.schemes[j], mean, sd, x.size()});
        }
    }
    return rows;
}

std::vector<CdfSeries> run_cdf(const CdfSpec& spec, const DropModel& model) {
    if (spec.trials < 10) {
        throw std::invalid_argument("cdf needs at least 10 trials");
    }
    if (spec.schemes.empty()) {
        throw std::invalid_argument("cdf needs at least one scheme");
    }
    const std::size_t k = model.fixed_gains ? model.fixed_gains->size() : model.k;
    if (k == 0) {
        throw std::invalid_argument("cdf needs at least one user");
    }
    if (k % 2 != 0 && std::any_of(spec.schemes.begin(), spec.schemes.end(), is_paired)) {
        throw std::invalid_argument("paired schemes need an even user count");
    }
    auto samples = sample_trials(spec.schemes, spec.trials, spec.threads, spec.pairing_eps, [&](std::size_t t) {
        return make_drop(model, model.defaults, k, derive_seed(spec.seed, t));
    });
    std::vector<CdfSeries> out;
    for (std::size_t j = 0; j < spec.schemes.size(); ++j) {
        CdfSeries c;
        c.scheme = spec.schemes[j];
        c.samples = std::move(samples[j]);
        std::sort(c.samples.begin(), c.samples.end());
        const double n = static_cast<double>(c.samples.size());
        for (std::size_t i = 0; i < c.samples.size(); ++i) {
            c.ordinates.push_back((static_cast<double>(i) + 0.5) / n);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    os << "value,scheme,mean_bps,std_bps,trials\n";
    for (const auto& r : rows) {
        os << format_full(r.value) << ',' << to_string(r.scheme) << ',' << format_full(r.mean) << ','
           << format_full(r.std) << ',' << r.trials << '\n';
    }
}

void write_cdf_csv(std::ostream& os, const std::vector<CdfSeries>& series) {
    os << "scheme,index,sum_rate_bps,cdf\n";
    for (const auto& c : series) {
        for (std::size_t i = 0; i < c.samples.size(); ++i) {
            os << to_string(c.scheme) << ',' << i << ',' << format_full(c.samples[i]) << ','
               << format_full(c.ordinates[i]) << '\n';
        }
    }
}

namespace {

template <class Rows, class Writer>
void write_file(const Rows& rows, const std::string& path, Writer writer) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    writer(f, rows);
    f.flush();
    if (!f) {
        throw std::runtime_error("write to " + path + " failed");
    }
}

}  // namespace

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    write_file(rows, path, [](std::ostream& os, const auto& r) { write_sweep_csv(os, r); });
}

void emit_csv(const std::vector<CdfSeries>& series, const std::string& path) {
    write_file(series, path, [](std::ostream& os, const auto& s) { write_cdf_csv(os, s); });
}

std::vector<ResultRow> parse_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "value,scheme,mean_bps,std_bps,trials") {
        throw std::invalid_argument("not a sweep CSV");
    }
    std::vector<ResultRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 5) {
            throw std::invalid_argument("malformed sweep CSV line: " + line);
        }
        rows.push_back({parse_double(f[0]), parse_scheme(f[1]), parse_double(f[2]), parse_double(f[3]),
                        static_cast<std::size_t>(std::stoull(f[4]))});
    }
    return rows;
}

std::vector<CdfSeries> parse_cdf_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "scheme,index,sum_rate_bps,cdf") {
        throw std::invalid_argument("not a CDF CSV");
    }
    std::vector<CdfSeries> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 4) {
            throw std::invalid_argument("malformed CDF CSV line: " + line);
        }
        const Scheme s = parse_scheme(f[0]);
        if (out.empty() || out.back().scheme != s || std::stoull(f[1]) == 0) {
            out.push_back({s, {}, {}});
        }
        out.back().samples.push_back(parse_double(f[2]));
        out.back().ordinates.push_back(parse_double(f[3]));
    }
    return out;
}

}  // namespace rsma
