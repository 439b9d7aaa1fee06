#include "walshrec/sensor.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace walshrec {

double SensorConfig::dynamic_range() const { return std::numbers::pi / (gamma * duration); }

double VisibilityModel::visibility(WalshIndex idx, double duration) const {
    if (std::isinf(t2)) return 1.0;
    if (!(t2 > 0.0)) throw std::invalid_argument("VisibilityModel: t2 must be > 0");
    double pulses = static_cast<double>(sequency_number(idx));
    double t2_seq = t2 * std::pow(std::max(pulses, 1.0), pulse_exponent);
    return std::exp(-std::pow(duration / t2_seq, stretch));
}

double accumulated_phase(const FieldProfile& b, WalshIndex idx, const SensorConfig& cfg,
                         unsigned quad_points_per_cell) {
    return cfg.gamma * cfg.duration * walsh_coefficient(b, idx, quad_points_per_cell);
}

double outcome_probability(double phi, double visibility) {
    if (!(visibility > 0.0 && visibility <= 1.0))
        throw std::invalid_argument("outcome_probability: visibility must be in (0,1]");
    return 0.5 * (1.0 + visibility * std::sin(phi));
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
    // 53 random bits; the standard distribution adaptors are not portable
    // across library implementations, this mapping is
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t paley_index) {
    std::uint64_t state = master ^ (paley_index * 0xD1B54A32D192ED03ULL);
    std::uint64_t s = splitmix64(state);
    return splitmix64(state) ^ s;
}

MeasurementRecord simulate_shots(double p0, std::uint64_t shots, std::uint64_t seed) {
    if (!(p0 >= 0.0 && p0 <= 1.0))
        throw std::invalid_argument("simulate_shots: p0 must be in [0,1]");
    std::mt19937_64 rng(seed);
    std::uint64_t zeros = 0;
    for (std::uint64_t i = 0; i < shots; ++i)
        if (uniform01(rng) < p0) ++zeros;
    MeasurementRecord rec;
    rec.shots = shots;
    rec.zeros = zeros;
    rec.seed = seed;
    return rec;
}

CoefficientEstimate estimate_from_probability(double p_hat, double visibility,
                                              const SensorConfig& cfg) {
    if (!(visibility > 0.0 && visibility <= 1.0))
        throw std::invalid_argument("estimate_coefficient: visibility must be in (0,1]");
    double x = (2.0 * p_hat - 1.0) / visibility;
    CoefficientEstimate est;
    if (x > 1.0) {
        x = 1.0;
        est.clamped = true;
    } else if (x < -1.0) {
        x = -1.0;
        est.clamped = true;
    }
    double phi = std::asin(x);
    est.value = phi / (cfg.gamma * cfg.duration);
    est.saturated = std::abs(phi) >= std::numbers::pi / 2.0;
    return est;
}

CoefficientEstimate estimate_coefficient(const MeasurementRecord& rec, const SensorConfig& cfg) {
    if (rec.zeros > rec.shots || rec.shots == 0)
        throw std::invalid_argument("estimate_coefficient: invalid shot counts");
    double p_hat = static_cast<double>(rec.zeros) / static_cast<double>(rec.shots);
    return estimate_from_probability(p_hat, rec.visibility, cfg);
}

AcquisitionResult run_protocol(const FieldProfile& b, const SensorConfig& cfg,
                               std::span<const std::uint64_t> plan_paley,
                               const VisibilityModel& vis, std::uint64_t shots,
                               std::uint64_t seed, bool noiseless,
                               unsigned quad_points_per_cell) {
    if (plan_paley.empty()) throw std::invalid_argument("run_protocol: empty plan");
    if (!noiseless && shots == 0)
        throw std::invalid_argument("run_protocol: shots must be >= 1");
    if (b.duration() != cfg.duration)
        throw std::invalid_argument("run_protocol: profile and config durations differ");
    AcquisitionResult result;
    result.spectrum.duration = cfg.duration;
    result.spectrum.provenance = Provenance::Estimated;

    // one slot per index; per-index RNG streams derive from (seed, index),
    // so any execution order yields the same records
    std::vector<MeasurementRecord> records(plan_paley.size());
    std::vector<CoefficientEstimate> estimates(plan_paley.size());
    auto acquire_one = [&](std::size_t slot) {
        std::uint64_t m = plan_paley[slot];
        double v = vis.visibility(paley(m), cfg.duration);
        double phi = accumulated_phase(b, paley(m), cfg, quad_points_per_cell);
        double p0 = outcome_probability(phi, v);

        MeasurementRecord rec;
        if (noiseless) {
            rec.shots = shots;
            rec.zeros = static_cast<std::uint64_t>(std::llround(p0 * static_cast<double>(shots)));
            rec.seed = derive_seed(seed, m);
            estimates[slot] = estimate_from_probability(p0, v, cfg);
        } else {
            rec = simulate_shots(p0, shots, derive_seed(seed, m));
            estimates[slot] = estimate_from_probability(
                static_cast<double>(rec.zeros) / static_cast<double>(rec.shots), v, cfg);
        }
        rec.paley = m;
        rec.visibility = v;
        records[slot] = rec;
    };

    unsigned workers = std::min<std::size_t>(std::thread::hardware_concurrency(),
                                             plan_paley.size());
    if (workers > 1 && plan_paley.size() > 4) {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < plan_paley.size(); i = next++)
                        acquire_one(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    } else {
        for (std::size_t i = 0; i < plan_paley.size(); ++i) acquire_one(i);
    }

    for (std::size_t i = 0; i < plan_paley.size(); ++i) {
        result.records.push_back(records[i]);
        result.spectrum.coefficients[plan_paley[i]] = estimates[i].value;
        if (estimates[i].clamped) ++result.clamp_events;
        if (estimates[i].saturated) ++result.saturated_indices;
    }
    return result;
}

}  // namespace walshrec
