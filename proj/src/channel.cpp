#include "qkd/channel.hpp"

#include <algorithm>
#include <cmath>

#include "qkd/errors.hpp"
#include "qkd/rng.hpp"

namespace qkd {

void PulseConfig::validate() const {
    if (!(mu > 0)) throw ValidationError("source: mu must be > 0");
    if (!(nu2 >= 0 && nu2 < nu1 && nu1 < mu))
        throw ValidationError("source: intensities must satisfy 0 <= nu2 < nu1 < mu");
    if (!(nu1 + nu2 < mu))
        throw ValidationError("source: nu1 + nu2 < mu required for decoy bounds");
    double sum = 0;
    for (double p : class_probabilities) {
        if (p < 0 || p > 1) throw ValidationError("source: class probability outside [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ValidationError("source: class probabilities must sum to 1");
}

void DriftParams::validate() const {
    if (step_sigma < 0) throw ValidationError("drift: step_sigma must be >= 0");
    if (reset_value < 0 || reset_value > 0.5)
        throw ValidationError("drift: reset_value outside [0, 0.5]");
}

void ChannelParams::validate() const {
    if (loss_db < 0) throw ValidationError("channel: loss_db must be >= 0");
    if (receiver_loss_db < 0) throw ValidationError("channel: receiver_loss_db must be >= 0");
    if (y0 < 0 || y0 >= 1) throw ValidationError("channel: y0 outside [0, 1)");
    if (e0 != 0.5) throw ValidationError("channel: e0 is fixed at 0.5");
    if (e_det < 0 || e_det >= 0.5) throw ValidationError("channel: e_det outside [0, 0.5)");
    drift.validate();
}

void DetectorParams::validate() const {
    if (efficiency < 0 || efficiency > 1)
        throw ValidationError("detector: efficiency outside [0, 1]");
    if (gate_rate_hz <= 0) throw ValidationError("detector: gate_rate_hz must be > 0");
    if (detector_count != 1 && detector_count != 4)
        throw ValidationError("detector: detector_count must be 1 or 4");
    if (dark_prob_per_gate < 0 || dark_prob_per_gate >= 1)
        throw ValidationError("detector: dark_prob_per_gate outside [0, 1)");
}

double transmittance_from_db(double loss_db) {
    if (loss_db < 0) throw ValidationError("transmittance: loss_db must be >= 0");
    return std::pow(10.0, -loss_db / 10.0);
}

double multi_photon_fraction(double mu) {
    if (mu < 0) throw ValidationError("multi_photon_fraction: mu must be >= 0");
    return -std::expm1(-mu) - mu * std::exp(-mu);
}

double overall_eta(const ChannelParams& channel, const DetectorParams& detectors) {
    return transmittance_from_db(channel.loss_db) *
           transmittance_from_db(channel.receiver_loss_db) * detectors.efficiency;
}

double expected_gain(const ChannelParams& channel, const DetectorParams& detectors,
                     double intensity) {
    if (intensity < 0) throw ValidationError("expected_gain: intensity must be >= 0");
    channel.validate();
    detectors.validate();
    double eta = overall_eta(channel, detectors);
    return channel.y0 + (1.0 - channel.y0) * (-std::expm1(-eta * intensity));
}

double expected_error_gain(const ChannelParams& channel, const DetectorParams& detectors,
                           double intensity) {
    if (intensity < 0) throw ValidationError("expected_error_gain: intensity must be >= 0");
    channel.validate();
    detectors.validate();
    double eta = overall_eta(channel, detectors);
    return channel.e0 * channel.y0 + channel.e_det * (-std::expm1(-eta * intensity));
}

double expected_qber(const ChannelParams& channel, const DetectorParams& detectors,
                     double intensity) {
    double q = expected_gain(channel, detectors, intensity);
    if (q <= 0) throw ValidationError("expected_qber: undefined QBER, Q_x = 0");
    return expected_error_gain(channel, detectors, intensity) / q;
}

namespace {

// Receiver port roles for one pulse. Which physical detector plays which role
// depends only on Alice's basis/bit; the firing probabilities do not.
enum Role { kMatchedCorrect = 0, kMatchedWrong = 1, kOtherBasis0 = 2, kOtherBasis1 = 3 };

struct ClassTable {
    // 4-detector mode: probability that any detector fires, plus the
    // conditional CDF over the 15 non-empty role-firing patterns.
    double p_any = 0;
    double pattern_cdf[15];
    // 1-detector mode: firing probability of the lone detector (port basis 0 /
    // bit 0), indexed by [alice_basis][alice_bit].
    double p_single[2][2] = {{0, 0}, {0, 0}};
};

// Firing probabilities fold together the Poisson photon number, per-photon
// survival at eta, the basis/port routing and the per-detector dark count: a
// port receiving thinned mean m fires with probability 1 - (1-d) e^{-m}.
// Detectors fire independently per gate.
ClassTable build_class_table(double intensity, double eta, double e_eff, double dark,
                             int detector_count) {
    double mean = eta * intensity;
    double role_mean[4] = {0.5 * mean * (1.0 - e_eff), 0.5 * mean * e_eff,
                           0.25 * mean, 0.25 * mean};
    double p[4];
    for (int r = 0; r < 4; ++r) p[r] = 1.0 - (1.0 - dark) * std::exp(-role_mean[r]);

    ClassTable t;
    if (detector_count == 1) {
        t.p_single[0][0] = p[kMatchedCorrect];
        t.p_single[0][1] = p[kMatchedWrong];
        t.p_single[1][0] = p[kOtherBasis0];
        t.p_single[1][1] = p[kOtherBasis0];
        return t;
    }
    double none = (1 - p[0]) * (1 - p[1]) * (1 - p[2]) * (1 - p[3]);
    t.p_any = 1.0 - none;
    double cum = 0;
    for (int mask = 1; mask < 16; ++mask) {
        double prob = 1.0;
        for (int r = 0; r < 4; ++r) prob *= ((mask >> r) & 1) ? p[r] : 1.0 - p[r];
        cum += prob;
        t.pattern_cdf[mask - 1] = t.p_any > 0 ? cum / t.p_any : 1.0;
    }
    t.pattern_cdf[14] = 1.0;  // guard against rounding
    return t;
}

}  // namespace

std::vector<DetectionEvent> simulate_frame(const QuantumFrame& frame,
                                           const PulseConfig& pulses,
                                           const ChannelParams& channel,
                                           const DetectorParams& detectors,
                                           double clock_rate_hz,
                                           std::uint64_t seed,
                                           double elapsed_drift_qber) {
    pulses.validate();
    channel.validate();
    detectors.validate();
    if (clock_rate_hz <= 0) throw ValidationError("simulate_frame: clock_rate_hz must be > 0");
    if (elapsed_drift_qber < 0 || elapsed_drift_qber > 0.5)
        throw ValidationError("simulate_frame: drift QBER outside [0, 0.5]");

    std::vector<DetectionEvent> events;
    if (frame.qubits.empty()) return events;

    double eta = overall_eta(channel, detectors);
    double e_eff = std::clamp(channel.e_det + elapsed_drift_qber, 0.0, 0.5);
    auto stride = static_cast<std::size_t>(std::max<long long>(
        1, std::llround(clock_rate_hz / detectors.gate_rate_hz)));

    ClassTable tables[kIntensityClassCount];
    for (int c = 0; c < kIntensityClassCount; ++c) {
        tables[c] = build_class_table(pulses.intensity(static_cast<IntensityClass>(c)), eta,
                                      e_eff, detectors.dark_prob_per_gate,
                                      detectors.detector_count);
    }

    Rng rng = Rng::stream(seed, "chan", frame.frame_number);
    const bool single = detectors.detector_count == 1;
    const std::size_t n = frame.qubits.size();

    for (std::size_t i = 0; i < n; i += stride) {
        const Qubit& q = frame.qubits[i];
        const ClassTable& t = tables[q.intensity_class];
        double u = rng.next_double();
        if (single) {
            if (u >= t.p_single[q.basis][q.bit]) continue;
            events.push_back({static_cast<std::uint32_t>(i), 0, 0, 0, false});
            continue;
        }
        if (u >= t.p_any) continue;
        // Detection: pick which role pattern fired, then map roles onto the
        // physical detectors for this pulse's basis/bit.
        double v = rng.next_double();
        int mask = 1;
        for (int k = 0; k < 15; ++k) {
            if (v <= t.pattern_cdf[k]) {
                mask = k + 1;
                break;
            }
        }
        bool coincidence = (mask & (mask - 1)) != 0;
        std::uint8_t role_detector[4];
        role_detector[kMatchedCorrect] = static_cast<std::uint8_t>(q.basis * 2 + q.bit);
        role_detector[kMatchedWrong] = static_cast<std::uint8_t>(q.basis * 2 + (1 - q.bit));
        role_detector[kOtherBasis0] = static_cast<std::uint8_t>((1 - q.basis) * 2);
        role_detector[kOtherBasis1] = static_cast<std::uint8_t>((1 - q.basis) * 2 + 1);
        for (int r = 0; r < 4; ++r) {
            if (!((mask >> r) & 1)) continue;
            std::uint8_t id = role_detector[r];
            events.push_back({static_cast<std::uint32_t>(i), id,
                              static_cast<std::uint8_t>(id >> 1),
                              static_cast<std::uint8_t>(id & 1), coincidence});
        }
    }
    return events;
}

}  // namespace qkd
