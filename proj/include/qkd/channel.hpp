#ifndef QKD_CHANNEL_HPP
#define QKD_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include "qkd/framing.hpp"

namespace qkd {

// Statistical model of the optical layer: weak coherent pulse source, lossy
// fiber, polarization drift and gated single-photon detectors. Detectors are
// treated as independent Bernoulli firings per gate; the per-detector firing
// probability follows from Poisson thinning of the pulse across the receiver
// ports. Everything is a pure function of (inputs, seed).

enum class IntensityClass : std::uint8_t { Signal = 0, Decoy1 = 1, Decoy2 = 2 };
inline constexpr int kIntensityClassCount = 3;

struct PulseConfig {
    double mu = 0.5;    // signal mean photon number
    double nu1 = 0.1;   // decoy-1 intensity
    double nu2 = 0.005; // decoy-2 intensity
    // Emission probability per pulse: signal / decoy1 / decoy2.
    double class_probabilities[3] = {0.875, 0.0625, 0.0625};

    double intensity(IntensityClass c) const {
        switch (c) {
            case IntensityClass::Signal: return mu;
            case IntensityClass::Decoy1: return nu1;
            default: return nu2;
        }
    }
    void validate() const;
};

struct DriftParams {
    double step_sigma = 0.0;   // QBER random-walk std dev per sqrt(second)
    double reset_value = 0.0;  // drift contribution right after compensation
    void validate() const;
};

struct ChannelParams {
    double loss_db = 6.5;           // fiber attenuation
    double receiver_loss_db = 3.5;  // internal attenuation on Bob's side
    double y0 = 0.0;                // dark-count yield per gate (all detectors)
    double e0 = 0.5;                // error rate of dark counts, fixed
    double e_det = 0.01;            // misalignment/baseline optical error
    DriftParams drift;
    void validate() const;
};

struct DetectorParams {
    double efficiency = 0.10;
    double gate_rate_hz = 1e6;
    int detector_count = 4;  // 1 or 4
    double dark_prob_per_gate = 0.0;  // per detector
    void validate() const;
};

struct DetectionEvent {
    std::uint32_t pulse_index = 0;
    std::uint8_t detector_id = 0;  // (basis<<1)|bit
    std::uint8_t bob_basis = 0;
    std::uint8_t bob_bit = 0;
    bool is_coincidence = false;
};

// 10^(-loss_db/10).
double transmittance_from_db(double loss_db);

// Poisson probability of emitting two or more photons: 1 - e^-mu (1 + mu).
double multi_photon_fraction(double mu);

// End-to-end photon survival probability eta.
double overall_eta(const ChannelParams& channel, const DetectorParams& detectors);

// Per-gated-pulse detection probability Q_x = Y0 + (1-Y0)(1 - e^{-eta x}).
double expected_gain(const ChannelParams& channel, const DetectorParams& detectors,
                     double intensity);

// Error gain E_x Q_x = e0 Y0 + e_det (1 - e^{-eta x}).
double expected_error_gain(const ChannelParams& channel, const DetectorParams& detectors,
                           double intensity);

// Conditional QBER E_x = (E_x Q_x) / Q_x; throws when Q_x == 0.
double expected_qber(const ChannelParams& channel, const DetectorParams& detectors,
                     double intensity);

// Simulates one frame's transit through fiber and detectors. Gates every
// (clock_rate / gate_rate)-th pulse when the detectors are slower than the
// source. Coincidences (more than one detector in a gate) are flagged, not
// collapsed; see sifting::collapse_coincidences.
std::vector<DetectionEvent> simulate_frame(const QuantumFrame& frame,
                                           const PulseConfig& pulses,
                                           const ChannelParams& channel,
                                           const DetectorParams& detectors,
                                           double clock_rate_hz,
                                           std::uint64_t seed,
                                           double elapsed_drift_qber);

}  // namespace qkd

#endif
