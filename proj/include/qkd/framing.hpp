#ifndef QKD_FRAMING_HPP
#define QKD_FRAMING_HPP

#include <cstdint>
#include <vector>

namespace qkd {

struct PulseConfig;

// One encoded pulse slot within a quantum frame.
struct Qubit {
    std::uint8_t bit = 0;
    std::uint8_t basis = 0;
    std::uint8_t intensity_class = 0;  // IntensityClass
};

// Alternating classical-header / faint-pulse block. The header carries frame
// number, routing addresses and the polarization-control flag; the payload is
// the per-pulse bit/basis/intensity sequence.
struct QuantumFrame {
    std::uint32_t frame_number = 0;
    std::uint8_t sender_addr = 0;
    std::uint8_t receiver_addr = 0;
    bool pol_control_flag = false;
    std::vector<Qubit> qubits;
};

struct ClockConfig {
    double clock_rate_hz = 1e8;
    std::uint32_t frame_qubits = 10000000;
    void validate() const;
    double qubit_time_ms() const { return 1000.0 * frame_qubits / clock_rate_hz; }
};

// Fixed stage durations of the frame cycle (ms). Stage e follows from the
// clock; stage g is an output of the pipeline, not a constant.
struct TimingDefaults {
    double frame_gen_ms = 225.0;     // a
    double data_transfer_ms = 225.0; // b
    double header_ms = 0.00096;      // c
    double deadtime_pre_ms = 50.0;   // d
    double deadtime_post_ms = 50.0;  // f
    double pol_avg_ms = 140.0;       // h, averaged per frame
    void validate() const;
};

struct FrameConfig {
    ClockConfig clock;
    TimingDefaults timing;
    std::uint8_t sender_addr = 0xA1;
    std::uint8_t receiver_addr = 0xB0;
};

// Per-frame stage budget, all in ms.
struct TimelineBudget {
    double t_a = 0, t_b = 0, t_c = 0, t_d = 0, t_e = 0, t_f = 0, t_g = 0, t_h = 0;
    double total = 0;
};

// Draws bits, bases and intensity classes for one frame from the seeded
// stream; deterministic given (seed, frame_number).
QuantumFrame build_frame(std::uint32_t frame_number, const FrameConfig& config,
                         const PulseConfig& pulses, std::uint64_t seed);

// Stage budget with g supplied by the caller and h included when requested.
TimelineBudget timeline(const FrameConfig& config, double g_ms, bool include_pol);

// Fraction of the cycle spent transmitting qubits, t_e / total.
double duty_cycle(const TimelineBudget& budget);

}  // namespace qkd

#endif
