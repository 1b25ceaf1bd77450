#include "qkd/framing.hpp"

#include "qkd/channel.hpp"
#include "qkd/errors.hpp"
#include "qkd/rng.hpp"

namespace qkd {

void ClockConfig::validate() const {
    if (clock_rate_hz <= 0) throw ValidationError("clock: clock_rate_hz must be > 0");
}

void TimingDefaults::validate() const {
    for (double v : {frame_gen_ms, data_transfer_ms, header_ms, deadtime_pre_ms,
                     deadtime_post_ms, pol_avg_ms}) {
        if (v < 0) throw ValidationError("timing: stage durations must be >= 0");
    }
}

QuantumFrame build_frame(std::uint32_t frame_number, const FrameConfig& config,
                         const PulseConfig& pulses, std::uint64_t seed) {
    config.clock.validate();
    pulses.validate();

    QuantumFrame frame;
    frame.frame_number = frame_number;
    frame.sender_addr = config.sender_addr;
    frame.receiver_addr = config.receiver_addr;
    frame.qubits.resize(config.clock.frame_qubits);

    Rng rng = Rng::stream(seed, "frame", frame_number);
    const double p_signal = pulses.class_probabilities[0];
    const double p_decoy1 = pulses.class_probabilities[1];
    for (auto& q : frame.qubits) {
        std::uint64_t r = rng.next_u64();
        q.bit = static_cast<std::uint8_t>(r & 1);
        q.basis = static_cast<std::uint8_t>((r >> 1) & 1);
        double u = rng.next_double();
        if (u < p_signal)
            q.intensity_class = static_cast<std::uint8_t>(IntensityClass::Signal);
        else if (u < p_signal + p_decoy1)
            q.intensity_class = static_cast<std::uint8_t>(IntensityClass::Decoy1);
        else
            q.intensity_class = static_cast<std::uint8_t>(IntensityClass::Decoy2);
    }
    return frame;
}

TimelineBudget timeline(const FrameConfig& config, double g_ms, bool include_pol) {
    if (g_ms < 0) throw ValidationError("timeline: g_ms must be >= 0");
    config.clock.validate();
    config.timing.validate();

    TimelineBudget b;
    b.t_a = config.timing.frame_gen_ms;
    b.t_b = config.timing.data_transfer_ms;
    b.t_c = config.timing.header_ms;
    b.t_d = config.timing.deadtime_pre_ms;
    b.t_e = config.clock.qubit_time_ms();
    b.t_f = config.timing.deadtime_post_ms;
    b.t_g = g_ms;
    b.t_h = include_pol ? config.timing.pol_avg_ms : 0.0;
    b.total = b.t_a + b.t_b + b.t_c + b.t_d + b.t_e + b.t_f + b.t_g + b.t_h;
    return b;
}

double duty_cycle(const TimelineBudget& budget) {
    if (budget.total <= 0) throw ValidationError("duty_cycle: budget total must be > 0");
    return budget.t_e / budget.total;
}

}  // namespace qkd
