#include "qkd/sifting.hpp"

#include <algorithm>
#include <string>

#include "qkd/errors.hpp"
#include "qkd/rng.hpp"

namespace qkd {

std::vector<DetectionEvent> collapse_coincidences(const std::vector<DetectionEvent>& events,
                                                  std::uint64_t seed) {
    std::vector<DetectionEvent> out;
    out.reserve(events.size());
    Rng rng = Rng::stream(seed, "coinc");
    std::size_t i = 0;
    while (i < events.size()) {
        std::size_t j = i + 1;
        while (j < events.size() && events[j].pulse_index == events[i].pulse_index) ++j;
        std::size_t pick = i;
        if (j - i > 1) pick = i + rng.bounded(j - i);
        DetectionEvent kept = events[pick];
        kept.is_coincidence = (j - i) > 1;
        out.push_back(kept);
        i = j;
    }
    return out;
}

DetectionReport make_report(std::uint32_t frame_number,
                            const std::vector<DetectionEvent>& collapsed) {
    DetectionReport report;
    report.frame_number = frame_number;
    report.entries.reserve(collapsed.size());
    for (const auto& e : collapsed) report.entries.push_back({e.pulse_index, e.bob_basis});
    return report;
}

std::vector<std::uint8_t> report_bits(const std::vector<DetectionEvent>& collapsed) {
    std::vector<std::uint8_t> bits;
    bits.reserve(collapsed.size());
    for (const auto& e : collapsed) bits.push_back(e.bob_bit);
    return bits;
}

SiftResult sift(const QuantumFrame& frame, const DetectionReport& report,
                const std::vector<std::uint8_t>& bob_bits) {
    if (bob_bits.size() != report.entries.size())
        throw ValidationError("sift: bob_bits length must match report entries");

    SiftResult result;
    result.keep_mask.resize(report.entries.size(), 0);
    for (std::size_t k = 0; k < report.entries.size(); ++k) {
        const ReportEntry& entry = report.entries[k];
        if (entry.pulse_index >= frame.qubits.size())
            throw ProtocolError("sift: pulse_index " + std::to_string(entry.pulse_index) +
                                " out of range for frame " +
                                std::to_string(frame.frame_number));
        const Qubit& q = frame.qubits[entry.pulse_index];
        if (q.basis != entry.bob_basis) continue;
        result.keep_mask[k] = 1;
        result.alice.bits.push_back(q.bit);
        result.bob.bits.push_back(bob_bits[k]);
        BitOrigin origin{frame.frame_number, entry.pulse_index};
        result.alice.origin.push_back(origin);
        result.bob.origin.push_back(origin);
        result.alice.intensity_class.push_back(q.intensity_class);
        result.bob.intensity_class.push_back(q.intensity_class);
    }
    return result;
}

void accumulate_tally(DecoyTally& tally, const QuantumFrame& frame,
                      const DetectionReport& report,
                      const std::vector<std::uint8_t>& keep_mask,
                      const std::vector<std::uint32_t>& error_pulse_indices) {
    if (keep_mask.size() != report.entries.size())
        throw ValidationError("accumulate_tally: keep_mask length must match report");

    for (const auto& q : frame.qubits) ++tally.sent[q.intensity_class];
    for (std::size_t k = 0; k < report.entries.size(); ++k) {
        if (!keep_mask[k]) continue;
        const Qubit& q = frame.qubits[report.entries[k].pulse_index];
        ++tally.detected[q.intensity_class];
    }
    for (std::uint32_t idx : error_pulse_indices) {
        if (idx >= frame.qubits.size())
            throw ValidationError("accumulate_tally: error position out of range");
        ++tally.errors[frame.qubits[idx].intensity_class];
    }
}

}  // namespace qkd
