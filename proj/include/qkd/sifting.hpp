#ifndef QKD_SIFTING_HPP
#define QKD_SIFTING_HPP

#include <cstdint>
#include <vector>

#include "qkd/channel.hpp"

namespace qkd {

// Basis reconciliation: Bob reveals bases and positions (bits withheld),
// Alice answers with the keep mask. Coincidences are collapsed to a single
// surviving detection before anything is reported.

struct ReportEntry {
    std::uint32_t pulse_index = 0;
    std::uint8_t bob_basis = 0;
};

struct DetectionReport {
    std::uint32_t frame_number = 0;
    std::vector<ReportEntry> entries;  // strictly increasing pulse_index
};

struct BitOrigin {
    std::uint32_t frame_number = 0;
    std::uint32_t pulse_index = 0;
};

// Position-aligned run of key bits on one side, with provenance.
struct SiftedBlock {
    std::vector<std::uint8_t> bits;
    std::vector<BitOrigin> origin;
    std::vector<std::uint8_t> intensity_class;  // per bit
};

// Per-intensity-class counters feeding the decoy analysis. Detected counts
// are matched-basis detections.
struct DecoyTally {
    std::uint64_t sent[kIntensityClassCount] = {0, 0, 0};
    std::uint64_t detected[kIntensityClassCount] = {0, 0, 0};
    std::uint64_t errors[kIntensityClassCount] = {0, 0, 0};

    std::uint64_t total_detected() const {
        return detected[0] + detected[1] + detected[2];
    }
};

struct SiftResult {
    SiftedBlock alice;
    SiftedBlock bob;
    std::vector<std::uint8_t> keep_mask;  // one flag per report entry
};

// For each gate with more than one detection exactly one survives, chosen
// uniformly from the seeded stream. Input must be sorted by pulse_index.
std::vector<DetectionEvent> collapse_coincidences(const std::vector<DetectionEvent>& events,
                                                  std::uint64_t seed);

// Bob's outbound view of a collapsed event list: the report (positions and
// bases) and, kept locally, his measured bits aligned with the entries.
DetectionReport make_report(std::uint32_t frame_number,
                            const std::vector<DetectionEvent>& collapsed);
std::vector<std::uint8_t> report_bits(const std::vector<DetectionEvent>& collapsed);

// Keeps exactly the entries where Bob's basis matches Alice's. Blocks come
// back position-aligned with intensity classes copied from the frame.
SiftResult sift(const QuantumFrame& frame, const DetectionReport& report,
                const std::vector<std::uint8_t>& bob_bits);

// Adds one frame's worth of counts: sent per class, kept detections per
// class, and errors at the given kept pulse indices.
void accumulate_tally(DecoyTally& tally, const QuantumFrame& frame,
                      const DetectionReport& report,
                      const std::vector<std::uint8_t>& keep_mask,
                      const std::vector<std::uint32_t>& error_pulse_indices);

}  // namespace qkd

#endif
