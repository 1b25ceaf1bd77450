#include "qkd/decoy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "qkd/errors.hpp"

namespace qkd {

void KeyRateParams::validate() const {
    if (f_ec < 1.0) throw ValidationError("keyrate: f_ec must be >= 1");
    if (!(q_sift > 0 && q_sift <= 1)) throw ValidationError("keyrate: q_sift outside (0, 1]");
    if (assumed_y0 && (*assumed_y0 < 0 || *assumed_y0 >= 1))
        throw ValidationError("keyrate: assumed_y0 outside [0, 1)");
}

double binary_entropy(double p) {
    if (p < 0 || p > 1) throw ValidationError("binary_entropy: p outside [0, 1]");
    if (p == 0 || p == 1) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

static void check_intensities(double mu, double nu1, double nu2) {
    if (!(nu2 >= 0 && nu2 < nu1 && nu1 + nu2 < mu))
        throw ValidationError(
            "decoy: intensities must satisfy 0 <= nu2 < nu1 and nu1 + nu2 < mu");
}

double y1_lower_bound(double q_mu, double q_nu1, double q_nu2, double mu, double nu1,
                      double nu2, double y0) {
    check_intensities(mu, nu1, nu2);
    for (double q : {q_mu, q_nu1, q_nu2})
        if (q < 0 || q > 1) throw ValidationError("decoy: gain outside [0, 1]");
    double denom = mu * (nu1 - nu2) - nu1 * nu1 + nu2 * nu2;
    double bracket = q_nu1 * std::exp(nu1) - q_nu2 * std::exp(nu2) -
                     (nu1 * nu1 - nu2 * nu2) / (mu * mu) * (q_mu * std::exp(mu) - y0);
    return std::max(mu / denom * bracket, 0.0);
}

double y0_lower_bound(double eq_nu1, double eq_nu2, double nu1, double nu2) {
    double v = (nu1 * eq_nu2 * std::exp(nu2) - nu2 * eq_nu1 * std::exp(nu1)) / (nu1 - nu2);
    return std::max(v, 0.0);
}

std::optional<double> e1_upper_bound(double eq_nu1, double eq_nu2, double nu1, double nu2,
                                     double y1_l) {
    if (y1_l <= 0) return std::nullopt;
    double v = (eq_nu1 * std::exp(nu1) - eq_nu2 * std::exp(nu2)) / ((nu1 - nu2) * y1_l);
    return std::clamp(v, 0.0, 0.5);
}

double secret_fraction(const DecoyEstimates& estimates, double e_mu, double q_mu,
                       const KeyRateParams& params) {
    params.validate();
    double e1 = estimates.e1_unbounded ? 0.5 : estimates.e1_u;
    double r = params.q_sift * (-q_mu * params.f_ec * binary_entropy(e_mu) +
                                estimates.q1_l * (1.0 - binary_entropy(e1)));
    return std::max(r, 0.0);
}

DecoyReport analyze_tally(const DecoyTally& tally, const PulseConfig& pulses,
                          const KeyRateParams& params) {
    auto t0 = std::chrono::steady_clock::now();
    pulses.validate();
    params.validate();

    static const char* kClassNames[] = {"signal", "decoy1", "decoy2"};
    for (int c = 0; c < kIntensityClassCount; ++c) {
        if (tally.sent[c] == 0)
            throw InsufficientDataError(std::string("analyze_tally: no pulses sent in class ") +
                                        kClassNames[c]);
    }

    DecoyReport report;
    DecoyEstimates& est = report.estimates;
    double gains[3], qbers[3];
    for (int c = 0; c < kIntensityClassCount; ++c) {
        // detected counts are matched-basis; divide out the sifting factor to
        // recover the per-pulse gain the bounds are written against.
        double raw = static_cast<double>(tally.detected[c]) / tally.sent[c];
        gains[c] = std::min(raw / params.q_sift, 1.0);
        qbers[c] = tally.detected[c] > 0
                       ? static_cast<double>(tally.errors[c]) / tally.detected[c]
                       : 0.0;
    }
    est.q_mu = gains[0];
    est.q_nu1 = gains[1];
    est.q_nu2 = gains[2];
    est.e_mu = qbers[0];
    est.e_nu1 = qbers[1];
    est.e_nu2 = qbers[2];

    double eq_nu1 = est.e_nu1 * est.q_nu1;
    double eq_nu2 = est.e_nu2 * est.q_nu2;
    est.y0_l = params.assumed_y0 ? *params.assumed_y0
                                 : y0_lower_bound(eq_nu1, eq_nu2, pulses.nu1, pulses.nu2);
    est.y1_l = y1_lower_bound(est.q_mu, est.q_nu1, est.q_nu2, pulses.mu, pulses.nu1,
                              pulses.nu2, est.y0_l);
    auto e1 = e1_upper_bound(eq_nu1, eq_nu2, pulses.nu1, pulses.nu2, est.y1_l);
    est.e1_unbounded = !e1.has_value();
    est.e1_u = e1.value_or(0.5);
    est.q1_l = est.y1_l * pulses.mu * std::exp(-pulses.mu);

    report.secret_fraction = secret_fraction(est, est.e_mu, est.q_mu, params);
    report.seconds_elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace qkd
