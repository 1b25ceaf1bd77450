#ifndef QKD_DECOY_HPP
#define QKD_DECOY_HPP

#include <optional>
#include <string>

#include "qkd/sifting.hpp"

namespace qkd {

// Two-decoy estimation of the single-photon yield and error bounds, and the
// GLLP-style secret fraction of the corrected key.

struct DecoyEstimates {
    double q_mu = 0, q_nu1 = 0, q_nu2 = 0;  // empirical gains (per pulse)
    double e_mu = 0, e_nu1 = 0, e_nu2 = 0;  // empirical QBERs
    double y0_l = 0;                        // dark-yield lower bound
    double y1_l = 0;                        // single-photon yield lower bound
    double e1_u = 0;                        // single-photon error upper bound
    double q1_l = 0;                        // = y1_l * mu * e^-mu
    bool e1_unbounded = false;              // y1_l hit zero
};

struct KeyRateParams {
    double f_ec = 1.2;    // error-correction efficiency factor
    double q_sift = 0.5;  // sifting factor
    // Assumed dark yield; when unset the two-decoy Y0 lower bound is used.
    std::optional<double> assumed_y0;
    void validate() const;
};

struct DecoyReport {
    DecoyEstimates estimates;
    double secret_fraction = 0;  // R, per pulse
    double seconds_elapsed = 0;
};

// H2(p) = -p log2 p - (1-p) log2 (1-p); H2(0) = H2(1) = 0.
double binary_entropy(double p);

// Two-decoy single-photon yield lower bound, clamped at 0:
//   Y1 >= mu / (mu(nu1-nu2) - nu1^2 + nu2^2)
//        * [Q_nu1 e^nu1 - Q_nu2 e^nu2 - (nu1^2-nu2^2)/mu^2 (Q_mu e^mu - Y0)]
double y1_lower_bound(double q_mu, double q_nu1, double q_nu2, double mu, double nu1,
                      double nu2, double y0);

// Two-decoy dark-yield lower bound from the error gains, clamped at 0.
double y0_lower_bound(double eq_nu1, double eq_nu2, double nu1, double nu2);

// Single-photon error upper bound, clamped to [0, 0.5]. Returns nullopt when
// y1_l <= 0 (unbounded; the caller must treat the key length as zero).
std::optional<double> e1_upper_bound(double eq_nu1, double eq_nu2, double nu1, double nu2,
                                     double y1_l);

// R = q { -Q_mu f H2(E_mu) + Q1_L (1 - H2(e1_U)) }, clamped at 0.
double secret_fraction(const DecoyEstimates& estimates, double e_mu, double q_mu,
                       const KeyRateParams& params);

// Full chain on an aggregated tally: empirical gains and QBERs, the bounds,
// and the secret fraction. Empirical per-pulse gains are recovered from the
// matched-basis detection counts by dividing out the sifting factor.
DecoyReport analyze_tally(const DecoyTally& tally, const PulseConfig& pulses,
                          const KeyRateParams& params);

}  // namespace qkd

#endif
