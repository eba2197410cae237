#pragma once

#include "smectic/energy.hpp"

namespace smectic {

/// Term-by-term expansion of (T^V ; grad v). quad entries carry their
/// coefficients (alpha1 |d.Dv d|^2 etc.); q_cross holds the three
/// q-coupled pairings that cancel against the tested director equation;
/// sign_indefinite holds the four kappa cross terms.
struct StressPowerLedger {
    std::array<double, 6> quad{};            // a1, a4, c5, t1, t2eff, 2k2 blocks
    std::array<double, 3> q_cross{};         // -l(Dvd,q), (q,Wvd), -2k1g(Dva,q)
    std::array<double, 4> sign_indefinite{}; // 2k3, 4k4, 4k5, 4(k6-k1*l) blocks
    // Same six quadratures without coefficients, ordered as the betas:
    // |Dv|^2, |d.Dv d|^2, |Dv d|^2, |a.Dv a|^2, |Dv a|^2, |d.Dv a|^2.
    std::array<double, 6> raw{};

    double sum() const;
};

/// Material derivative of the director: dt_d + (v.grad)d - (grad v)_skw d.
SpectralVectorField material_derivative(const State& s,
                                        const SpectralVectorField& dt_d);

/// Viscous stress in the time-derivative-free form (q replaces the
/// material derivative via the director equation).
SpectralTensorField viscous_stress_discrete(const State& s,
                                            const SpectralVectorField& q,
                                            const ModelParams& p);

/// Viscous stress in the original form, in terms of the material
/// derivative d_ring.
SpectralTensorField viscous_stress_original(const State& s,
                                            const SpectralVectorField& d_ring,
                                            const ModelParams& p);

/// Each ledger entry from its own quadrature, independent of the
/// assembled tensor.
StressPowerLedger stress_power(const State& s, const SpectralVectorField& q,
                               const ModelParams& p);

} // namespace smectic
