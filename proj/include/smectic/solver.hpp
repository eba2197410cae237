#pragma once

#include "smectic/energy.hpp"
#include "smectic/stress.hpp"

#include <optional>
#include <vector>

namespace smectic {

enum class Scheme { ImexEuler, ImexRK2 };

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 0.0;
    Scheme scheme = Scheme::ImexRK2;
    int n_galerkin = 0;  // 0 => grid resolution
    int snapshot_stride = 1;
    std::optional<SpectralVectorField> forcing;  // solenoidal, constant in time
};

/// Running trapezoid-in-time integrals of the energy-law budget.
struct DissipationIntegrals {
    double qj = 0.0;                 // gamma|q|^2 + lambda_p|j|^2
    std::array<double, 6> quad{};    // coefficiented viscous quadratures
    std::array<double, 6> raw{};     // beta-ordered raw quadratures
    std::array<double, 4> cross{};   // sign-indefinite pairings
    double g_work = 0.0;             // <g, v>
    double g_dual = 0.0;             // |g|_{H^-1}^2
};

struct Snapshot {
    State state;
    EnergyBreakdown energy;
    StressPowerLedger ledger;
    double q_norm2 = 0.0;
    double j_norm2 = 0.0;
    DissipationIntegrals integrals;
};

struct Trajectory {
    std::vector<Snapshot> snaps;
    double dt = 0.0;
    Scheme scheme = Scheme::ImexRK2;
};

State project_initial_data(const SpectralVectorField& d0, const LayerField& phi0,
                           const SpectralVectorField& v0, int n);

SpectralVectorField rhs_director(const State& s, const ModelParams& p);
SpectralScalarField rhs_layer(const State& s, const ModelParams& p);
SpectralVectorField rhs_velocity(const State& s, const ModelParams& p,
                                 const SpectralVectorField* g);

/// One IMEX step; throws blowup_error when a field norm passes 1e12.
State step(const State& s, const SolverConfig& cfg, const ModelParams& p);

Trajectory run(const State& initial, const SolverConfig& cfg,
               const ModelParams& p);

} // namespace smectic
