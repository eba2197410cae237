#pragma once

#include "smectic/solver.hpp"

#include <string>
#include <vector>

namespace smectic {

struct ResidualReport {
    std::string name;
    double value = 0.0;     // residual magnitude
    double scale = 0.0;     // magnitude of the largest constituent
    double relative = 0.0;  // value / scale (0 when everything vanishes)
};

ResidualReport make_report(std::string name, double value, double scale);

/// |(T^E ; grad v) - (grad d^T q + grad phi j, v)|; requires div v = 0.
ResidualReport cancellation_residual(const State& s, const ModelParams& p);

/// ((v.grad)d, q) + ((v.grad)phi, j) - (grad d^T q + grad phi j, v).
ResidualReport advection_residual(const State& s, const ModelParams& p);

/// |dF/dt - (dt d, q) - (dt psi, j)| by centered differences around
/// snapshot `center` (interior index). Requires >= 3 snapshots.
ResidualReport chain_rule_residual(const Trajectory& traj, const ModelParams& p,
                                   std::size_t center);

/// Worst interior chain-rule residual over the trajectory.
ResidualReport chain_rule_residual(const Trajectory& traj, const ModelParams& p);

/// Energy-law defect R(t) per snapshot (zero in exact arithmetic as
/// dt -> 0 at the scheme's order).
std::vector<ResidualReport> energy_identity_residual(const Trajectory& traj,
                                                     const ModelParams& p);

struct InequalityCheck {
    double t;
    double lhs, rhs;
    bool pass;
};

/// Absorbed energy inequality with the certificate's betas; the dual
/// forcing norm enters with c = 1/alpha4 and slack tol = 50*dt*(1+E(0)).
std::vector<InequalityCheck>
energy_inequality_check(const Trajectory& traj,
                        const DissipativityCertificate& cert,
                        const ModelParams& p);

struct CoercivityResult {
    bool pass;
    double margin;  // F - min(k1,k3,k5)*(|grad d|^2 + |lap psi|^2)/2
    double lhs, rhs;
};

CoercivityResult coercivity_check(const State& s, const ModelParams& p);

struct NormLedgerRow {
    double t;
    double v_l2, grad_d_l2, lap_psi_l2, lap_d_l2, bilap_psi_l2;
    double dv_l2, d_dv_d_l2, a_dv_a_l2, dv_d_l2, dv_a_l2, d_dv_a_l2;
    double grad_d_l16_5, d_l48_5, hess_phi_l24_7, grad_phi_l12;
    double gn_ratio_grad_d, gn_ratio_d, gn_ratio_hess_phi, gn_ratio_grad_phi;
};

struct NormLedger {
    std::vector<NormLedgerRow> rows;
};

NormLedger norm_ledger(const Trajectory& traj, const ModelParams& p);

/// L^p(Omega) norm of the pointwise magnitude of a set of component
/// fields, by quadrature on a refine-times-finer grid. `shift` adds a
/// constant per component (the pitch part of grad phi).
double lp_norm(const std::vector<const SpectralScalarField*>& comps, double p,
               int refine, const std::vector<double>& shift = {});

} // namespace smectic
