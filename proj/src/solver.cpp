#include "smectic/solver.hpp"

#include "smectic/errors.hpp"
#include "smectic/fft.hpp"
#include "smectic/kernels.hpp"
#include "smectic/operators.hpp"

#include <cmath>

namespace smectic {
namespace {

constexpr double blowup_limit = 1e12;

template <class F>
void for_modes(const Grid& g, F&& f) {
    for (int i1 = 0; i1 < g.n[0]; ++i1)
        for (int i2 = 0; i2 < g.n[1]; ++i2)
            for (int i3 = 0; i3 < g.n[2]; ++i3)
                f((std::size_t(i1) * g.n[1] + i2) * g.n[2] + i3,
                  g.wavenumber(0, i1), g.wavenumber(1, i2), g.wavenumber(2, i3));
}

// State bundled as a flat set of five spectral scalars (d0,d1,d2,psi)
// plus v; arithmetic helpers for the IMEX combinations.
struct Rhs {
    SpectralVectorField d;
    SpectralScalarField psi;
    SpectralVectorField v;
};

State axpy_state(const State& s, double c, const Rhs& r) {
    State out = s;
    for (int i = 0; i < 3; ++i)
        for (std::size_t m = 0; m < out.d[i].c.size(); ++m) {
            out.d[i].c[m] += c * r.d[i].c[m];
            out.v[i].c[m] += c * r.v[i].c[m];
        }
    for (std::size_t m = 0; m < out.layer.psi.c.size(); ++m)
        out.layer.psi.c[m] += c * r.psi.c[m];
    return out;
}

// Stiff linear parts, diagonal per mode: the Lambda-elliptic block of
// -gamma*q acting on d (Helmholtz split), -lambda_p k5 |k|^4 on psi, and
// -(alpha4/2)|k|^2 on v.
Rhs apply_l(const State& s, const ModelParams& p) {
    const Grid& g = s.d.grid();
    Rhs out{SpectralVectorField(g), SpectralScalarField(g),
            SpectralVectorField(g)};
    for_modes(g, [&](std::size_t m, double k1, double k2, double k3) {
        double kk = k1 * k1 + k2 * k2 + k3 * k3;
        const double k[3] = {k1, k2, k3};
        cplx kd = k1 * s.d[0].c[m] + k2 * s.d[1].c[m] + k3 * s.d[2].c[m];
        for (int i = 0; i < 3; ++i) {
            cplx par = kk > 0.0 ? k[i] * kd / kk : cplx(0.0);
            cplx perp = s.d[i].c[m] - par;
            out.d[i].c[m] = -p.gamma * kk * (p.k1 * par + p.k3 * perp);
            out.v[i].c[m] = -(p.alpha4 / 2.0) * kk * s.v[i].c[m];
        }
        out.psi.c[m] = -p.lambda_p * p.k5 * kk * kk * s.layer.psi.c[m];
    });
    return out;
}

// (I - dt L)^{-1}, same diagonal structure.
void solve_implicit(State& s, double dt, const ModelParams& p) {
    const Grid& g = s.d.grid();
    for_modes(g, [&](std::size_t m, double k1, double k2, double k3) {
        double kk = k1 * k1 + k2 * k2 + k3 * k3;
        const double k[3] = {k1, k2, k3};
        cplx kd = k1 * s.d[0].c[m] + k2 * s.d[1].c[m] + k3 * s.d[2].c[m];
        for (int i = 0; i < 3; ++i) {
            cplx par = kk > 0.0 ? k[i] * kd / kk : cplx(0.0);
            cplx perp = s.d[i].c[m] - par;
            s.d[i].c[m] = par / (1.0 + dt * p.gamma * p.k1 * kk) +
                          perp / (1.0 + dt * p.gamma * p.k3 * kk);
            s.v[i].c[m] /= 1.0 + dt * (p.alpha4 / 2.0) * kk;
        }
        s.layer.psi.c[m] /= 1.0 + dt * p.lambda_p * p.k5 * kk * kk;
    });
}

Rhs full_rhs(const State& s, const SolverConfig& cfg, const ModelParams& p) {
    Rhs r{rhs_director(s, p), rhs_layer(s, p),
          rhs_velocity(s, p, cfg.forcing ? &*cfg.forcing : nullptr)};
    if (cfg.n_galerkin > 0) {
        r.d = truncate(r.d, cfg.n_galerkin);
        r.psi = truncate(r.psi, cfg.n_galerkin);
        r.v = truncate(r.v, cfg.n_galerkin);
    }
    return r;
}

Rhs explicit_rhs(const State& s, const SolverConfig& cfg, const ModelParams& p) {
    Rhs r = full_rhs(s, cfg, p);
    Rhs l = apply_l(s, p);
    for (int i = 0; i < 3; ++i) {
        r.d[i] -= l.d[i];
        r.v[i] -= l.v[i];
    }
    r.psi -= l.psi;
    return r;
}

void check_blowup(const State& s) {
    double m = std::max(max_abs(s.d), std::max(max_abs(s.v),
                                               max_abs(s.layer.psi)));
    if (!(m < blowup_limit) || std::isnan(m))
        throw blowup_error("field magnitude exceeded blow-up guard");
}

} // namespace

State project_initial_data(const SpectralVectorField& d0, const LayerField& phi0,
                           const SpectralVectorField& v0, int n) {
    State s;
    s.d = n > 0 ? truncate(d0, n) : d0;
    s.layer.pitch = phi0.pitch;
    s.layer.psi = n > 0 ? truncate(phi0.psi, n) : phi0.psi;
    SpectralVectorField v = leray_project(v0);
    for (int i = 0; i < 3; ++i) v[i].c[0] = 0.0;  // Galilean gauge
    s.v = n > 0 ? truncate(v, n) : v;
    s.t = 0.0;
    return s;
}

SpectralVectorField rhs_director(const State& s, const ModelParams& p) {
    const Grid& grid = s.d.grid();
    auto dims = grid.padded_dims();
    const std::size_t n = std::size_t(dims[0]) * dims[1] * dims[2];

    PointState ps = sample_state(s, p);
    auto v = sample_vector(s.v, dims);
    auto q = sample_vector(variational_q(s, p), dims);
    SpectralTensorField gvs = grad_vec(s.v);
    std::array<PhysicalField, 9> gv;
    for (int i = 0; i < 9; ++i)
        gv[std::size_t(i)] = to_physical(gvs.comp[std::size_t(i)], dims);

    SpectralVectorField out(grid);
    for (int i = 0; i < 3; ++i) {
        PhysicalField f = make_physical(dims);
        kernels::map(n, f.values.data(), [&](std::size_t m) {
            double adv = 0.0, rot = 0.0, sym = 0.0, syma = 0.0;
            for (int j = 0; j < 3; ++j) {
                double gvij = gv[std::size_t(i * 3 + j)].values[m];
                double gvji = gv[std::size_t(j * 3 + i)].values[m];
                adv += ps.grad_d[std::size_t(i * 3 + j)].values[m] *
                       v[std::size_t(j)].values[m];
                rot += 0.5 * (gvij - gvji) * ps.d[std::size_t(j)].values[m];
                sym += 0.5 * (gvij + gvji) * ps.d[std::size_t(j)].values[m];
                syma += 0.5 * (gvij + gvji) * ps.a[std::size_t(j)].values[m];
            }
            return -adv + rot - p.lambda * sym - 2.0 * p.kappa1 * p.gamma * syma -
                   p.gamma * q[std::size_t(i)].values[m];
        });
        out[i] = to_spectral(f, grid);
    }
    return out;
}

SpectralScalarField rhs_layer(const State& s, const ModelParams& p) {
    const Grid& grid = s.d.grid();
    auto dims = grid.padded_dims();
    const std::size_t n = std::size_t(dims[0]) * dims[1] * dims[2];

    SpectralVectorField gphi = layer_gradient(s.layer);
    auto g = sample_vector(gphi, dims);
    auto v = sample_vector(s.v, dims);

    PhysicalField f = make_physical(dims);
    kernels::map(n, f.values.data(), [&](std::size_t m) {
        double adv = 0.0;
        for (int j = 0; j < 3; ++j)
            adv += v[std::size_t(j)].values[m] * g[std::size_t(j)].values[m];
        return -adv;
    });
    SpectralScalarField out = to_spectral(f, grid);
    SpectralScalarField j = variational_j(s, p);
    j *= p.lambda_p;
    out -= j;
    return out;
}

SpectralVectorField rhs_velocity(const State& s, const ModelParams& p,
                                 const SpectralVectorField* g) {
    const Grid& grid = s.d.grid();
    auto dims = grid.padded_dims();
    const std::size_t n = std::size_t(dims[0]) * dims[1] * dims[2];

    SpectralVectorField qs = variational_q(s, p);
    SpectralScalarField js = variational_j(s, p);
    SpectralTensorField tv = viscous_stress_discrete(s, qs, p);

    PointState ps = sample_state(s, p);
    auto v = sample_vector(s.v, dims);
    auto q = sample_vector(qs, dims);
    PhysicalField j = to_physical(js, dims);
    SpectralTensorField gvs = grad_vec(s.v);
    std::array<PhysicalField, 9> gv;
    for (int i = 0; i < 9; ++i)
        gv[std::size_t(i)] = to_physical(gvs.comp[std::size_t(i)], dims);

    SpectralVectorField out(grid);
    for (int i = 0; i < 3; ++i) {
        PhysicalField f = make_physical(dims);
        kernels::map(n, f.values.data(), [&](std::size_t m) {
            double adv = 0.0, dq = 0.0;
            for (int j2 = 0; j2 < 3; ++j2) {
                adv += gv[std::size_t(i * 3 + j2)].values[m] *
                       v[std::size_t(j2)].values[m];
                // (grad d^T q)_i = (grad d)_{j i} q_j
                dq += ps.grad_d[std::size_t(j2 * 3 + i)].values[m] *
                      q[std::size_t(j2)].values[m];
            }
            return -adv + dq + ps.g[std::size_t(i)].values[m] * j.values[m];
        });
        out[i] = to_spectral(f, grid);
    }
    out += divergence(tv);
    if (g) out += *g;
    out = leray_project(out);
    for (int i = 0; i < 3; ++i) out[i].c[0] = 0.0;
    return out;
}

State step(const State& s, const SolverConfig& cfg, const ModelParams& p) {
    const double dt = cfg.dt;
    State next;
    if (cfg.scheme == Scheme::ImexEuler) {
        Rhs n = explicit_rhs(s, cfg, p);
        next = axpy_state(s, dt, n);
        solve_implicit(next, dt, p);
    } else {
        Rhs n0 = explicit_rhs(s, cfg, p);
        State mid = axpy_state(s, dt / 2.0, n0);
        solve_implicit(mid, dt / 2.0, p);
        Rhs n1 = explicit_rhs(mid, cfg, p);
        Rhs l1 = apply_l(mid, p);
        next = axpy_state(axpy_state(s, dt, n1), dt, l1);
    }
    if (cfg.n_galerkin > 0) {
        next.d = truncate(next.d, cfg.n_galerkin);
        next.layer.psi = truncate(next.layer.psi, cfg.n_galerkin);
        next.v = truncate(next.v, cfg.n_galerkin);
    }
    next.t = s.t + dt;
    check_blowup(next);
    return next;
}

namespace {

struct InstantBudget {
    EnergyBreakdown energy;
    StressPowerLedger ledger;
    double q2, j2, gw, gd;
};

InstantBudget budget(const State& s, const SolverConfig& cfg,
                     const ModelParams& p) {
    InstantBudget b;
    b.energy = free_energy(s, p);
    SpectralVectorField q = variational_q(s, p);
    SpectralScalarField j = variational_j(s, p);
    b.ledger = stress_power(s, q, p);
    b.q2 = inner_product(q, q);
    b.j2 = inner_product(j, j);
    b.gw = cfg.forcing ? inner_product(*cfg.forcing, s.v) : 0.0;
    double gh = cfg.forcing ? h_minus1_norm(*cfg.forcing) : 0.0;
    b.gd = gh * gh;
    return b;
}

void accumulate(DissipationIntegrals& I, const InstantBudget& a,
                const InstantBudget& b, const ModelParams& p, double dt) {
    auto trap = [dt](double x, double y) { return 0.5 * dt * (x + y); };
    I.qj += trap(p.gamma * a.q2 + p.lambda_p * a.j2,
                 p.gamma * b.q2 + p.lambda_p * b.j2);
    for (int i = 0; i < 6; ++i) {
        I.quad[std::size_t(i)] +=
            trap(a.ledger.quad[std::size_t(i)], b.ledger.quad[std::size_t(i)]);
        I.raw[std::size_t(i)] +=
            trap(a.ledger.raw[std::size_t(i)], b.ledger.raw[std::size_t(i)]);
    }
    for (int i = 0; i < 4; ++i)
        I.cross[std::size_t(i)] += trap(a.ledger.sign_indefinite[std::size_t(i)],
                                        b.ledger.sign_indefinite[std::size_t(i)]);
    I.g_work += trap(a.gw, b.gw);
    I.g_dual += trap(a.gd, b.gd);
}

} // namespace

Trajectory run(const State& initial, const SolverConfig& cfg,
               const ModelParams& p) {
    if (cfg.dt <= 0.0) throw config_error("dt must be positive");
    if (cfg.t_end < 0.0) throw config_error("t_end must be nonnegative");

    Trajectory traj;
    traj.dt = cfg.dt;
    traj.scheme = cfg.scheme;

    State s = initial;
    if (cfg.n_galerkin > 0) {
        s.d = truncate(s.d, cfg.n_galerkin);
        s.layer.psi = truncate(s.layer.psi, cfg.n_galerkin);
        s.v = truncate(s.v, cfg.n_galerkin);
    }

    InstantBudget prev = budget(s, cfg, p);
    DissipationIntegrals I;
    auto snap = [&](const State& st, const InstantBudget& b) {
        Snapshot sn;
        sn.state = st;
        sn.energy = b.energy;
        sn.ledger = b.ledger;
        sn.q_norm2 = b.q2;
        sn.j_norm2 = b.j2;
        sn.integrals = I;
        traj.snaps.push_back(std::move(sn));
    };
    snap(s, prev);

    const long nsteps = std::lround(cfg.t_end / cfg.dt);
    const int stride = cfg.snapshot_stride > 0 ? cfg.snapshot_stride : 1;
    for (long i = 1; i <= nsteps; ++i) {
        s = step(s, cfg, p);
        InstantBudget cur = budget(s, cfg, p);
        accumulate(I, prev, cur, p, cfg.dt);
        prev = cur;
        if (i % stride == 0 || i == nsteps) snap(s, cur);
    }
    return traj;
}

} // namespace smectic
