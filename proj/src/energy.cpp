#include "smectic/energy.hpp"

#include "smectic/fft.hpp"
#include "smectic/kernels.hpp"
#include "smectic/operators.hpp"

#include <cmath>

namespace smectic {
namespace {

double levi_civita(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0.0;
    if ((i + 1) % 3 == j) return 1.0;  // even permutation of (0,1,2)
    return -1.0;
}

struct Vec3 {
    double x[3];
    double dot(const Vec3& o) const {
        return x[0] * o.x[0] + x[1] * o.x[1] + x[2] * o.x[2];
    }
    double norm2() const { return dot(*this); }
};

// Per-point view into a PointState.
struct PointView {
    const PointState& ps;
    std::size_t i;

    Vec3 d() const {
        return {ps.d[0].values[i], ps.d[1].values[i], ps.d[2].values[i]};
    }
    Vec3 g() const {
        return {ps.g[0].values[i], ps.g[1].values[i], ps.g[2].values[i]};
    }
    Vec3 a() const {
        return {ps.a[0].values[i], ps.a[1].values[i], ps.a[2].values[i]};
    }
    double gd(int r, int c) const { return ps.grad_d[r * 3 + c].values[i]; }
    double div_d() const { return gd(0, 0) + gd(1, 1) + gd(2, 2); }
    Vec3 curl_d() const {
        return {gd(2, 1) - gd(1, 2), gd(0, 2) - gd(2, 0), gd(1, 0) - gd(0, 1)};
    }
    double lap_phi() const { return ps.lap_phi.values[i]; }
};

} // namespace

std::array<PhysicalField, 3> sample_vector(const SpectralVectorField& f,
                                           std::array<int, 3> dims) {
    return {to_physical(f[0], dims), to_physical(f[1], dims),
            to_physical(f[2], dims)};
}

SpectralVectorField layer_gradient(const LayerField& layer) {
    SpectralVectorField g = grad(layer.psi);
    for (int i = 0; i < 3; ++i) g[i].c[0] += layer.pitch[std::size_t(i)];
    return g;
}

PointState sample_state(const State& s, const ModelParams& p) {
    const Grid& grid = s.d.grid();
    PointState ps;
    ps.dims = grid.padded_dims();

    for (int i = 0; i < 3; ++i) ps.d[std::size_t(i)] = to_physical(s.d[i], ps.dims);
    SpectralTensorField gd = grad_vec(s.d);
    for (int i = 0; i < 9; ++i)
        ps.grad_d[std::size_t(i)] = to_physical(gd.comp[std::size_t(i)], ps.dims);

    SpectralVectorField gpsi = grad(s.layer.psi);
    for (int i = 0; i < 3; ++i) {
        ps.g[std::size_t(i)] = to_physical(gpsi[i], ps.dims);
        double pitch = s.layer.pitch[std::size_t(i)];
        kernels::map(ps.g[std::size_t(i)].size(), ps.g[std::size_t(i)].values.data(),
                     [&, pitch](std::size_t m) {
                         return ps.g[std::size_t(i)].values[m] + pitch;
                     });
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            SpectralScalarField dij = grad(gpsi[i])[j];
            ps.hess_phi[std::size_t(i * 3 + j)] = to_physical(dij, ps.dims);
        }
    ps.lap_phi = to_physical(laplacian(s.layer.psi), ps.dims);

    if (p.normal_mode == NormalMode::Gradient) {
        ps.a = ps.g;
    } else {
        const double e2 = p.normal_eps * p.normal_eps;
        for (int i = 0; i < 3; ++i) {
            ps.a[std::size_t(i)] = make_physical(ps.dims);
            kernels::map(ps.a[std::size_t(i)].size(),
                         ps.a[std::size_t(i)].values.data(), [&](std::size_t m) {
                             double g0 = ps.g[0].values[m];
                             double g1 = ps.g[1].values[m];
                             double g2 = ps.g[2].values[m];
                             double rho = 1.0 / std::sqrt(g0 * g0 + g1 * g1 +
                                                          g2 * g2 + e2);
                             return ps.g[std::size_t(i)].values[m] * rho;
                         });
        }
    }
    return ps;
}

SpectralVectorField layer_normal(const LayerField& layer, const ModelParams& p) {
    SpectralVectorField g = layer_gradient(layer);
    if (p.normal_mode == NormalMode::Gradient) return g;

    const Grid& grid = layer.psi.grid;
    auto dims = grid.padded_dims();
    auto gp = sample_vector(g, dims);
    const double e2 = p.normal_eps * p.normal_eps;
    SpectralVectorField out(grid);
    for (int i = 0; i < 3; ++i) {
        PhysicalField ai = make_physical(dims);
        kernels::map(ai.size(), ai.values.data(), [&](std::size_t m) {
            double g0 = gp[0].values[m];
            double g1 = gp[1].values[m];
            double g2 = gp[2].values[m];
            return gp[std::size_t(i)].values[m] /
                   std::sqrt(g0 * g0 + g1 * g1 + g2 * g2 + e2);
        });
        out[i] = to_spectral(ai, grid);
    }
    return out;
}

EnergyBreakdown free_energy(const State& s, const ModelParams& p) {
    const Grid& grid = s.d.grid();
    PointState ps = sample_state(s, p);
    const std::size_t n = ps.lap_phi.size();
    const double w = grid.volume() / double(n);

    auto quad = [&](auto density) {
        return w * kernels::reduce_sum(n, [&](std::size_t i) {
            return density(PointView{ps, i});
        });
    };

    EnergyBreakdown e;
    e.splay = quad([&](PointView pt) {
        double dv = pt.div_d();
        return 0.5 * p.k1 * dv * dv;
    });
    e.bend = quad([&](PointView pt) { return 0.5 * p.k3 * pt.curl_d().norm2(); });
    e.layer_bend = quad([&](PointView pt) {
        double l = pt.lap_phi();
        return 0.5 * p.k5 * l * l;
    });
    e.coupling_B0 = quad([&](PointView pt) {
        double sv = pt.g().norm2() + pt.d().dot(pt.a()) - 2.0;
        return 0.5 * p.B0 * sv * sv;
    });
    e.coupling_B1 = quad([&](PointView pt) {
        Vec3 d = pt.d(), a = pt.a();
        double cross2 = d.norm2() * a.norm2() - d.dot(a) * d.dot(a);
        return 0.5 * p.B1 * cross2;
    });
    e.penalty_d = quad([&](PointView pt) {
        double r = pt.d().norm2() - 1.0;
        return r * r / (4.0 * p.eps1);
    });
    e.penalty_grad_phi = quad([&](PointView pt) {
        double r = pt.g().norm2() - 1.0;
        return r * r / (4.0 * p.eps2);
    });
    e.total = e.splay + e.bend + e.layer_bend + e.coupling_B0 + e.coupling_B1 +
              e.penalty_d + e.penalty_grad_phi;
    return e;
}

namespace {

// dF/dd at one point: B0*s*a + B1*(|a|^2 d - (d.a) a) + (1/eps1)(|d|^2-1)d.
Vec3 dF_dd(PointView pt, const ModelParams& p) {
    Vec3 d = pt.d(), a = pt.a();
    double sv = pt.g().norm2() + d.dot(a) - 2.0;
    double da = d.dot(a);
    double pen = (d.norm2() - 1.0) / p.eps1;
    Vec3 out;
    for (int i = 0; i < 3; ++i)
        out.x[i] = p.B0 * sv * a.x[i] +
                   p.B1 * (a.norm2() * d.x[i] - da * a.x[i]) + pen * d.x[i];
    return out;
}

// dF/d(grad d)_{ij} = k1 (div d) delta_ij + k3 (curl d)_k eps_{kji}.
double dF_dgd(PointView pt, const ModelParams& p, int i, int j) {
    double out = (i == j) ? p.k1 * pt.div_d() : 0.0;
    Vec3 c = pt.curl_d();
    for (int k = 0; k < 3; ++k) out += p.k3 * c.x[k] * levi_civita(k, j, i);
    return out;
}

// Total dF/d(grad phi), including the chain rule through the relaxed
// normal when active; equals the flux whose divergence enters j.
Vec3 flux_b(PointView pt, const ModelParams& p) {
    Vec3 d = pt.d(), g = pt.g(), a = pt.a();
    double sv = g.norm2() + d.dot(a) - 2.0;
    double da = d.dot(a);

    // dF/da holding grad phi fixed
    Vec3 dFda;
    for (int i = 0; i < 3; ++i)
        dFda.x[i] = p.B0 * sv * d.x[i] +
                    p.B1 * (d.norm2() * a.x[i] - da * d.x[i]);

    Vec3 out;
    double pen = (g.norm2() - 1.0) / p.eps2;
    for (int i = 0; i < 3; ++i)
        out.x[i] = 2.0 * p.B0 * sv * g.x[i] + pen * g.x[i];

    if (p.normal_mode == NormalMode::Gradient) {
        for (int i = 0; i < 3; ++i) out.x[i] += dFda.x[i];
    } else {
        // J u = rho u - g (g.u) (|g|^2+eps^2)^{-3/2}, J symmetric
        double m2 = g.norm2() + p.normal_eps * p.normal_eps;
        double rho = 1.0 / std::sqrt(m2);
        double gu = g.dot(dFda);
        for (int i = 0; i < 3; ++i)
            out.x[i] += rho * dFda.x[i] - g.x[i] * gu / (m2 * std::sqrt(m2));
    }
    return out;
}

SpectralVectorField analyze_vector(const std::array<PhysicalField, 3>& f,
                                   const Grid& grid) {
    SpectralVectorField out(grid);
    for (int i = 0; i < 3; ++i) out[i] = to_spectral(f[std::size_t(i)], grid);
    return out;
}

} // namespace

SpectralVectorField variational_q(const State& s, const ModelParams& p) {
    const Grid& grid = s.d.grid();
    PointState ps = sample_state(s, p);
    const std::size_t n = ps.lap_phi.size();

    std::array<PhysicalField, 3> fd;
    for (int i = 0; i < 3; ++i) {
        fd[std::size_t(i)] = make_physical(ps.dims);
        kernels::map(n, fd[std::size_t(i)].values.data(), [&](std::size_t m) {
            return dF_dd(PointView{ps, m}, p).x[i];
        });
    }
    SpectralVectorField q = analyze_vector(fd, grid);

    SpectralTensorField fgd(grid);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            PhysicalField t = make_physical(ps.dims);
            kernels::map(n, t.values.data(), [&](std::size_t m) {
                return dF_dgd(PointView{ps, m}, p, i, j);
            });
            fgd.at(i, j) = to_spectral(t, grid);
        }
    q -= divergence(fgd);
    return q;
}

SpectralScalarField variational_j(const State& s, const ModelParams& p) {
    const Grid& grid = s.d.grid();
    PointState ps = sample_state(s, p);
    const std::size_t n = ps.lap_phi.size();

    std::array<PhysicalField, 3> fb;
    for (int i = 0; i < 3; ++i) {
        fb[std::size_t(i)] = make_physical(ps.dims);
        kernels::map(n, fb[std::size_t(i)].values.data(), [&](std::size_t m) {
            return flux_b(PointView{ps, m}, p).x[i];
        });
    }
    SpectralScalarField j = bilaplacian(s.layer.psi);
    j *= p.k5;
    j -= divergence(analyze_vector(fb, grid));
    return j;
}

SpectralTensorField elastic_stress(const State& s, const ModelParams& p) {
    const Grid& grid = s.d.grid();
    PointState ps = sample_state(s, p);
    const std::size_t n = ps.lap_phi.size();

    // div dF/d(hess phi) = k5 grad(lap psi), sampled for the b-slot term
    SpectralVectorField gl = grad(laplacian(s.layer.psi));
    auto glp = sample_vector(gl, ps.dims);

    SpectralTensorField out(grid);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            PhysicalField t = make_physical(ps.dims);
            kernels::map(n, t.values.data(), [&](std::size_t m) {
                PointView pt{ps, m};
                double v = 0.0;
                for (int k = 0; k < 3; ++k)
                    v += pt.gd(k, i) * dF_dgd(pt, p, k, j);
                Vec3 fb = flux_b(pt, p);
                double db_j = fb.x[j] - p.k5 * glp[std::size_t(j)].values[m];
                v += pt.g().x[i] * db_j;
                v += p.k5 * pt.lap_phi() * ps.hess_phi[std::size_t(i * 3 + j)].values[m];
                return v;
            });
            out.at(i, j) = to_spectral(t, grid);
        }
    return out;
}

} // namespace smectic
