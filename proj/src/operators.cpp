#include "smectic/operators.hpp"

#include "smectic/fft.hpp"
#include "smectic/kernels.hpp"

#include <cmath>

namespace smectic {
namespace {

template <class F>
void for_modes(const Grid& g, F&& f) {
    for (int i1 = 0; i1 < g.n[0]; ++i1)
        for (int i2 = 0; i2 < g.n[1]; ++i2)
            for (int i3 = 0; i3 < g.n[2]; ++i3) {
                double k1 = g.wavenumber(0, i1);
                double k2 = g.wavenumber(1, i2);
                double k3 = g.wavenumber(2, i3);
                f((std::size_t(i1) * g.n[1] + i2) * g.n[2] + i3, k1, k2, k3);
            }
}

const cplx I{0.0, 1.0};

} // namespace

SpectralVectorField grad(const SpectralScalarField& f) {
    SpectralVectorField out(f.grid);
    for_modes(f.grid, [&](std::size_t idx, double k1, double k2, double k3) {
        cplx z = f.c[idx];
        out[0].c[idx] = I * k1 * z;
        out[1].c[idx] = I * k2 * z;
        out[2].c[idx] = I * k3 * z;
    });
    return out;
}

SpectralScalarField divergence(const SpectralVectorField& v) {
    SpectralScalarField out(v.grid());
    for_modes(v.grid(), [&](std::size_t idx, double k1, double k2, double k3) {
        out.c[idx] = I * (k1 * v[0].c[idx] + k2 * v[1].c[idx] + k3 * v[2].c[idx]);
    });
    return out;
}

SpectralVectorField curl(const SpectralVectorField& v) {
    SpectralVectorField out(v.grid());
    for_modes(v.grid(), [&](std::size_t idx, double k1, double k2, double k3) {
        out[0].c[idx] = I * (k2 * v[2].c[idx] - k3 * v[1].c[idx]);
        out[1].c[idx] = I * (k3 * v[0].c[idx] - k1 * v[2].c[idx]);
        out[2].c[idx] = I * (k1 * v[1].c[idx] - k2 * v[0].c[idx]);
    });
    return out;
}

SpectralScalarField laplacian(const SpectralScalarField& f) {
    SpectralScalarField out(f.grid);
    for_modes(f.grid, [&](std::size_t idx, double k1, double k2, double k3) {
        out.c[idx] = -(k1 * k1 + k2 * k2 + k3 * k3) * f.c[idx];
    });
    return out;
}

SpectralVectorField laplacian(const SpectralVectorField& v) {
    SpectralVectorField out(v.grid());
    for (int i = 0; i < 3; ++i) out[i] = laplacian(v[i]);
    return out;
}

SpectralScalarField bilaplacian(const SpectralScalarField& f) {
    SpectralScalarField out(f.grid);
    for_modes(f.grid, [&](std::size_t idx, double k1, double k2, double k3) {
        double k2n = k1 * k1 + k2 * k2 + k3 * k3;
        out.c[idx] = k2n * k2n * f.c[idx];
    });
    return out;
}

SpectralVectorField bilaplacian(const SpectralVectorField& v) {
    SpectralVectorField out(v.grid());
    for (int i = 0; i < 3; ++i) out[i] = bilaplacian(v[i]);
    return out;
}

SpectralTensorField grad_vec(const SpectralVectorField& v) {
    SpectralTensorField out(v.grid());
    for_modes(v.grid(), [&](std::size_t idx, double k1, double k2, double k3) {
        const double k[3] = {k1, k2, k3};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                out.at(i, j).c[idx] = I * k[j] * v[i].c[idx];
    });
    return out;
}

SpectralTensorField sym_grad(const SpectralVectorField& v) {
    SpectralTensorField gv = grad_vec(v);
    SpectralTensorField out(v.grid());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (std::size_t idx = 0; idx < out.at(i, j).c.size(); ++idx)
                out.at(i, j).c[idx] =
                    0.5 * (gv.at(i, j).c[idx] + gv.at(j, i).c[idx]);
    return out;
}

SpectralTensorField skw_grad(const SpectralVectorField& v) {
    SpectralTensorField gv = grad_vec(v);
    SpectralTensorField out(v.grid());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (std::size_t idx = 0; idx < out.at(i, j).c.size(); ++idx)
                out.at(i, j).c[idx] =
                    0.5 * (gv.at(i, j).c[idx] - gv.at(j, i).c[idx]);
    return out;
}

SpectralVectorField divergence(const SpectralTensorField& t) {
    SpectralVectorField out(t.grid());
    for_modes(t.grid(), [&](std::size_t idx, double k1, double k2, double k3) {
        const double k[3] = {k1, k2, k3};
        for (int i = 0; i < 3; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < 3; ++j) s += I * k[j] * t.at(i, j).c[idx];
            out[i].c[idx] = s;
        }
    });
    return out;
}

FieldAny apply_operator(OperatorKind kind, const FieldAny& f) {
    const bool scalar = std::holds_alternative<SpectralScalarField>(f);
    const bool vector = std::holds_alternative<SpectralVectorField>(f);
    switch (kind) {
    case OperatorKind::grad:
        if (!scalar) throw rank_error("grad expects a scalar field");
        return grad(std::get<SpectralScalarField>(f));
    case OperatorKind::div:
        if (!vector) throw rank_error("div expects a vector field");
        return divergence(std::get<SpectralVectorField>(f));
    case OperatorKind::curl:
        if (!vector) throw rank_error("curl expects a vector field");
        return curl(std::get<SpectralVectorField>(f));
    case OperatorKind::laplacian:
        if (scalar) return laplacian(std::get<SpectralScalarField>(f));
        if (vector) return laplacian(std::get<SpectralVectorField>(f));
        throw rank_error("laplacian expects a scalar or vector field");
    case OperatorKind::bilaplacian:
        if (scalar) return bilaplacian(std::get<SpectralScalarField>(f));
        if (vector) return bilaplacian(std::get<SpectralVectorField>(f));
        throw rank_error("bilaplacian expects a scalar or vector field");
    case OperatorKind::grad_vec:
        if (!vector) throw rank_error("grad_vec expects a vector field");
        return grad_vec(std::get<SpectralVectorField>(f));
    case OperatorKind::sym_grad:
        if (!vector) throw rank_error("sym_grad expects a vector field");
        return sym_grad(std::get<SpectralVectorField>(f));
    case OperatorKind::skw_grad:
        if (!vector) throw rank_error("skw_grad expects a vector field");
        return skw_grad(std::get<SpectralVectorField>(f));
    }
    throw rank_error("unknown operator");
}

SpectralVectorField leray_project(const SpectralVectorField& v) {
    SpectralVectorField out = v;
    for_modes(v.grid(), [&](std::size_t idx, double k1, double k2, double k3) {
        double kk = k1 * k1 + k2 * k2 + k3 * k3;
        if (kk == 0.0) return; // mean mode unchanged
        cplx kdotv = k1 * v[0].c[idx] + k2 * v[1].c[idx] + k3 * v[2].c[idx];
        out[0].c[idx] = v[0].c[idx] - k1 * kdotv / kk;
        out[1].c[idx] = v[1].c[idx] - k2 * kdotv / kk;
        out[2].c[idx] = v[2].c[idx] - k3 * kdotv / kk;
    });
    return out;
}

SpectralScalarField truncate(const SpectralScalarField& f, int n) {
    const Grid& g = f.grid;
    if (n > g.n[0] || n > g.n[1] || n > g.n[2])
        throw rank_error("truncation level exceeds grid modes");
    SpectralScalarField out = f;
    for (int i1 = 0; i1 < g.n[0]; ++i1)
        for (int i2 = 0; i2 < g.n[1]; ++i2)
            for (int i3 = 0; i3 < g.n[2]; ++i3) {
                int m1 = std::abs(g.freq(0, i1));
                int m2 = std::abs(g.freq(1, i2));
                int m3 = std::abs(g.freq(2, i3));
                if (m1 >= n / 2 || m2 >= n / 2 || m3 >= n / 2)
                    out.at(i1, i2, i3) = 0.0;
            }
    return out;
}

SpectralVectorField truncate(const SpectralVectorField& f, int n) {
    SpectralVectorField out(f.grid());
    for (int i = 0; i < 3; ++i) out[i] = truncate(f[i], n);
    return out;
}

SpectralTensorField truncate(const SpectralTensorField& f, int n) {
    SpectralTensorField out(f.grid());
    for (int i = 0; i < 9; ++i) out.comp[i] = truncate(f.comp[i], n);
    return out;
}

double inner_product(const SpectralScalarField& f, const SpectralScalarField& g) {
    check_same_grid(f.grid, g.grid);
    double s = kernels::reduce_sum(f.c.size(), [&](std::size_t i) {
        return f.c[i].real() * g.c[i].real() + f.c[i].imag() * g.c[i].imag();
    });
    return f.grid.volume() * s;
}

double inner_product(const SpectralVectorField& f, const SpectralVectorField& g) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += inner_product(f[i], g[i]);
    return s;
}

double inner_product(const SpectralTensorField& f, const SpectralTensorField& g) {
    double s = 0.0;
    for (int i = 0; i < 9; ++i) s += inner_product(f.comp[i], g.comp[i]);
    return s;
}

double l2_norm(const SpectralScalarField& f) {
    return std::sqrt(std::max(0.0, inner_product(f, f)));
}
double l2_norm(const SpectralVectorField& f) {
    return std::sqrt(std::max(0.0, inner_product(f, f)));
}
double l2_norm(const SpectralTensorField& f) {
    return std::sqrt(std::max(0.0, inner_product(f, f)));
}

double h_minus1_norm(const SpectralVectorField& f) {
    const Grid& g = f.grid();
    double s = 0.0;
    for_modes(g, [&](std::size_t idx, double k1, double k2, double k3) {
        double kk = k1 * k1 + k2 * k2 + k3 * k3;
        if (kk == 0.0) return;
        double a = std::norm(f[0].c[idx]) + std::norm(f[1].c[idx]) +
                   std::norm(f[2].c[idx]);
        s += a / kk;
    });
    return std::sqrt(g.volume() * s);
}

namespace {

// Generic dealiased binary contraction: synthesize every component on
// the padded grid, contract pointwise, analyze the results back.
template <int NA, int NB, int NO, class Contract>
void padded_contract(const Grid& g, const SpectralScalarField* const* a,
                     const SpectralScalarField* const* b,
                     SpectralScalarField* out, Contract&& contract) {
    auto dims = g.padded_dims();
    std::array<PhysicalField, NA> pa;
    std::array<PhysicalField, NB> pb;
    for (int i = 0; i < NA; ++i) pa[i] = to_physical(*a[i], dims);
    for (int i = 0; i < NB; ++i) pb[i] = to_physical(*b[i], dims);
    std::array<PhysicalField, NO> po;
    for (int i = 0; i < NO; ++i) po[i] = make_physical(dims);
    const std::size_t n = po[0].size();
    kernels::map(n, po[0].values.data(), [&](std::size_t idx) {
        double va[NA], vb[NB], vo[NO];
        for (int i = 0; i < NA; ++i) va[i] = pa[i].values[idx];
        for (int i = 0; i < NB; ++i) vb[i] = pb[i].values[idx];
        contract(va, vb, vo);
        for (int i = 1; i < NO; ++i) po[i].values[idx] = vo[i];
        return vo[0];
    });
    for (int i = 0; i < NO; ++i) out[i] = to_spectral(po[i], g);
}

} // namespace

SpectralScalarField pw_multiply(const SpectralScalarField& a,
                                const SpectralScalarField& b) {
    check_same_grid(a.grid, b.grid);
    const SpectralScalarField* pa[1] = {&a};
    const SpectralScalarField* pb[1] = {&b};
    SpectralScalarField out;
    padded_contract<1, 1, 1>(a.grid, pa, pb, &out,
                             [](const double* x, const double* y, double* o) {
                                 o[0] = x[0] * y[0];
                             });
    return out;
}

SpectralVectorField pw_multiply(const SpectralScalarField& a,
                                const SpectralVectorField& b) {
    check_same_grid(a.grid, b.grid());
    const SpectralScalarField* pa[1] = {&a};
    const SpectralScalarField* pb[3] = {&b[0], &b[1], &b[2]};
    SpectralVectorField out(a.grid);
    padded_contract<1, 3, 3>(a.grid, pa, pb, out.comp.data(),
                             [](const double* x, const double* y, double* o) {
                                 for (int i = 0; i < 3; ++i) o[i] = x[0] * y[i];
                             });
    return out;
}

SpectralTensorField pw_multiply(const SpectralScalarField& a,
                                const SpectralTensorField& b) {
    check_same_grid(a.grid, b.grid());
    const SpectralScalarField* pa[1] = {&a};
    const SpectralScalarField* pb[9];
    for (int i = 0; i < 9; ++i) pb[i] = &b.comp[i];
    SpectralTensorField out(a.grid);
    padded_contract<1, 9, 9>(a.grid, pa, pb, out.comp.data(),
                             [](const double* x, const double* y, double* o) {
                                 for (int i = 0; i < 9; ++i) o[i] = x[0] * y[i];
                             });
    return out;
}

SpectralScalarField pw_dot(const SpectralVectorField& a,
                           const SpectralVectorField& b) {
    check_same_grid(a.grid(), b.grid());
    const SpectralScalarField* pa[3] = {&a[0], &a[1], &a[2]};
    const SpectralScalarField* pb[3] = {&b[0], &b[1], &b[2]};
    SpectralScalarField out;
    padded_contract<3, 3, 1>(a.grid(), pa, pb, &out,
                             [](const double* x, const double* y, double* o) {
                                 o[0] = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
                             });
    return out;
}

SpectralVectorField pw_cross(const SpectralVectorField& a,
                             const SpectralVectorField& b) {
    check_same_grid(a.grid(), b.grid());
    const SpectralScalarField* pa[3] = {&a[0], &a[1], &a[2]};
    const SpectralScalarField* pb[3] = {&b[0], &b[1], &b[2]};
    SpectralVectorField out(a.grid());
    padded_contract<3, 3, 3>(a.grid(), pa, pb, out.comp.data(),
                             [](const double* x, const double* y, double* o) {
                                 o[0] = x[1] * y[2] - x[2] * y[1];
                                 o[1] = x[2] * y[0] - x[0] * y[2];
                                 o[2] = x[0] * y[1] - x[1] * y[0];
                             });
    return out;
}

SpectralVectorField pw_matvec(const SpectralTensorField& t,
                              const SpectralVectorField& v) {
    check_same_grid(t.grid(), v.grid());
    const SpectralScalarField* pa[9];
    for (int i = 0; i < 9; ++i) pa[i] = &t.comp[i];
    const SpectralScalarField* pb[3] = {&v[0], &v[1], &v[2]};
    SpectralVectorField out(v.grid());
    padded_contract<9, 3, 3>(t.grid(), pa, pb, out.comp.data(),
                             [](const double* x, const double* y, double* o) {
                                 for (int i = 0; i < 3; ++i)
                                     o[i] = x[i * 3] * y[0] + x[i * 3 + 1] * y[1] +
                                            x[i * 3 + 2] * y[2];
                             });
    return out;
}

SpectralTensorField pw_outer(const SpectralVectorField& a,
                             const SpectralVectorField& b) {
    check_same_grid(a.grid(), b.grid());
    const SpectralScalarField* pa[3] = {&a[0], &a[1], &a[2]};
    const SpectralScalarField* pb[3] = {&b[0], &b[1], &b[2]};
    SpectralTensorField out(a.grid());
    padded_contract<3, 3, 9>(a.grid(), pa, pb, out.comp.data(),
                             [](const double* x, const double* y, double* o) {
                                 for (int i = 0; i < 3; ++i)
                                     for (int j = 0; j < 3; ++j)
                                         o[i * 3 + j] = x[i] * y[j];
                             });
    return out;
}

SpectralScalarField pw_frobenius(const SpectralTensorField& a,
                                 const SpectralTensorField& b) {
    check_same_grid(a.grid(), b.grid());
    const SpectralScalarField* pa[9];
    const SpectralScalarField* pb[9];
    for (int i = 0; i < 9; ++i) {
        pa[i] = &a.comp[i];
        pb[i] = &b.comp[i];
    }
    SpectralScalarField out;
    padded_contract<9, 9, 1>(a.grid(), pa, pb, &out,
                             [](const double* x, const double* y, double* o) {
                                 double s = 0.0;
                                 for (int i = 0; i < 9; ++i) s += x[i] * y[i];
                                 o[0] = s;
                             });
    return out;
}

} // namespace smectic
