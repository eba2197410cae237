#include "smectic/stress.hpp"

#include "smectic/fft.hpp"
#include "smectic/kernels.hpp"
#include "smectic/operators.hpp"

namespace smectic {
namespace {

struct Mat3 {
    double m[3][3];
};

// Pointwise samples needed by the viscous terms.
struct StressPoints {
    std::array<int, 3> dims;
    std::array<PhysicalField, 3> d, a, v, q;
    std::array<PhysicalField, 9> gv; // (i,j) -> d v_i / d x_j

    double vecd(int i, std::size_t m) const { return d[std::size_t(i)].values[m]; }
    double veca(int i, std::size_t m) const { return a[std::size_t(i)].values[m]; }
    double vecq(int i, std::size_t m) const { return q[std::size_t(i)].values[m]; }
    Mat3 sym(std::size_t m) const {
        Mat3 o;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                o.m[i][j] = 0.5 * (gv[std::size_t(i * 3 + j)].values[m] +
                                   gv[std::size_t(j * 3 + i)].values[m]);
        return o;
    }
    Mat3 skw(std::size_t m) const {
        Mat3 o;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                o.m[i][j] = 0.5 * (gv[std::size_t(i * 3 + j)].values[m] -
                                   gv[std::size_t(j * 3 + i)].values[m]);
        return o;
    }
};

StressPoints sample_stress(const State& s, const ModelParams& p,
                           const SpectralVectorField* q) {
    StressPoints sp;
    sp.dims = s.d.grid().padded_dims();
    sp.d = sample_vector(s.d, sp.dims);
    sp.v = sample_vector(s.v, sp.dims);
    if (q) sp.q = sample_vector(*q, sp.dims);

    PointState ps = sample_state(s, p);
    sp.a = std::move(ps.a);

    SpectralTensorField gv = grad_vec(s.v);
    for (int i = 0; i < 9; ++i)
        sp.gv[std::size_t(i)] = to_physical(gv.comp[std::size_t(i)], sp.dims);
    return sp;
}

inline void matvec(const Mat3& A, const double* x, double* y) {
    for (int i = 0; i < 3; ++i)
        y[i] = A.m[i][0] * x[0] + A.m[i][1] * x[1] + A.m[i][2] * x[2];
}

inline double dot3(const double* a, const double* b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// accumulate c * (x (x) y)_sym
inline void add_outer_sym(Mat3& t, double c, const double* x, const double* y) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            t.m[i][j] += 0.5 * c * (x[i] * y[j] + x[j] * y[i]);
}

inline void add_outer_skw(Mat3& t, double c, const double* x, const double* y) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            t.m[i][j] += 0.5 * c * (x[i] * y[j] - x[j] * y[i]);
}

inline void add_outer(Mat3& t, double c, const double* x, const double* y) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t.m[i][j] += c * x[i] * y[j];
}

// Shared kappa_2..kappa_5 blocks plus alpha1, alpha4, tau1 (identical in
// both forms of the stress).
void add_common_terms(Mat3& t, const ModelParams& p, const double* d,
                      const double* a, const Mat3& D) {
    double Dd[3], Da[3];
    matvec(D, d, Dd);
    matvec(D, a, Da);
    double dDd = dot3(d, Dd), aDa = dot3(a, Da), dDa = dot3(d, Da);

    add_outer(t, p.alpha1 * dDd, d, d);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t.m[i][j] += p.alpha4 * D.m[i][j];
    add_outer(t, p.tau1 * aDa, a, a);
    add_outer_sym(t, 2.0 * p.kappa2 * dDa, d, a);
    add_outer(t, p.kappa3 * dDd, a, a);
    add_outer(t, p.kappa3 * aDa, d, d);
    add_outer(t, 2.0 * p.kappa4 * dDa, d, d);
    add_outer_sym(t, 2.0 * p.kappa4 * dDd, d, a);
    add_outer(t, 2.0 * p.kappa5 * dDa, a, a);
    add_outer_sym(t, 2.0 * p.kappa5 * aDa, a, d);
}

SpectralTensorField analyze_tensor(const std::vector<Mat3>& t,
                                   std::array<int, 3> dims, const Grid& grid) {
    SpectralTensorField out(grid);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            PhysicalField f = make_physical(dims);
            kernels::map(t.size(), f.values.data(),
                         [&](std::size_t m) { return t[m].m[i][j]; });
            out.at(i, j) = to_spectral(f, grid);
        }
    return out;
}

} // namespace

double StressPowerLedger::sum() const {
    double s = 0.0;
    for (double v : quad) s += v;
    for (double v : q_cross) s += v;
    for (double v : sign_indefinite) s += v;
    return s;
}

SpectralVectorField material_derivative(const State& s,
                                        const SpectralVectorField& dt_d) {
    const Grid& grid = s.d.grid();
    auto dims = grid.padded_dims();
    auto v = sample_vector(s.v, dims);
    SpectralTensorField gds = grad_vec(s.d);
    SpectralTensorField gvs = grad_vec(s.v);
    std::array<PhysicalField, 9> gd, gv;
    for (int i = 0; i < 9; ++i) {
        gd[std::size_t(i)] = to_physical(gds.comp[std::size_t(i)], dims);
        gv[std::size_t(i)] = to_physical(gvs.comp[std::size_t(i)], dims);
    }
    auto d = sample_vector(s.d, dims);

    SpectralVectorField out = dt_d;
    const std::size_t n = v[0].size();
    for (int i = 0; i < 3; ++i) {
        PhysicalField f = make_physical(dims);
        kernels::map(n, f.values.data(), [&](std::size_t m) {
            // ((v.grad)d)_i = (grad d)_{ij} v_j; (Wv d)_i likewise
            double adv = 0.0, rot = 0.0;
            for (int j = 0; j < 3; ++j) {
                adv += gd[std::size_t(i * 3 + j)].values[m] * v[std::size_t(j)].values[m];
                double w = 0.5 * (gv[std::size_t(i * 3 + j)].values[m] -
                                  gv[std::size_t(j * 3 + i)].values[m]);
                rot += w * d[std::size_t(j)].values[m];
            }
            return adv - rot;
        });
        out[i] += to_spectral(f, grid);
    }
    return out;
}

SpectralTensorField viscous_stress_discrete(const State& s,
                                            const SpectralVectorField& q,
                                            const ModelParams& p) {
    StressPoints sp = sample_stress(s, p, &q);
    const std::size_t n = sp.v[0].size();
    const double c5 = 2.0 * p.alpha5 + p.lambda / p.gamma -
                      p.lambda * p.lambda / p.gamma;
    const double t2eff = 2.0 * p.tau2 - 4.0 * p.kappa1 * p.kappa1 * p.gamma;
    const double k6l = p.kappa6 - p.lambda * p.kappa1;

    std::vector<Mat3> t(n);
    std::vector<double> dummy(n);
    kernels::map(n, dummy.data(), [&](std::size_t m) {
        Mat3 T{};
        double d[3], a[3], qv[3];
        for (int i = 0; i < 3; ++i) {
            d[i] = sp.vecd(i, m);
            a[i] = sp.veca(i, m);
            qv[i] = sp.vecq(i, m);
        }
        Mat3 D = sp.sym(m);
        double Dd[3], Da[3];
        matvec(D, d, Dd);
        matvec(D, a, Da);

        add_common_terms(T, p, d, a, D);
        add_outer_sym(T, c5, d, Dd);
        add_outer_sym(T, 2.0 * k6l, Da, d);
        add_outer_sym(T, 2.0 * k6l, Dd, a);
        add_outer_sym(T, -p.lambda, qv, d);
        add_outer_skw(T, 1.0, qv, d);
        add_outer_sym(T, t2eff, a, Da);
        add_outer_sym(T, -2.0 * p.kappa1 * p.gamma, a, qv);
        t[m] = T;
        return 0.0;
    });
    return analyze_tensor(t, sp.dims, s.d.grid());
}

SpectralTensorField viscous_stress_original(const State& s,
                                            const SpectralVectorField& d_ring,
                                            const ModelParams& p) {
    StressPoints sp = sample_stress(s, p, &d_ring); // q slot carries d_ring
    const std::size_t n = sp.v[0].size();

    std::vector<Mat3> t(n);
    std::vector<double> dummy(n);
    kernels::map(n, dummy.data(), [&](std::size_t m) {
        Mat3 T{};
        double d[3], a[3], r[3];
        for (int i = 0; i < 3; ++i) {
            d[i] = sp.vecd(i, m);
            a[i] = sp.veca(i, m);
            r[i] = sp.vecq(i, m);
        }
        Mat3 D = sp.sym(m);
        double Dd[3], Da[3];
        matvec(D, d, Dd);
        matvec(D, a, Da);

        add_common_terms(T, p, d, a, D);
        add_outer_sym(T, p.lambda / p.gamma, d, r);
        add_outer_skw(T, 1.0 / p.gamma, d, r);
        add_outer_sym(T, 2.0 * p.alpha5, d, Dd);
        add_outer(T, p.lambda / p.gamma, d, Dd);
        add_outer_sym(T, 2.0 * p.tau2, a, Da);
        add_outer_sym(T, 2.0 * p.kappa1, a, r);
        add_outer_skw(T, 2.0 * p.kappa1, d, Da);
        add_outer_sym(T, 2.0 * p.kappa6, d, Da);
        add_outer_sym(T, 2.0 * p.kappa6, a, Dd);
        t[m] = T;
        return 0.0;
    });
    return analyze_tensor(t, sp.dims, s.d.grid());
}

StressPowerLedger stress_power(const State& s, const SpectralVectorField& q,
                               const ModelParams& p) {
    const Grid& grid = s.d.grid();
    StressPoints sp = sample_stress(s, p, &q);
    const std::size_t n = sp.v[0].size();
    const double w = grid.volume() / double(n);
    const double c5 = 2.0 * p.alpha5 + p.lambda / p.gamma -
                      p.lambda * p.lambda / p.gamma;
    const double t2eff = 2.0 * p.tau2 - 4.0 * p.kappa1 * p.kappa1 * p.gamma;
    const double k6l = p.kappa6 - p.lambda * p.kappa1;

    auto quad = [&](auto f) {
        return w * kernels::reduce_sum(n, [&](std::size_t m) {
            double d[3], a[3], qv[3];
            for (int i = 0; i < 3; ++i) {
                d[i] = sp.vecd(i, m);
                a[i] = sp.veca(i, m);
                qv[i] = sp.vecq(i, m);
            }
            Mat3 D = sp.sym(m);
            Mat3 W = sp.skw(m);
            double Dd[3], Da[3], Wd[3];
            matvec(D, d, Dd);
            matvec(D, a, Da);
            matvec(W, d, Wd);
            return f(d, a, qv, D, Dd, Da, Wd);
        });
    };

    StressPowerLedger L;
    L.raw[0] = quad([&](double*, double*, double*, Mat3& D, double*, double*,
                        double*) {
        double x = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) x += D.m[i][j] * D.m[i][j];
        return x;
    });
    L.raw[1] = quad([&](double* d, double*, double*, Mat3&, double* Dd,
                        double*, double*) {
        double x = dot3(d, Dd);
        return x * x;
    });
    L.raw[2] = quad([&](double*, double*, double*, Mat3&, double* Dd, double*,
                        double*) { return dot3(Dd, Dd); });
    L.raw[3] = quad([&](double*, double* a, double*, Mat3&, double*,
                        double* Da, double*) {
        double x = dot3(a, Da);
        return x * x;
    });
    L.raw[4] = quad([&](double*, double*, double*, Mat3&, double*, double* Da,
                        double*) { return dot3(Da, Da); });
    L.raw[5] = quad([&](double* d, double*, double*, Mat3&, double*,
                        double* Da, double*) {
        double x = dot3(d, Da);
        return x * x;
    });
    L.quad[0] = p.alpha1 * L.raw[1];
    L.quad[1] = p.alpha4 * L.raw[0];
    L.quad[2] = c5 * L.raw[2];
    L.quad[3] = p.tau1 * L.raw[3];
    L.quad[4] = t2eff * L.raw[4];
    L.quad[5] = 2.0 * p.kappa2 * L.raw[5];

    L.q_cross[0] = -p.lambda * quad([&](double*, double*, double* qv, Mat3&,
                                        double* Dd, double*, double*) {
        return dot3(Dd, qv);
    });
    L.q_cross[1] = quad([&](double*, double*, double* qv, Mat3&, double*,
                            double*, double* Wd) { return dot3(qv, Wd); });
    L.q_cross[2] = -2.0 * p.kappa1 * p.gamma *
                   quad([&](double*, double*, double* qv, Mat3&, double*,
                            double* Da, double*) { return dot3(Da, qv); });

    L.sign_indefinite[0] =
        2.0 * p.kappa3 * quad([&](double* d, double* a, double*, Mat3&,
                                  double* Dd, double* Da, double*) {
            return dot3(d, Dd) * dot3(a, Da);
        });
    L.sign_indefinite[1] =
        4.0 * p.kappa4 * quad([&](double* d, double*, double*, Mat3&,
                                  double* Dd, double* Da, double*) {
            return dot3(d, Da) * dot3(d, Dd);
        });
    L.sign_indefinite[2] =
        4.0 * p.kappa5 * quad([&](double* d, double* a, double*, Mat3&,
                                  double*, double* Da, double*) {
            return dot3(d, Da) * dot3(a, Da);
        });
    L.sign_indefinite[3] =
        4.0 * k6l * quad([&](double*, double*, double*, Mat3&, double* Dd,
                             double* Da, double*) { return dot3(Dd, Da); });
    return L;
}

} // namespace smectic
