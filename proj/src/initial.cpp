#include "smectic/initial.hpp"

#include "smectic/errors.hpp"
#include "smectic/operators.hpp"

#include <random>

namespace smectic {
namespace {

int wrap_index(const Grid& g, int axis, int m) {
    return m >= 0 ? m : g.n[axis] + m;
}

bool canonical(int m1, int m2, int m3) {
    if (m1 != 0) return m1 > 0;
    if (m2 != 0) return m2 > 0;
    return m3 > 0;
}

} // namespace

SpectralScalarField random_scalar(const Grid& g, unsigned long seed, int band,
                                  double amplitude) {
    if (band >= g.n[0] / 2 || band >= g.n[1] / 2 || band >= g.n[2] / 2)
        throw config_error("random band exceeds the retained mode range");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    SpectralScalarField f(g);
    for (int m1 = -band; m1 <= band; ++m1)
        for (int m2 = -band; m2 <= band; ++m2)
            for (int m3 = -band; m3 <= band; ++m3) {
                if (m1 == 0 && m2 == 0 && m3 == 0) {
                    f.at(0, 0, 0) = amplitude * u(rng);
                    continue;
                }
                if (!canonical(m1, m2, m3)) continue;
                cplx z{amplitude * u(rng), amplitude * u(rng)};
                f.at(wrap_index(g, 0, m1), wrap_index(g, 1, m2),
                     wrap_index(g, 2, m3)) = z;
                f.at(wrap_index(g, 0, -m1), wrap_index(g, 1, -m2),
                     wrap_index(g, 2, -m3)) = std::conj(z);
            }
    return f;
}

SpectralVectorField random_vector(const Grid& g, unsigned long seed, int band,
                                  double amplitude) {
    SpectralVectorField f(g);
    for (int i = 0; i < 3; ++i)
        f[i] = random_scalar(g, seed + 1000003UL * (unsigned long)(i + 1), band,
                             amplitude);
    return f;
}

SpectralVectorField random_solenoidal(const Grid& g, unsigned long seed,
                                      int band, double amplitude) {
    SpectralVectorField f = leray_project(random_vector(g, seed, band, amplitude));
    for (int i = 0; i < 3; ++i) f[i].c[0] = 0.0;
    return f;
}

State make_initial(const Grid& g, const InitialSpec& spec) {
    State s;
    s.d = SpectralVectorField(g);
    s.layer.pitch = spec.pitch;
    s.layer.psi = SpectralScalarField(g);
    s.v = SpectralVectorField(g);
    s.t = 0.0;

    if (spec.preset == "ground") {
        s.d[2].c[0] = 1.0;
    } else if (spec.preset == "perturbed-ground") {
        s.d[2].c[0] = 1.0;
        s.d += random_vector(g, spec.seed, spec.band, spec.amplitude);
        s.layer.psi += random_scalar(g, spec.seed + 17, spec.band, spec.amplitude);
        s.v += random_solenoidal(g, spec.seed + 34, spec.band, spec.amplitude);
    } else if (spec.preset == "random") {
        s.d = random_vector(g, spec.seed, spec.band, spec.amplitude);
        s.layer.psi = random_scalar(g, spec.seed + 17, spec.band, spec.amplitude);
        s.v = random_solenoidal(g, spec.seed + 34, spec.band, spec.amplitude);
    } else {
        throw config_error("unknown initial preset: " + spec.preset);
    }
    return s;
}

} // namespace smectic
