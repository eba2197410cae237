#include "smectic/fft.hpp"

#include "smectic/errors.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace smectic {
namespace {

// One cached plan pair per physical grid size. FFTW planning and
// execution are guarded by a single mutex; the transforms themselves
// are serial (parallelism lives in the pointwise kernels).
struct PlanSet {
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::size_t size = 0;

    explicit PlanSet(std::array<int, 3> dims) {
        size = std::size_t(dims[0]) * dims[1] * dims[2];
        buf = fftw_alloc_complex(size);
        fwd = fftw_plan_dft_3d(dims[0], dims[1], dims[2], buf, buf,
                               FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_3d(dims[0], dims[1], dims[2], buf, buf,
                               FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~PlanSet() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
    }
};

std::mutex g_fft_mutex;

PlanSet& plans_for(std::array<int, 3> dims) {
    static std::map<std::tuple<int, int, int>, std::unique_ptr<PlanSet>> cache;
    auto key = std::make_tuple(dims[0], dims[1], dims[2]);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<PlanSet>(dims)).first;
    return *it->second;
}

} // namespace

PhysicalField to_physical(const SpectralScalarField& f, std::array<int, 3> dims) {
    const Grid& g = f.grid;
    for (int a = 0; a < 3; ++a)
        if (dims[a] < g.n[a])
            throw rank_error("physical grid smaller than spectral grid");

    std::lock_guard<std::mutex> lock(g_fft_mutex);
    PlanSet& ps = plans_for(dims);
    for (std::size_t i = 0; i < ps.size; ++i) ps.buf[i][0] = ps.buf[i][1] = 0.0;

    for (int i1 = 0; i1 < g.n[0]; ++i1) {
        if (!g.in_band(0, i1)) continue;
        int m1 = g.freq(0, i1);
        int j1 = m1 >= 0 ? m1 : dims[0] + m1;
        for (int i2 = 0; i2 < g.n[1]; ++i2) {
            if (!g.in_band(1, i2)) continue;
            int m2 = g.freq(1, i2);
            int j2 = m2 >= 0 ? m2 : dims[1] + m2;
            for (int i3 = 0; i3 < g.n[2]; ++i3) {
                if (!g.in_band(2, i3)) continue;
                int m3 = g.freq(2, i3);
                int j3 = m3 >= 0 ? m3 : dims[2] + m3;
                const cplx& z = f.at(i1, i2, i3);
                std::size_t idx = (std::size_t(j1) * dims[1] + j2) * dims[2] + j3;
                ps.buf[idx][0] = z.real();
                ps.buf[idx][1] = z.imag();
            }
        }
    }
    fftw_execute(ps.bwd);

    PhysicalField out = make_physical(dims);
    for (std::size_t i = 0; i < ps.size; ++i) out.values[i] = ps.buf[i][0];
    return out;
}

PhysicalField to_physical(const SpectralScalarField& f) {
    return to_physical(f, f.grid.n);
}

SpectralScalarField to_spectral(const PhysicalField& p, const Grid& grid) {
    for (int a = 0; a < 3; ++a)
        if (p.dims[a] < grid.n[a])
            throw rank_error("physical grid smaller than spectral grid");

    std::lock_guard<std::mutex> lock(g_fft_mutex);
    PlanSet& ps = plans_for(p.dims);
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        ps.buf[i][0] = p.values[i];
        ps.buf[i][1] = 0.0;
    }
    fftw_execute(ps.fwd);

    const double scale = 1.0 / double(p.values.size());
    SpectralScalarField out(grid);
    for (int i1 = 0; i1 < grid.n[0]; ++i1) {
        if (!grid.in_band(0, i1)) continue;
        int m1 = grid.freq(0, i1);
        int j1 = m1 >= 0 ? m1 : p.dims[0] + m1;
        for (int i2 = 0; i2 < grid.n[1]; ++i2) {
            if (!grid.in_band(1, i2)) continue;
            int m2 = grid.freq(1, i2);
            int j2 = m2 >= 0 ? m2 : p.dims[1] + m2;
            for (int i3 = 0; i3 < grid.n[2]; ++i3) {
                if (!grid.in_band(2, i3)) continue;
                int m3 = grid.freq(2, i3);
                int j3 = m3 >= 0 ? m3 : p.dims[2] + m3;
                std::size_t idx =
                    (std::size_t(j1) * p.dims[1] + j2) * p.dims[2] + j3;
                out.at(i1, i2, i3) = cplx(ps.buf[idx][0], ps.buf[idx][1]) * scale;
            }
        }
    }
    return out;
}

} // namespace smectic
