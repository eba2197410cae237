#include "smectic/field.hpp"

#include <algorithm>
#include <cmath>

namespace smectic {

PhysicalField make_physical(std::array<int, 3> dims) {
    PhysicalField p;
    p.dims = dims;
    p.values.assign(p.size(), 0.0);
    return p;
}

void check_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw grid_mismatch_error("fields live on different grids");
}

SpectralScalarField& SpectralScalarField::operator+=(const SpectralScalarField& o) {
    check_same_grid(grid, o.grid);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
}

SpectralScalarField& SpectralScalarField::operator-=(const SpectralScalarField& o) {
    check_same_grid(grid, o.grid);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
}

SpectralScalarField& SpectralScalarField::operator*=(double s) {
    for (auto& z : c) z *= s;
    return *this;
}

SpectralVectorField& SpectralVectorField::operator+=(const SpectralVectorField& o) {
    for (int i = 0; i < 3; ++i) comp[i] += o.comp[i];
    return *this;
}
SpectralVectorField& SpectralVectorField::operator-=(const SpectralVectorField& o) {
    for (int i = 0; i < 3; ++i) comp[i] -= o.comp[i];
    return *this;
}
SpectralVectorField& SpectralVectorField::operator*=(double s) {
    for (int i = 0; i < 3; ++i) comp[i] *= s;
    return *this;
}

SpectralTensorField& SpectralTensorField::operator+=(const SpectralTensorField& o) {
    for (int i = 0; i < 9; ++i) comp[i] += o.comp[i];
    return *this;
}
SpectralTensorField& SpectralTensorField::operator-=(const SpectralTensorField& o) {
    for (int i = 0; i < 9; ++i) comp[i] -= o.comp[i];
    return *this;
}
SpectralTensorField& SpectralTensorField::operator*=(double s) {
    for (int i = 0; i < 9; ++i) comp[i] *= s;
    return *this;
}

double hermitian_defect(const SpectralScalarField& f) {
    const Grid& g = f.grid;
    double worst = 0.0;
    for (int i1 = 0; i1 < g.n[0]; ++i1)
        for (int i2 = 0; i2 < g.n[1]; ++i2)
            for (int i3 = 0; i3 < g.n[2]; ++i3) {
                int j1 = (g.n[0] - i1) % g.n[0];
                int j2 = (g.n[1] - i2) % g.n[1];
                int j3 = (g.n[2] - i3) % g.n[2];
                worst = std::max(worst,
                                 std::abs(f.at(i1, i2, i3) -
                                          std::conj(f.at(j1, j2, j3))));
            }
    return worst;
}

double max_abs(const SpectralScalarField& f) {
    double m = 0.0;
    for (const auto& z : f.c) m = std::max(m, std::abs(z));
    return m;
}

double max_abs(const SpectralVectorField& f) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i) m = std::max(m, max_abs(f[i]));
    return m;
}

} // namespace smectic
