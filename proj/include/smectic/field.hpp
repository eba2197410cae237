#pragma once

#include "smectic/errors.hpp"
#include "smectic/grid.hpp"

#include <array>
#include <complex>
#include <variant>
#include <vector>

namespace smectic {

using cplx = std::complex<double>;

/// Real-valued samples on a (possibly padded) physical grid.
struct PhysicalField {
    std::array<int, 3> dims{0, 0, 0};
    std::vector<double> values;

    std::size_t size() const {
        return std::size_t(dims[0]) * std::size_t(dims[1]) * std::size_t(dims[2]);
    }
};

PhysicalField make_physical(std::array<int, 3> dims);

/// Truncated Fourier coefficients of a real scalar field.
/// Layout: c[(i1*n2 + i2)*n3 + i3], FFT frequency order per axis.
struct SpectralScalarField {
    Grid grid;
    std::vector<cplx> c;

    SpectralScalarField() = default;
    explicit SpectralScalarField(const Grid& g) : grid(g), c(g.size()) {}

    cplx& at(int i1, int i2, int i3) {
        return c[(std::size_t(i1) * grid.n[1] + i2) * grid.n[2] + i3];
    }
    const cplx& at(int i1, int i2, int i3) const {
        return c[(std::size_t(i1) * grid.n[1] + i2) * grid.n[2] + i3];
    }

    SpectralScalarField& operator+=(const SpectralScalarField& o);
    SpectralScalarField& operator-=(const SpectralScalarField& o);
    SpectralScalarField& operator*=(double s);
};

struct SpectralVectorField {
    std::array<SpectralScalarField, 3> comp;

    SpectralVectorField() = default;
    explicit SpectralVectorField(const Grid& g)
        : comp{SpectralScalarField(g), SpectralScalarField(g),
               SpectralScalarField(g)} {}

    const Grid& grid() const { return comp[0].grid; }
    SpectralScalarField& operator[](int i) { return comp[i]; }
    const SpectralScalarField& operator[](int i) const { return comp[i]; }

    SpectralVectorField& operator+=(const SpectralVectorField& o);
    SpectralVectorField& operator-=(const SpectralVectorField& o);
    SpectralVectorField& operator*=(double s);
};

/// 3x3 tensor field; component (i,j) at index i*3+j.
struct SpectralTensorField {
    std::array<SpectralScalarField, 9> comp;

    SpectralTensorField() = default;
    explicit SpectralTensorField(const Grid& g) {
        for (auto& f : comp) f = SpectralScalarField(g);
    }

    const Grid& grid() const { return comp[0].grid; }
    SpectralScalarField& at(int i, int j) { return comp[i * 3 + j]; }
    const SpectralScalarField& at(int i, int j) const { return comp[i * 3 + j]; }

    SpectralTensorField& operator+=(const SpectralTensorField& o);
    SpectralTensorField& operator-=(const SpectralTensorField& o);
    SpectralTensorField& operator*=(double s);
};

using FieldAny =
    std::variant<SpectralScalarField, SpectralVectorField, SpectralTensorField>;

void check_same_grid(const Grid& a, const Grid& b);

/// Max deviation from conjugate symmetry, |c(-k) - conj(c(k))|.
double hermitian_defect(const SpectralScalarField& f);

double max_abs(const SpectralScalarField& f);
double max_abs(const SpectralVectorField& f);

} // namespace smectic
