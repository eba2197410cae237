#pragma once

#include <array>
#include <cstddef>

namespace smectic {

/// Periodic box with a truncated Fourier lattice.
///
/// Modes per axis are stored in FFT order; the retained band is
/// |m_i| <= n_i/2 - 1 (Nyquist planes are held at zero so that every
/// retained mode has its conjugate partner and ik-multipliers are
/// well defined on real fields). Nonlinear products are evaluated on
/// a padded grid of pad_factor * n points per axis and truncated back,
/// which dealiases every binary product of grid fields exactly.
struct Grid {
    std::array<int, 3> n{16, 16, 16};
    std::array<double, 3> box{6.283185307179586, 6.283185307179586,
                              6.283185307179586};
    int pad_factor = 2;

    std::size_t size() const {
        return std::size_t(n[0]) * std::size_t(n[1]) * std::size_t(n[2]);
    }
    std::array<int, 3> padded_dims() const {
        return {n[0] * pad_factor, n[1] * pad_factor, n[2] * pad_factor};
    }
    std::size_t padded_size() const {
        auto m = padded_dims();
        return std::size_t(m[0]) * std::size_t(m[1]) * std::size_t(m[2]);
    }
    double volume() const { return box[0] * box[1] * box[2]; }

    /// Signed integer frequency of storage index i on axis.
    int freq(int axis, int i) const { return i < n[axis] / 2 ? i : i - n[axis]; }

    /// Wave number component 2*pi*m/L.
    double wavenumber(int axis, int i) const;

    /// True if the mode lies in the retained (Nyquist-free) band.
    bool in_band(int axis, int i) const {
        int m = freq(axis, i);
        return m > -n[axis] / 2;
    }

    bool operator==(const Grid& o) const {
        return n == o.n && box == o.box;
    }
};

Grid make_grid(std::array<int, 3> n, std::array<double, 3> box,
               int pad_factor = 2);

} // namespace smectic
