#pragma once

#include "smectic/parallel.hpp"

#include <complex>
#include <cstddef>
#include <vector>

// Data-parallel inner loops. Each kernel has an OpenMP version here and
// a serial twin in kernels::ref used as the test/benchmark reference.
// Reductions accumulate fixed-size chunk partials that are summed in
// index order, so results do not depend on the thread count.

namespace smectic::kernels {

inline constexpr std::size_t reduce_chunk = 4096;

template <class F>
double reduce_sum(std::size_t n, F&& f) {
    init_threads();
    const std::size_t nchunks = (n + reduce_chunk - 1) / reduce_chunk;
    std::vector<double> partial(nchunks, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(nchunks); ++c) {
        const std::size_t lo = std::size_t(c) * reduce_chunk;
        const std::size_t hi = lo + reduce_chunk < n ? lo + reduce_chunk : n;
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += f(i);
        partial[std::size_t(c)] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

/// out[i] = f(i), elementwise map over a flat array.
template <class F>
void map(std::size_t n, double* out, F&& f) {
    init_threads();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i)
        out[std::size_t(i)] = f(std::size_t(i));
}

void multiply(const std::vector<double>& a, const std::vector<double>& b,
              std::vector<double>& out);

/// out += s * a
void axpy(double s, const std::vector<double>& a, std::vector<double>& out);

/// c[i] *= m[i] for complex spectral arrays (real multiplier).
void scale_modes(const std::vector<double>& m, std::vector<std::complex<double>>& c);

namespace ref {

template <class F>
double reduce_sum(std::size_t n, F&& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += f(i);
    return s;
}

template <class F>
void map(std::size_t n, double* out, F&& f) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
}

void multiply(const std::vector<double>& a, const std::vector<double>& b,
              std::vector<double>& out);
void axpy(double s, const std::vector<double>& a, std::vector<double>& out);
void scale_modes(const std::vector<double>& m, std::vector<std::complex<double>>& c);

} // namespace ref
} // namespace smectic::kernels
