#include "smectic/kernels.hpp"

namespace smectic::kernels {

void multiply(const std::vector<double>& a, const std::vector<double>& b,
              std::vector<double>& out) {
    out.resize(a.size());
    map(a.size(), out.data(), [&](std::size_t i) { return a[i] * b[i]; });
}

void axpy(double s, const std::vector<double>& a, std::vector<double>& out) {
    init_threads();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(a.size()); ++i)
        out[std::size_t(i)] += s * a[std::size_t(i)];
}

void scale_modes(const std::vector<double>& m,
                 std::vector<std::complex<double>>& c) {
    init_threads();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(c.size()); ++i)
        c[std::size_t(i)] *= m[std::size_t(i)];
}

namespace ref {

void multiply(const std::vector<double>& a, const std::vector<double>& b,
              std::vector<double>& out) {
    out.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

void axpy(double s, const std::vector<double>& a, std::vector<double>& out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += s * a[i];
}

void scale_modes(const std::vector<double>& m,
                 std::vector<std::complex<double>>& c) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= m[i];
}

} // namespace ref
} // namespace smectic::kernels
