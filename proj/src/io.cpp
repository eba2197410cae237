#include "smectic/io.hpp"

#include "smectic/errors.hpp"
#include "smectic/fft.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace smectic {
namespace {

constexpr char magic[8] = {'S', 'M', 'E', 'C', 'F', 'L', 'D', '1'};

struct Header {
    std::uint32_t rank;
    std::array<int, 3> n;
    std::array<double, 3> box;
};

void write_header(std::ofstream& os, const Header& h) {
    char buf[64] = {};
    std::memcpy(buf, magic, 8);
    std::uint32_t rank = h.rank;
    std::memcpy(buf + 8, &rank, 4);
    for (int i = 0; i < 3; ++i) {
        std::uint32_t n = std::uint32_t(h.n[std::size_t(i)]);
        std::memcpy(buf + 12 + 4 * i, &n, 4);
    }
    for (int i = 0; i < 3; ++i)
        std::memcpy(buf + 24 + 8 * i, &h.box[std::size_t(i)], 8);
    os.write(buf, 64);
}

Header read_header(std::ifstream& is, const std::string& path) {
    char buf[64];
    if (!is.read(buf, 64)) throw io_error("truncated field header: " + path);
    if (std::memcmp(buf, magic, 8) != 0)
        throw io_error("bad magic in field dump: " + path);
    Header h;
    std::memcpy(&h.rank, buf + 8, 4);
    for (int i = 0; i < 3; ++i) {
        std::uint32_t n;
        std::memcpy(&n, buf + 12 + 4 * i, 4);
        h.n[std::size_t(i)] = int(n);
    }
    for (int i = 0; i < 3; ++i)
        std::memcpy(&h.box[std::size_t(i)], buf + 24 + 8 * i, 8);
    if (h.rank != 1 && h.rank != 3)
        throw io_error("unsupported field rank in " + path);
    return h;
}

void write_samples(std::ofstream& os, const SpectralScalarField& f) {
    PhysicalField p = to_physical(f);
    os.write(reinterpret_cast<const char*>(p.values.data()),
             std::streamsize(p.values.size() * sizeof(double)));
}

PhysicalField read_samples(std::ifstream& is, std::array<int, 3> n,
                           const std::string& path) {
    PhysicalField p = make_physical(n);
    if (!is.read(reinterpret_cast<char*>(p.values.data()),
                 std::streamsize(p.values.size() * sizeof(double))))
        throw io_error("truncated field data: " + path);
    return p;
}

} // namespace

void dump_field(const std::string& path, const SpectralScalarField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot write field dump: " + path);
    write_header(os, {1, f.grid.n, f.grid.box});
    write_samples(os, f);
    if (!os) throw io_error("failed writing field dump: " + path);
}

void dump_field(const std::string& path, const SpectralVectorField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot write field dump: " + path);
    write_header(os, {3, f.grid().n, f.grid().box});
    for (int i = 0; i < 3; ++i) write_samples(os, f[i]);
    if (!os) throw io_error("failed writing field dump: " + path);
}

FieldAny read_field(const std::string& path, int pad_factor) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open field dump: " + path);
    Header h = read_header(is, path);
    Grid g = make_grid(h.n, h.box, pad_factor);
    if (h.rank == 1) return to_spectral(read_samples(is, h.n, path), g);
    SpectralVectorField v(g);
    for (int i = 0; i < 3; ++i)
        v[i] = to_spectral(read_samples(is, h.n, path), g);
    return v;
}

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot write file: " + path);
    os << content;
    if (!os) throw io_error("failed writing file: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace smectic
