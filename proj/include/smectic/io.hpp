#pragma once

#include "smectic/field.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace smectic {

// Field dump format: 64-byte header (magic "SMECFLD1", u32 rank,
// u32 n1,n2,n3, f64 box1..3, zero padding), then rank * n1*n2*n3
// little-endian float64 physical samples, component-major.

void dump_field(const std::string& path, const SpectralScalarField& f);
void dump_field(const std::string& path, const SpectralVectorField& f);

FieldAny read_field(const std::string& path, int pad_factor = 2);

std::string format_g17(double x);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

std::uint64_t fnv1a(const std::string& s);

} // namespace smectic
