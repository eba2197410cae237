#pragma once

#include "smectic/energy.hpp"

#include <string>

namespace smectic {

struct InitialSpec {
    std::string preset = "ground";  // ground | perturbed-ground | random
    double amplitude = 0.01;
    unsigned long seed = 1;
    int band = 2;  // |m_i| <= band for every random mode
    std::array<double, 3> pitch{0.0, 0.0, 1.0};
};

/// Random band-limited real field with coefficients ~ U(-1,1)*amplitude.
SpectralScalarField random_scalar(const Grid& g, unsigned long seed, int band,
                                  double amplitude);
SpectralVectorField random_vector(const Grid& g, unsigned long seed, int band,
                                  double amplitude);
/// Leray-projected random vector with zero mean.
SpectralVectorField random_solenoidal(const Grid& g, unsigned long seed,
                                      int band, double amplitude);

State make_initial(const Grid& g, const InitialSpec& spec);

} // namespace smectic
