#include "smectic/grid.hpp"

#include "smectic/errors.hpp"

#include <cmath>

namespace smectic {

double Grid::wavenumber(int axis, int i) const {
    return 2.0 * M_PI * double(freq(axis, i)) / box[axis];
}

Grid make_grid(std::array<int, 3> n, std::array<double, 3> box,
               int pad_factor) {
    for (int a = 0; a < 3; ++a) {
        if (n[a] < 4 || n[a] % 2 != 0)
            throw config_error("grid modes must be even and >= 4");
        if (!(box[a] > 0.0))
            throw config_error("box lengths must be positive");
    }
    if (pad_factor < 2) throw config_error("pad factor must be >= 2");
    Grid g;
    g.n = n;
    g.box = box;
    g.pad_factor = pad_factor;
    return g;
}

} // namespace smectic
