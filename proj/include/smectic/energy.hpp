#pragma once

#include "smectic/field.hpp"
#include "smectic/params.hpp"

namespace smectic {

/// Layer function phi(x) = pitch . x + psi(x); only derivatives of phi
/// enter the equations, so the non-periodic linear part is carried as a
/// constant pitch vector next to the periodic remainder.
struct LayerField {
    std::array<double, 3> pitch{0.0, 0.0, 0.0};
    SpectralScalarField psi;
};

struct State {
    SpectralVectorField d;
    LayerField layer;
    SpectralVectorField v;
    double t = 0.0;
};

struct EnergyBreakdown {
    double splay = 0.0;            // (k1/2)(div d)^2
    double bend = 0.0;             // (k3/2)|curl d|^2
    double layer_bend = 0.0;       // (k5/2)(lap phi)^2
    double coupling_B0 = 0.0;      // (B0/2)(|grad phi|^2 + d.a - 2)^2
    double coupling_B1 = 0.0;      // (B1/2)|d x a|^2
    double penalty_d = 0.0;        // (1/4 eps1)(|d|^2-1)^2
    double penalty_grad_phi = 0.0; // (1/4 eps2)(|grad phi|^2-1)^2
    double total = 0.0;
};

/// Pointwise samples of a state's derived fields on the padded grid.
/// All nonlinear assembly (energy, q, j, stresses) runs off one shared
/// quadrature grid so that q and j are the exact discrete gradients of
/// the computed energy.
struct PointState {
    std::array<int, 3> dims{0, 0, 0};
    std::array<PhysicalField, 3> d;
    std::array<PhysicalField, 9> grad_d;   // (i,j) -> d d_i / d x_j
    std::array<PhysicalField, 3> g;        // grad phi = pitch + grad psi
    std::array<PhysicalField, 9> hess_phi; // second derivatives of psi
    PhysicalField lap_phi;                 // = lap psi
    std::array<PhysicalField, 3> a;        // layer normal per normal_mode
};

PointState sample_state(const State& s, const ModelParams& p);

/// Pointwise samples of a band-limited vector field on `dims`.
std::array<PhysicalField, 3> sample_vector(const SpectralVectorField& f,
                                           std::array<int, 3> dims);

SpectralVectorField layer_normal(const LayerField& layer, const ModelParams& p);

/// grad phi as a band-limited field (pitch enters the mean mode).
SpectralVectorField layer_gradient(const LayerField& layer);

EnergyBreakdown free_energy(const State& s, const ModelParams& p);

/// L2 variational derivative of the discrete free energy w.r.t. d.
SpectralVectorField variational_q(const State& s, const ModelParams& p);

/// L2 variational derivative of the discrete free energy w.r.t. psi.
SpectralScalarField variational_j(const State& s, const ModelParams& p);

/// Elastic (Ericksen) stress.
SpectralTensorField elastic_stress(const State& s, const ModelParams& p);

} // namespace smectic
