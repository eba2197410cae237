#pragma once

#include "smectic/field.hpp"

namespace smectic {

enum class OperatorKind {
    grad,
    div,
    curl,
    laplacian,
    bilaplacian,
    grad_vec,
    sym_grad,
    skw_grad,
};

// Exact ik-multiplier calculus on the retained band.
SpectralVectorField grad(const SpectralScalarField& f);
SpectralScalarField divergence(const SpectralVectorField& v);
SpectralVectorField curl(const SpectralVectorField& v);
SpectralScalarField laplacian(const SpectralScalarField& f);
SpectralVectorField laplacian(const SpectralVectorField& v);
SpectralScalarField bilaplacian(const SpectralScalarField& f);
SpectralVectorField bilaplacian(const SpectralVectorField& v);
/// (grad_vec v)_ij = dv_i/dx_j.
SpectralTensorField grad_vec(const SpectralVectorField& v);
SpectralTensorField sym_grad(const SpectralVectorField& v);
SpectralTensorField skw_grad(const SpectralVectorField& v);
/// (div T)_i = d T_ij / dx_j.
SpectralVectorField divergence(const SpectralTensorField& t);

/// Rank-checked dispatcher; throws rank_error on a mismatch.
FieldAny apply_operator(OperatorKind kind, const FieldAny& f);

SpectralVectorField leray_project(const SpectralVectorField& v);

SpectralScalarField truncate(const SpectralScalarField& f, int n);
SpectralVectorField truncate(const SpectralVectorField& f, int n);
SpectralTensorField truncate(const SpectralTensorField& f, int n);

/// L2(Omega) inner products via Parseval (exact for band-limited fields).
double inner_product(const SpectralScalarField& f, const SpectralScalarField& g);
double inner_product(const SpectralVectorField& f, const SpectralVectorField& g);
double inner_product(const SpectralTensorField& f, const SpectralTensorField& g);

double l2_norm(const SpectralScalarField& f);
double l2_norm(const SpectralVectorField& f);
double l2_norm(const SpectralTensorField& f);

/// H^{-1} norm via the |k|^{-1} multiplier; the k=0 mode is skipped.
double h_minus1_norm(const SpectralVectorField& f);

// Dealiased pointwise products (padded-grid evaluation, truncation back).
SpectralScalarField pw_multiply(const SpectralScalarField& a,
                                const SpectralScalarField& b);
SpectralVectorField pw_multiply(const SpectralScalarField& a,
                                const SpectralVectorField& b);
SpectralTensorField pw_multiply(const SpectralScalarField& a,
                                const SpectralTensorField& b);
SpectralScalarField pw_dot(const SpectralVectorField& a,
                           const SpectralVectorField& b);
SpectralVectorField pw_cross(const SpectralVectorField& a,
                             const SpectralVectorField& b);
SpectralVectorField pw_matvec(const SpectralTensorField& t,
                              const SpectralVectorField& v);
SpectralTensorField pw_outer(const SpectralVectorField& a,
                             const SpectralVectorField& b);
SpectralScalarField pw_frobenius(const SpectralTensorField& a,
                                 const SpectralTensorField& b);

} // namespace smectic
