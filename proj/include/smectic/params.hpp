#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace smectic {

enum class NormalMode { Gradient, Relaxed };

/// All scalar coefficients of the model plus the layer-normal mode.
struct ModelParams {
    double lambda = 0.0;
    double kappa1 = 0.0, kappa2 = 1.0, kappa3 = 0.0;
    double kappa4 = 0.0, kappa5 = 0.0, kappa6 = 0.0;
    double gamma = 1.0;
    double lambda_p = 1.0;
    double alpha1 = 1.0, alpha4 = 1.0, alpha5 = 1.0;
    double tau1 = 1.0, tau2 = 1.0;
    double k1 = 1.0, k3 = 1.0, k5 = 1.0;
    double B0 = 1.0, B1 = 1.0;
    double eps1 = 1.0, eps2 = 1.0;
    NormalMode normal_mode = NormalMode::Gradient;
    double normal_eps = 0.1;  // epsilon of the relaxed normal
};

/// Throws config_error unless gamma, lambda_p, eps1, eps2, k1, k3, k5,
/// B0, B1 (and normal_eps in Relaxed mode) are strictly positive.
void validate(const ModelParams& p);

struct PositivityCheck {
    std::string name;
    double value;
    bool pass;
};

struct SmallnessCheck {
    std::string name;
    double lhs, rhs;
    bool pass;
};

struct DissipativityCertificate {
    std::vector<PositivityCheck> positivity;
    std::vector<SmallnessCheck> smallness;
    std::optional<double> zeta;
    std::array<double, 6> betas{};  // beta_1..beta_6, valid iff zeta present

    bool positivity_ok() const;
    bool smallness_ok() const;
    bool certified() const { return zeta.has_value(); }
};

std::vector<PositivityCheck> validate_positivity(const ModelParams& p);
std::vector<SmallnessCheck> validate_smallness(const ModelParams& p);

/// zeta = max of the four scaled cross-term ratios; present iff the max
/// is < 1 and every positivity condition holds. The betas split the
/// surviving dissipation as beta_1 = alpha4/2 and beta_i = (1-zeta) times
/// the coefficient of the matching quadrature for i >= 2.
DissipativityCertificate certify(const ModelParams& p);

/// Plain-text report of a certificate (one line per condition).
std::string certificate_report(const DissipativityCertificate& c);

} // namespace smectic
