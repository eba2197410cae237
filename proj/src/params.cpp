#include "smectic/params.hpp"

#include "smectic/errors.hpp"

#include <cmath>
#include <sstream>

namespace smectic {

void validate(const ModelParams& p) {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw config_error(std::string("parameter must be > 0: ") + what);
    };
    require(p.gamma > 0, "gamma");
    require(p.lambda_p > 0, "lambda_p");
    require(p.eps1 > 0, "eps1");
    require(p.eps2 > 0, "eps2");
    require(p.k1 > 0, "k1");
    require(p.k3 > 0, "k3");
    require(p.k5 > 0, "k5");
    require(p.B0 > 0, "B0");
    require(p.B1 > 0, "B1");
    if (p.normal_mode == NormalMode::Relaxed)
        require(p.normal_eps > 0, "normal_eps");
}

namespace {

// 2*alpha5 + lambda/gamma - lambda^2/gamma
double c5(const ModelParams& p) {
    return 2.0 * p.alpha5 + p.lambda / p.gamma -
           p.lambda * p.lambda / p.gamma;
}

double tau2_eff(const ModelParams& p) {
    return p.tau2 - 2.0 * p.kappa1 * p.kappa1 * p.gamma;
}

} // namespace

std::vector<PositivityCheck> validate_positivity(const ModelParams& p) {
    std::vector<PositivityCheck> out;
    auto add = [&](std::string name, double v) {
        out.push_back({std::move(name), v, v > 0.0});
    };
    add("lambda_p", p.lambda_p);
    add("gamma", p.gamma);
    add("alpha1", p.alpha1);
    add("alpha4", p.alpha4);
    add("2*alpha5+lambda/gamma-lambda^2/gamma", c5(p));
    add("tau1", p.tau1);
    add("tau2-2*kappa1^2*gamma", tau2_eff(p));
    add("kappa2", p.kappa2);
    return out;
}

std::vector<SmallnessCheck> validate_smallness(const ModelParams& p) {
    std::vector<SmallnessCheck> out;
    auto add = [&](std::string name, double lhs, double rhs) {
        out.push_back({std::move(name), lhs, rhs, lhs < rhs});
    };
    double k6l = p.kappa6 - p.kappa1 * p.lambda;
    add("4*kappa3^2 < alpha1*tau1", 4.0 * p.kappa3 * p.kappa3,
        p.alpha1 * p.tau1);
    add("8*kappa4^2 < alpha1*kappa2", 8.0 * p.kappa4 * p.kappa4,
        p.alpha1 * p.kappa2);
    add("8*kappa5^2 < kappa2*tau1", 8.0 * p.kappa5 * p.kappa5,
        p.kappa2 * p.tau1);
    add("4*(kappa6-kappa1*lambda)^2 < (2*tau2-4*kappa1^2*gamma)*"
        "(2*alpha5+lambda/gamma-lambda^2/gamma)",
        4.0 * k6l * k6l, 2.0 * tau2_eff(p) * c5(p));
    return out;
}

bool DissipativityCertificate::positivity_ok() const {
    for (const auto& c : positivity)
        if (!c.pass) return false;
    return true;
}

bool DissipativityCertificate::smallness_ok() const {
    for (const auto& c : smallness)
        if (!c.pass) return false;
    return true;
}

DissipativityCertificate certify(const ModelParams& p) {
    DissipativityCertificate cert;
    cert.positivity = validate_positivity(p);
    cert.smallness = validate_smallness(p);
    if (!cert.positivity_ok()) return cert;

    // Each ratio is the zeta at which the Young absorption of one cross
    // term exactly exhausts its two quadratures; the max is the binding one.
    double c5v = c5(p);
    double t2 = tau2_eff(p);
    double r1 = std::abs(2.0 * p.kappa3) / (std::sqrt(p.alpha1) * std::sqrt(p.tau1));
    double r2 = std::abs(4.0 * p.kappa4) /
                (std::sqrt(p.alpha1) * std::sqrt(2.0 * p.kappa2));
    double r3 = std::abs(4.0 * p.kappa5) /
                (std::sqrt(2.0 * p.kappa2) * std::sqrt(p.tau1));
    double r4 = 4.0 * std::abs(p.kappa6 - p.kappa1 * p.lambda) /
                (2.0 * std::sqrt(2.0 * t2) * std::sqrt(c5v));
    double zeta = std::max(std::max(r1, r2), std::max(r3, r4));
    if (!(zeta < 1.0)) return cert;

    cert.zeta = zeta;
    double m = 1.0 - zeta;
    cert.betas = {p.alpha4 / 2.0,  // |Dv|^2 share of the alpha4 quadrature
                  m * p.alpha1,    // |d.Dv d|^2
                  m * c5v,         // |Dv d|^2
                  m * p.tau1,      // |a.Dv a|^2
                  m * 2.0 * t2,    // |Dv a|^2
                  m * 2.0 * p.kappa2};  // |d.Dv a|^2
    return cert;
}

std::string certificate_report(const DissipativityCertificate& c) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& pc : c.positivity)
        os << "positivity " << pc.name << " = " << pc.value << " "
           << (pc.pass ? "pass" : "FAIL") << "\n";
    for (const auto& sc : c.smallness)
        os << "smallness " << sc.name << " : " << sc.lhs << " vs " << sc.rhs
           << " " << (sc.pass ? "pass" : "FAIL") << "\n";
    if (c.zeta) {
        os << "zeta = " << *c.zeta << "\n";
        for (int i = 0; i < 6; ++i)
            os << "beta" << i + 1 << " = " << c.betas[std::size_t(i)] << "\n";
        os << "certified = yes\n";
    } else {
        os << "certified = no\n";
    }
    return os.str();
}

} // namespace smectic
