#include "smectic/driver.hpp"

#include "smectic/diagnostics.hpp"
#include "smectic/errors.hpp"
#include "smectic/io.hpp"
#include "smectic/operators.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <variant>
#include <vector>

namespace smectic {
namespace {

namespace fs = std::filesystem;

std::string snap_name(std::size_t i, const char* field) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap%04zu_%s.fld", i, field);
    return buf;
}

double kinetic_energy(const State& s) {
    return 0.5 * inner_product(s.v, s.v);
}

std::string params_echo(const ModelParams& p) {
    std::ostringstream os;
    auto line = [&](const char* k, double v) {
        os << "params." << k << " = " << format_g17(v) << "\n";
    };
    line("lambda", p.lambda);
    line("kappa1", p.kappa1);
    line("kappa2", p.kappa2);
    line("kappa3", p.kappa3);
    line("kappa4", p.kappa4);
    line("kappa5", p.kappa5);
    line("kappa6", p.kappa6);
    line("gamma", p.gamma);
    line("lambda_p", p.lambda_p);
    line("alpha1", p.alpha1);
    line("alpha4", p.alpha4);
    line("alpha5", p.alpha5);
    line("tau1", p.tau1);
    line("tau2", p.tau2);
    line("k1", p.k1);
    line("k3", p.k3);
    line("k5", p.k5);
    line("B0", p.B0);
    line("B1", p.B1);
    line("eps1", p.eps1);
    line("eps2", p.eps2);
    os << "params.normal_mode = "
       << (p.normal_mode == NormalMode::Gradient ? "gradient" : "relaxed")
       << "\n";
    line("normal_eps", p.normal_eps);
    return os.str();
}

/// Config text with the command-line overrides appended; flat-key
/// parsing is last-wins, so re-parsing this text yields the effective
/// configuration.
std::string effective_config_text(const Config& c, const RunOverrides& ov) {
    std::string text = c.text;
    if (!ov.dt && !ov.t_end && !ov.preset && !ov.seed) return text;
    text += "\n# command-line overrides\n";
    if (ov.dt || ov.t_end) {
        text += "[solver]\n";
        if (ov.dt) text += "dt = " + format_g17(*ov.dt) + "\n";
        if (ov.t_end) text += "t_end = " + format_g17(*ov.t_end) + "\n";
    }
    if (ov.preset || ov.seed) {
        text += "[initial]\n";
        if (ov.preset) text += "preset = " + *ov.preset + "\n";
        if (ov.seed) text += "seed = " + std::to_string(*ov.seed) + "\n";
    }
    return text;
}

std::string csv(std::initializer_list<double> vals) {
    std::string row;
    for (double v : vals) {
        if (!row.empty()) row += ',';
        row += format_g17(v);
    }
    return row;
}

std::string energy_csv(const Trajectory& traj) {
    std::string out =
        "t,splay,bend,layer_bend,coupling_B0,coupling_B1,penalty_d,"
        "penalty_grad_phi,free_total,kinetic,total\n";
    for (const Snapshot& sn : traj.snaps) {
        const EnergyBreakdown& e = sn.energy;
        double kin = kinetic_energy(sn.state);
        out += csv({sn.state.t, e.splay, e.bend, e.layer_bend, e.coupling_B0,
                    e.coupling_B1, e.penalty_d, e.penalty_grad_phi, e.total,
                    kin, e.total + kin});
        out += '\n';
    }
    return out;
}

std::string dissipation_csv(const Trajectory& traj) {
    std::string out = "t,q_norm2,j_norm2";
    for (int i = 1; i <= 6; ++i) out += ",quad" + std::to_string(i);
    for (int i = 1; i <= 3; ++i) out += ",q_cross" + std::to_string(i);
    for (int i = 1; i <= 4; ++i) out += ",cross" + std::to_string(i);
    for (int i = 1; i <= 6; ++i) out += ",raw" + std::to_string(i);
    out += ",int_qj";
    for (int i = 1; i <= 6; ++i) out += ",int_quad" + std::to_string(i);
    for (int i = 1; i <= 6; ++i) out += ",int_raw" + std::to_string(i);
    for (int i = 1; i <= 4; ++i) out += ",int_cross" + std::to_string(i);
    out += ",int_g_work,int_g_dual\n";
    for (const Snapshot& sn : traj.snaps) {
        std::vector<double> vals{sn.state.t, sn.q_norm2, sn.j_norm2};
        for (double x : sn.ledger.quad) vals.push_back(x);
        for (double x : sn.ledger.q_cross) vals.push_back(x);
        for (double x : sn.ledger.sign_indefinite) vals.push_back(x);
        for (double x : sn.ledger.raw) vals.push_back(x);
        vals.push_back(sn.integrals.qj);
        for (double x : sn.integrals.quad) vals.push_back(x);
        for (double x : sn.integrals.raw) vals.push_back(x);
        for (double x : sn.integrals.cross) vals.push_back(x);
        vals.push_back(sn.integrals.g_work);
        vals.push_back(sn.integrals.g_dual);
        std::string row;
        for (double v : vals) {
            if (!row.empty()) row += ',';
            row += format_g17(v);
        }
        out += row + '\n';
    }
    return out;
}

std::string residual_row(double t, const ResidualReport& r) {
    return format_g17(t) + "," + r.name + "," + format_g17(r.value) + "," +
           format_g17(r.scale) + "," + format_g17(r.relative) + "\n";
}

std::string residuals_csv(const Trajectory& traj, const ModelParams& p) {
    std::string out = "t,name,value,scale,relative\n";
    auto identity = energy_identity_residual(traj, p);
    for (std::size_t i = 0; i < traj.snaps.size(); ++i) {
        double t = traj.snaps[i].state.t;
        out += residual_row(t, identity[i]);
        out += residual_row(t, cancellation_residual(traj.snaps[i].state, p));
        out += residual_row(t, advection_residual(traj.snaps[i].state, p));
    }
    for (std::size_t c = 1; c + 1 < traj.snaps.size(); ++c)
        out += residual_row(traj.snaps[c].state.t,
                            chain_rule_residual(traj, p, c));
    return out;
}

std::string ledger_csv(const Trajectory& traj, const ModelParams& p) {
    std::string out =
        "t,v_l2,grad_d_l2,lap_psi_l2,lap_d_l2,bilap_psi_l2,dv_l2,d_dv_d_l2,"
        "a_dv_a_l2,dv_d_l2,dv_a_l2,d_dv_a_l2,grad_d_l16_5,d_l48_5,"
        "hess_phi_l24_7,grad_phi_l12,gn_ratio_grad_d,gn_ratio_d,"
        "gn_ratio_hess_phi,gn_ratio_grad_phi\n";
    NormLedger nl = norm_ledger(traj, p);
    for (const NormLedgerRow& r : nl.rows) {
        out += csv({r.t, r.v_l2, r.grad_d_l2, r.lap_psi_l2, r.lap_d_l2,
                    r.bilap_psi_l2, r.dv_l2, r.d_dv_d_l2, r.a_dv_a_l2,
                    r.dv_d_l2, r.dv_a_l2, r.d_dv_a_l2, r.grad_d_l16_5,
                    r.d_l48_5, r.hess_phi_l24_7, r.grad_phi_l12,
                    r.gn_ratio_grad_d, r.gn_ratio_d, r.gn_ratio_hess_phi,
                    r.gn_ratio_grad_phi});
        out += '\n';
    }
    return out;
}

struct Manifest {
    std::map<std::string, std::string> kv;
    std::vector<std::string> files;

    double num(const std::string& k) const {
        auto it = kv.find(k);
        if (it == kv.end()) throw io_error("manifest is missing key: " + k);
        return std::stod(it->second);
    }
};

Manifest parse_manifest(const std::string& text) {
    Manifest m;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto strip = [](std::string& s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
                s.erase(s.begin());
            while (!s.empty() &&
                   (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
                s.pop_back();
        };
        strip(key);
        strip(val);
        if (key == "file") {
            m.files.push_back(val);
        } else {
            m.kv[key] = val;
        }
    }
    return m;
}

std::vector<std::vector<double>> parse_csv_numbers(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (first) {  // header
            first = false;
            continue;
        }
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

int cmd_certify(const std::string& config_path, std::ostream& out) {
    Config c;
    try {
        c = parse_config(config_path);
    } catch (const error& e) {
        out << "error: " << e.what() << "\n";
        return 1;
    }
    DissipativityCertificate cert = certify(c.params);
    out << certificate_report(cert);
    return cert.certified() ? 0 : 2;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const RunOverrides& ov, std::ostream& out) {
    auto wall_start = std::chrono::steady_clock::now();
    Config c;
    std::string text;
    try {
        c = parse_config(config_path);
        text = effective_config_text(c, ov);
        c = parse_config_text(text);  // re-parse so overrides take effect
    } catch (const error& e) {
        out << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        fs::create_directories(out_dir);
    } catch (const std::exception& e) {
        out << "error: cannot create output directory: " << e.what() << "\n";
        return 1;
    }
    fs::path dir(out_dir);

    DissipativityCertificate cert = certify(c.params);
    if (!cert.certified())
        out << "warning: parameters are not certified dissipative\n";

    Trajectory traj;
    try {
        write_text_file((dir / "config.txt").string(), text);
        State s0 = make_initial(c.grid, c.initial);
        s0 = project_initial_data(s0.d, s0.layer, s0.v, c.solver.n_galerkin);
        traj = run(s0, c.solver, c.params);
    } catch (const blowup_error& e) {
        out << "error: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        out << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        std::vector<std::string> files{"config.txt", "energy.csv",
                                       "dissipation.csv", "residuals.csv",
                                       "ledger.csv"};
        write_text_file((dir / "energy.csv").string(), energy_csv(traj));
        write_text_file((dir / "dissipation.csv").string(),
                        dissipation_csv(traj));
        write_text_file((dir / "residuals.csv").string(),
                        residuals_csv(traj, c.params));
        write_text_file((dir / "ledger.csv").string(),
                        ledger_csv(traj, c.params));
        for (std::size_t i = 0; i < traj.snaps.size(); ++i) {
            const State& s = traj.snaps[i].state;
            std::string fd = snap_name(i, "d");
            std::string fp = snap_name(i, "psi");
            std::string fv = snap_name(i, "v");
            dump_field((dir / fd).string(), s.d);
            dump_field((dir / fp).string(), s.layer.psi);
            dump_field((dir / fv).string(), s.v);
            files.push_back(fd);
            files.push_back(fp);
            files.push_back(fv);
        }

        double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          wall_start)
                .count();
        std::ostringstream m;
        char hash[24];
        std::snprintf(hash, sizeof hash, "%016llx",
                      (unsigned long long)fnv1a(text));
        m << "format = smectic-run-1\n"
          << "code_version = 0.1.0\n"
          << "config_hash = " << hash << "\n"
          << "seed = " << c.initial.seed << "\n"
          << "preset = " << c.initial.preset << "\n"
          << "grid = " << c.grid.n[0] << " " << c.grid.n[1] << " "
          << c.grid.n[2] << "\n"
          << "box = " << format_g17(c.grid.box[0]) << " "
          << format_g17(c.grid.box[1]) << " " << format_g17(c.grid.box[2])
          << "\n"
          << "pitch = " << format_g17(c.initial.pitch[0]) << " "
          << format_g17(c.initial.pitch[1]) << " "
          << format_g17(c.initial.pitch[2]) << "\n"
          << "scheme = "
          << (c.solver.scheme == Scheme::ImexEuler ? "euler" : "rk2") << "\n"
          << "dt = " << format_g17(c.solver.dt) << "\n"
          << "t_end = " << format_g17(c.solver.t_end) << "\n"
          << "n_galerkin = " << c.solver.n_galerkin << "\n"
          << "snapshot_stride = " << c.solver.snapshot_stride << "\n"
          << "snapshots = " << traj.snaps.size() << "\n"
          << "certified = " << (cert.certified() ? "yes" : "no") << "\n"
          << params_echo(c.params)
          << "wall_clock_seconds = " << format_g17(wall) << "\n";
        for (const std::string& f : files) m << "file = " << f << "\n";
        write_text_file((dir / "manifest.txt").string(), m.str());
    } catch (const error& e) {
        out << "error: " << e.what() << "\n";
        return 1;
    }
    out << "run complete: " << traj.snaps.size() << " snapshots in " << out_dir
        << "\n";
    return 0;
}

int cmd_audit(const std::string& out_dir, std::ostream& out) {
    fs::path dir(out_dir);
    Manifest man;
    Config c;
    std::vector<std::vector<double>> energy_rows;
    std::size_t nsnap = 0;
    try {
        man = parse_manifest(read_text_file((dir / "manifest.txt").string()));
        c = parse_config_text(read_text_file((dir / "config.txt").string()));
        energy_rows =
            parse_csv_numbers(read_text_file((dir / "energy.csv").string()));
        nsnap = std::size_t(man.num("snapshots"));
        if (nsnap == 0 || energy_rows.size() != nsnap)
            throw io_error("snapshot count does not match energy.csv");
    } catch (const std::exception& e) {
        out << "error: unusable run directory: " << e.what() << "\n";
        return 1;
    }

    std::array<double, 3> pitch{};
    {
        auto it = man.kv.find("pitch");
        if (it == man.kv.end()) {
            out << "error: unusable run directory: manifest has no pitch\n";
            return 1;
        }
        std::istringstream ps(it->second);
        if (!(ps >> pitch[0] >> pitch[1] >> pitch[2])) {
            out << "error: unusable run directory: malformed pitch\n";
            return 1;
        }
    }

    int failures = 0;
    auto fail = [&](const std::string& what, double relative, double tol) {
        out << "[FAIL] " << what << ": relative " << format_g17(relative)
            << " exceeds " << format_g17(tol) << "\n";
        ++failures;
    };

    Trajectory traj;
    traj.dt = c.solver.dt;
    traj.scheme = c.solver.scheme;
    try {
        for (std::size_t i = 0; i < nsnap; ++i) {
            State s;
            s.d = std::get<SpectralVectorField>(read_field(
                (dir / snap_name(i, "d")).string(), c.grid.pad_factor));
            s.layer.pitch = pitch;
            s.layer.psi = std::get<SpectralScalarField>(read_field(
                (dir / snap_name(i, "psi")).string(), c.grid.pad_factor));
            s.v = std::get<SpectralVectorField>(read_field(
                (dir / snap_name(i, "v")).string(), c.grid.pad_factor));
            s.t = energy_rows[i].at(0);

            Snapshot sn;
            sn.energy = free_energy(s, c.params);
            double kin = kinetic_energy(s);

            double f_ref = energy_rows[i].at(8);
            double k_ref = energy_rows[i].at(9);
            double scale = std::max({1.0, std::abs(f_ref), std::abs(k_ref)});
            double df = std::abs(sn.energy.total - f_ref) / scale;
            double dk = std::abs(kin - k_ref) / scale;
            if (!(df <= 1e-8) || !(dk <= 1e-8))  // NaN-safe
                fail("energy recompute (snapshot " + std::to_string(i) + ")",
                     std::max(df, dk), 1e-8);

            CoercivityResult co = coercivity_check(s, c.params);
            if (!co.pass)
                fail("coercivity (snapshot " + std::to_string(i) + ")",
                     co.margin, 0.0);

            ResidualReport canc = cancellation_residual(s, c.params);
            if (!(canc.relative <= 1e-6))
                fail("cancellation identity (snapshot " + std::to_string(i) +
                         ")",
                     canc.relative, 1e-6);
            ResidualReport adv = advection_residual(s, c.params);
            if (!(adv.relative <= 1e-6))
                fail("advection neutrality (snapshot " + std::to_string(i) +
                         ")",
                     adv.relative, 1e-6);

            sn.state = std::move(s);
            traj.snaps.push_back(std::move(sn));
        }
    } catch (const std::exception& e) {
        out << "[FAIL] field reconstruction: " << e.what() << "\n";
        return 2;
    }

    if (traj.snaps.size() >= 3) {
        ResidualReport cr = chain_rule_residual(traj, c.params);
        if (!(cr.relative <= 0.1))
            fail("chain rule identity", cr.relative, 0.1);
    }

    if (failures > 0) {
        out << "audit failed: " << failures << " check(s) out of tolerance\n";
        return 2;
    }
    out << "audit passed: " << nsnap << " snapshots verified\n";
    return 0;
}

} // namespace smectic
