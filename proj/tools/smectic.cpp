#include "smectic/driver.hpp"
#include "smectic/parallel.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    smectic::init_threads();

    CLI::App app{"smectic-A liquid crystal flow simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    smectic::RunOverrides ov;
    double dt = 0.0, t_end = 0.0;
    std::string preset;
    unsigned long seed = 0;

    CLI::App* certify = app.add_subcommand(
        "certify", "check the dissipativity certificate of a config");
    certify->add_option("--config", config_path, "config file")->required();

    CLI::App* run =
        app.add_subcommand("run", "integrate and write a run directory");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    CLI::Option* o_dt = run->add_option("--dt", dt, "override solver.dt");
    CLI::Option* o_te =
        run->add_option("--t-end", t_end, "override solver.t_end");
    CLI::Option* o_pr =
        run->add_option("--preset", preset, "override initial.preset");
    CLI::Option* o_sd = run->add_option("--seed", seed, "override initial.seed");

    CLI::App* audit =
        app.add_subcommand("audit", "re-verify a completed run directory");
    audit->add_option("--out", out_dir, "run directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (certify->parsed()) return smectic::cmd_certify(config_path, std::cout);
        if (run->parsed()) {
            if (*o_dt) ov.dt = dt;
            if (*o_te) ov.t_end = t_end;
            if (*o_pr) ov.preset = preset;
            if (*o_sd) ov.seed = seed;
            return smectic::cmd_run(config_path, out_dir, ov, std::cout);
        }
        return smectic::cmd_audit(out_dir, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
