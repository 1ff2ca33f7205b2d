#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kfgm/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"kfgm: Klein-Fock-Gordon-Majorana particles on an interval"};
    app.require_subcommand(1);

    auto* bc = app.add_subcommand("bc", "boundary-condition presets");
    bc->require_subcommand(1);
    bc->add_subcommand("list", "list the nine presets");
    std::string show_name;
    auto* bc_show = bc->add_subcommand("show", "show one preset");
    bc_show->add_option("name", show_name, "preset name")->required();

    std::string config_path, out_dir = ".";
    auto add_config = [&](CLI::App* cmd, bool with_out) {
        cmd->add_option("--config", config_path, "JSON run configuration")->required();
        if (with_out) cmd->add_option("--out", out_dir, "output directory");
    };
    add_config(app.add_subcommand("spectrum", "stationary modes to spectrum.csv"), true);
    add_config(app.add_subcommand("evolve", "time evolution to observables.csv"), true);
    add_config(app.add_subcommand("check", "run the invariant suite"), false);
    add_config(app.add_subcommand("nonrel", "nonrelativistic-limit ladder"), true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (bc->parsed()) {
            if (bc->get_subcommand("list")->parsed()) {
                kfgm::cmd_bc_list(std::cout);
            } else {
                kfgm::cmd_bc_show(show_name, std::cout);
            }
            return kfgm::kExitOk;
        }
        const kfgm::RunConfig cfg = kfgm::load_run_config(config_path);
        if (app.get_subcommand("spectrum")->parsed()) {
            kfgm::cmd_spectrum(cfg, out_dir);
        } else if (app.get_subcommand("evolve")->parsed()) {
            kfgm::cmd_evolve(cfg, out_dir);
        } else if (app.get_subcommand("check")->parsed()) {
            if (!kfgm::cmd_check(cfg, std::cout)) return kfgm::kExitNumericalError;
        } else if (app.get_subcommand("nonrel")->parsed()) {
            kfgm::cmd_nonrel(cfg, out_dir);
        }
        return kfgm::kExitOk;
    } catch (const kfgm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kfgm::kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kfgm::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kfgm::kExitNumericalError;
    }
}
