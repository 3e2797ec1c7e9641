#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "tau2/harness.hpp"

namespace {

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<ntw::i64> pmax;
    std::optional<int> threads;
    std::optional<std::string> out;
    std::optional<double> tol;
};

ntw::ExperimentConfig resolve(const Flags& f) {
    ntw::ExperimentConfig c;
    if (!f.config.empty()) c = ntw::load_config(f.config);
    ntw::apply_env_overrides(c);
    if (f.seed) c.seed = *f.seed;
    if (f.pmax) c.p_max = *f.pmax;
    if (f.threads) c.threads = *f.threads;
    if (f.out) c.out_dir = *f.out;
    if (f.tol) c.tolerance = *f.tol;
    c.validate();
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tau2cli: divisor-function experiments in arithmetic progressions"};
    app.require_subcommand(1);
    Flags flags;
    app.add_option("--config", flags.config, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--seed", flags.seed, "sampling seed");
    app.add_option("--pmax", flags.pmax, "largest prime for the identity suites");
    app.add_option("--threads", flags.threads, "OpenMP threads (0: default)");
    app.add_option("--out", flags.out, "output directory");
    app.add_option("--tol", flags.tol, "residual tolerance");

    using Cmd = int (*)(const ntw::ExperimentConfig&);
    const std::pair<const char*, Cmd> commands[] = {
        {"verify-identities", ntw::cmd_verify_identities},
        {"level-fit", ntw::cmd_level_fit},
        {"conjecture-probe", ntw::cmd_conjecture_probe},
        {"bilinear-partial", ntw::cmd_bilinear_partial},
        {"convexity", ntw::cmd_convexity},
        {"weil-scan", ntw::cmd_weil_scan},
        {"afe-check", ntw::cmd_afe_check},
    };
    Cmd selected = nullptr;
    for (auto& [name, fn] : commands) {
        auto* sub = app.add_subcommand(name);
        sub->callback([&selected, fn = fn] { selected = fn; });
    }
    app.fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : ntw::kUsageError;
    }

    try {
        auto cfg = resolve(flags);
        return selected(cfg);
    } catch (const ntw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ntw::kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ntw::kVerificationFailure;
    }
}
