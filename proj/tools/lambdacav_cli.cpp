// Command-line frontend: load a JSON run configuration, dispatch the
// requested computation and emit the data file.
//
// Exit codes: 0 success, 1 configuration error, 2 compute error.

#include <chrono>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lambdacav/config.hpp"
#include "lambdacav/dynamics.hpp"
#include "lambdacav/eigenstructure.hpp"
#include "lambdacav/io.hpp"
#include "lambdacav/liouvillian.hpp"
#include "lambdacav/steadystate.hpp"
#include "lambdacav/sweep.hpp"

namespace lc = lambdacav;

namespace {

struct CliOverrides {
    std::string config_path;
    std::string out;
    std::string format;
    int workers = 0;
    int nmax = 0;
};

lc::RunConfig load_config(const CliOverrides& cli, lc::RunMode mode) {
    lc::RunConfig config;
    if (!cli.config_path.empty()) {
        config = lc::parse_config(cli.config_path, mode);
    } else {
        config.mode = mode;
        if (mode == lc::RunMode::magic) config.delta_p_grid = lc::Grid{-20.0, 0.0, 0.05};
    }
    if (!cli.out.empty()) config.out = cli.out;
    if (!cli.format.empty()) {
        if (cli.format == "csv")
            config.format = lc::OutputFormat::csv;
        else if (cli.format == "jsonl")
            config.format = lc::OutputFormat::jsonl;
        else
            throw lc::ConfigError("--format must be csv or jsonl");
    }
    if (cli.workers > 0) config.workers = cli.workers;
    if (cli.nmax > 0) config.params.n_max = cli.nmax;
    config.validate();
    return config;
}

std::size_t run_mode(const lc::RunConfig& config) {
    using lc::OutputFormat;
    const auto& p = config.params;

    switch (config.mode) {
        case lc::RunMode::eigen: {
            std::vector<int> sectors(std::size_t(config.sectors));
            for (int n = 1; n <= config.sectors; ++n) sectors[std::size_t(n - 1)] = n;
            const auto rows =
                lc::ladder_scan(p.g, p.delta_L, config.omega_L_grid.points(), sectors);
            lc::atomic_write(config.out, config.format == OutputFormat::csv ? lc::to_csv(rows)
                                                                            : lc::to_jsonl(rows));
            return rows.size();
        }
        case lc::RunMode::steady: {
            lc::SteadyPointSolver solver(p);
            const auto rec = lc::detail::sweep_point(solver, p, p.delta_p, p.omega_L);
            const std::vector<lc::SweepRecord> rows{rec};
            lc::atomic_write(config.out, config.format == OutputFormat::csv ? lc::to_csv(rows)
                                                                            : lc::to_jsonl(rows));
            return 1;
        }
        case lc::RunMode::sweep1d: {
            const auto rows = lc::sweep_1d(p, config.delta_p_grid, config.workers);
            lc::atomic_write(config.out, config.format == OutputFormat::csv ? lc::to_csv(rows)
                                                                            : lc::to_jsonl(rows));
            return rows.size();
        }
        case lc::RunMode::sweep2d: {
            const auto rows =
                lc::sweep_2d(p, config.delta_p_grid, config.omega_L_grid, config.workers);
            lc::atomic_write(config.out, config.format == OutputFormat::csv ? lc::to_csv(rows)
                                                                            : lc::to_jsonl(rows));
            return rows.size();
        }
        case lc::RunMode::magic: {
            const auto magic = lc::find_magic(p, config.omega_L_grid, config.delta_p_grid,
                                              config.photon_floor, config.workers);
            lc::atomic_write(config.out, lc::to_json(magic));
            return 1;
        }
        case lc::RunMode::g2tau: {
            const lc::LambdaOperators ops{lc::FockTruncation(p.n_max)};
            const lc::Superoperator L = lc::assemble_liouvillian(p, ops);
            const lc::DensityMatrix rho = lc::solve_steady(L);
            const auto points = lc::g2_tau(rho, L, config.tau_grid.expand(), ops);
            lc::atomic_write(config.out, config.format == OutputFormat::csv
                                             ? lc::to_csv(points)
                                             : lc::to_jsonl(points));
            return points.size();
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven Lambda-atom cavity QED steady states, spectra and photon statistics"};
    app.require_subcommand(1);

    CliOverrides cli;
    std::optional<lc::RunMode> mode;
    for (lc::RunMode m : {lc::RunMode::eigen, lc::RunMode::steady, lc::RunMode::sweep1d,
                          lc::RunMode::sweep2d, lc::RunMode::magic, lc::RunMode::g2tau}) {
        auto* sub = app.add_subcommand(lc::to_string(m), "run mode " + lc::to_string(m));
        sub->callback([&mode, m] { mode = m; });
    }
    app.add_option("--config", cli.config_path, "JSON configuration file")
        ->check(CLI::ExistingFile);
    app.add_option("--out", cli.out, "output file path");
    app.add_option("--format", cli.format, "output format: csv or jsonl");
    app.add_option("--workers", cli.workers, "number of worker threads");
    app.add_option("--nmax", cli.nmax, "override the Fock truncation");

    CLI11_PARSE(app, argc, argv);

    try {
        const lc::RunConfig config = load_config(cli, *mode);
        for (const auto& w : config.params.warnings()) std::cerr << "warning: " << w << "\n";

        const auto t0 = std::chrono::steady_clock::now();
        const std::size_t points = run_mode(config);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("mode=%s points=%zu wall=%.2fs out=%s\n", lc::to_string(config.mode).c_str(),
                    points, wall, config.out.c_str());
        return 0;
    } catch (const lc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
