// SPDX-License-Identifier: Apache-2.0
//
// fas-lcr: level crossing rate analysis for fluid antenna systems
// Copyright (C) 2026 The fas-lcr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "fas_lcr/error.hpp"
#include "fas_lcr/harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace
{
    enum Exit
    {
        exit_ok = 0,
        exit_tolerance = 1,
        exit_config = 2,
        exit_numeric = 3
    };

    struct Options
    {
        std::string config;
        std::string in;
        std::map<std::string, std::string> values;
    };

    // Applied in this order after the config file; later keys win for thresholds.
    const std::vector<std::string> option_keys = {
        "n",    "w",    "sigma2",          "fd",
        "thresholds", "thresholds-db", "method", "seed",
        "duration-cycles", "sample-rate-mult", "n-sinusoids", "threads",
        "tolerance", "out"};

    const std::map<std::string, std::string> option_help = {
        {"n", "Port counts: a,b,c or first:last"},
        {"w", "Apertures in wavelengths: a,b,c or start:stop:count"},
        {"sigma2", "Channel power"},
        {"fd", "Maximum Doppler frequency [Hz]"},
        {"thresholds", "Linear thresholds: a,b,c or start:stop:count"},
        {"thresholds-db", "Thresholds in dB relative to sigma: a,b,c or start:stop:count"},
        {"method", "Comma-separated: theorem1, iid, identical, two_port_series, monte_carlo"},
        {"seed", "Simulation seed"},
        {"duration-cycles", "Simulated duration times f_D"},
        {"sample-rate-mult", "Sample rate divided by f_D"},
        {"n-sinusoids", "Sinusoids per Gaussian process"},
        {"threads", "Worker threads, 0 for all cores"},
        {"tolerance", "Median relative error allowed by compare"},
        {"out", "Output CSV path (default: standard output)"}};

    CLI::App *add_command(CLI::App &app, const std::string &name, const std::string &about, Options &opt,
                          const std::vector<std::string> &keys)
    {
        auto *sub = app.add_subcommand(name, about);
        sub->add_option("--config", opt.config, "key = value file; flags override it");
        CLI::Option *lin = nullptr, *db = nullptr;
        for (const auto &k : keys)
        {
            auto *o = sub->add_option("--" + k, opt.values[k], option_help.at(k));
            if (k == "thresholds")
                lin = o;
            if (k == "thresholds-db")
                db = o;
        }
        if (lin && db)
            lin->excludes(db);
        return sub;
    }

    fas::RunConfig resolve(const CLI::App &sub, const Options &opt)
    {
        fas::RunConfig cfg;
        if (!opt.config.empty())
            fas::load_config_file(cfg, opt.config);
        for (const auto &k : option_keys)
            if (opt.values.count(k) && sub.count("--" + k) > 0)
                cfg.set(k, opt.values.at(k));
        return cfg;
    }

    void write_rows(const std::vector<fas::ResultRow> &rows, const std::string &out)
    {
        if (out.empty())
            fas::emit_csv(rows, std::cout);
        else
            fas::emit_csv(rows, out);
    }

    int run_compare(const fas::RunConfig &cfg, const std::string &in)
    {
        auto reference = fas::Method::theorem1;
        const auto it = std::find_if(cfg.methods.begin(), cfg.methods.end(), fas::is_analytic);
        if (it != cfg.methods.end())
            reference = *it;

        std::vector<fas::ResultRow> rows;
        if (!in.empty())
            rows = fas::read_csv(in);
        else
        {
            fas::RunConfig run = cfg;
            run.methods = {reference, fas::Method::monte_carlo};
            rows = fas::run_sweep(run.sweep_spec(), run.base);
            if (!cfg.out.empty())
                fas::emit_csv(rows, cfg.out);
        }

        const auto s = fas::compare_methods(rows, reference, fas::Method::monte_carlo);
        std::printf("n,w,threshold_linear,reference,candidate,rel_error,gated\n");
        for (const auto &p : s.points)
            std::printf("%zu,%.6g,%.6g,%.6g,%.6g,%.4g,%d\n", p.n, p.w, p.threshold_linear, p.reference, p.candidate,
                        p.rel_error, p.gated ? 1 : 0);
        const bool ok = s.within(cfg.tolerance);
        std::printf("# reference=%s gated_points=%zu median_rel_error=%.4g max_rel_error=%.4g tolerance=%.4g %s\n",
                    std::string(fas::to_string(reference)).c_str(), s.n_gated, s.median_rel_error, s.max_rel_error,
                    cfg.tolerance, ok ? "PASS" : "FAIL");
        return ok ? exit_ok : exit_tolerance;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Level crossing rates of N-port fluid antenna systems"};
    app.require_subcommand(1);

    const std::vector<std::string> grid = {"n", "w", "sigma2", "fd", "thresholds", "thresholds-db", "threads", "out"};
    const std::vector<std::string> sim = {"seed", "duration-cycles", "sample-rate-mult", "n-sinusoids"};
    auto with = [](std::vector<std::string> a, const std::vector<std::string> &b)
    {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };

    Options analytic_opt, simulate_opt, sweep_opt, compare_opt;
    auto *analytic = add_command(app, "analytic", "Evaluate analytic crossing rates", analytic_opt,
                                 with(grid, {"method"}));
    auto *simulate = add_command(app, "simulate", "Monte-Carlo crossing rates", simulate_opt, with(grid, sim));
    auto *sweep = add_command(app, "sweep", "Grid of methods to CSV", sweep_opt, with(with(grid, sim), {"method"}));
    auto *compare = add_command(app, "compare", "Monte-Carlo against an analytic method", compare_opt,
                                with(with(grid, sim), {"method", "tolerance"}));
    compare->add_option("--in", compare_opt.in, "Compare rows from an existing CSV instead of running");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_config;
    }

    try
    {
        if (analytic->parsed())
        {
            auto cfg = resolve(*analytic, analytic_opt);
            if (!std::all_of(cfg.methods.begin(), cfg.methods.end(), fas::is_analytic))
                throw fas::ConfigError("method: analytic accepts only analytic methods");
            write_rows(fas::run_sweep(cfg.sweep_spec(), cfg.base), cfg.out);
        }
        else if (simulate->parsed())
        {
            auto cfg = resolve(*simulate, simulate_opt);
            cfg.methods = {fas::Method::monte_carlo};
            write_rows(fas::run_sweep(cfg.sweep_spec(), cfg.base), cfg.out);
        }
        else if (sweep->parsed())
        {
            auto cfg = resolve(*sweep, sweep_opt);
            write_rows(fas::run_sweep(cfg.sweep_spec(), cfg.base), cfg.out);
        }
        else if (compare->parsed())
            return run_compare(resolve(*compare, compare_opt), compare_opt.in);
    }
    catch (const fas::AccuracyError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    }
    catch (const fas::IoError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const std::domain_error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    }
    return exit_ok;
}
