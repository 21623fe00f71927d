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


#include <catch2/catch_amalgamated.hpp>

#include "fas_lcr/error.hpp"
#include "fas_lcr/harness.hpp"
#include "fas_lcr/lcr_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace fas;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    SweepSpec analytic_spec(std::vector<std::size_t> n, std::vector<double> w, std::vector<double> x,
                            std::vector<Method> m)
    {
        SweepSpec s;
        s.thresholds = {std::move(x), false};
        s.n_list = std::move(n);
        s.w_list = std::move(w);
        s.methods = std::move(m);
        return s;
    }

    std::string csv_of(const std::vector<ResultRow> &rows)
    {
        std::ostringstream os;
        emit_csv(rows, os);
        return os.str();
    }

    std::string temp_path(const std::string &name)
    {
        return (std::filesystem::temp_directory_path() / ("fas_lcr_test_" + name)).string();
    }

    template <typename F>
    std::string config_error_message(F &&f)
    {
        try
        {
            f();
        }
        catch (const ConfigError &e)
        {
            return e.what();
        }
        return "<no ConfigError>";
    }

    bool unimodal(const std::vector<double> &v)
    {
        std::size_t i = 0;
        while (i + 1 < v.size() && v[i + 1] > v[i])
            ++i;
        const std::size_t peak = i;
        while (i + 1 < v.size() && v[i + 1] < v[i])
            ++i;
        return i + 1 == v.size() && peak > 0 && peak + 1 < v.size();
    }
}

TEST_CASE("Method names")
{
    for (Method m : {Method::theorem1, Method::iid, Method::identical, Method::two_port_series, Method::monte_carlo})
        CHECK(parse_method(to_string(m)) == m);
    CHECK_THROWS_AS(parse_method("bessel"), ConfigError);
    CHECK(is_analytic(Method::iid));
    CHECK_FALSE(is_analytic(Method::monte_carlo));
}

TEST_CASE("run_sweep - single port closed forms coincide")
{
    const FasConfig base{1, 0.0, 1.0, 1.0};
    const auto rows = run_sweep(analytic_spec({1}, {0.1}, {1.0 / std::sqrt(2.0)}, {Method::iid, Method::identical}), base);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].method == Method::iid);
    CHECK(rows[1].method == Method::identical);
    const double peak = std::sqrt(2.0 * std::numbers::pi) / std::sqrt(2.0) * std::exp(-0.5);
    CHECK_THAT(rows[0].nlcr, WithinRel(peak, 1e-14));
    CHECK_THAT(rows[1].nlcr, WithinRel(rows[0].nlcr, 1e-14));
    CHECK_THAT(rows[0].nlcr, WithinAbs(1.075, 5e-4));
    CHECK_FALSE(rows[0].mc_crossings);
    CHECK_FALSE(rows[0].mc_duration);
}

TEST_CASE("run_sweep - row order and normalization")
{
    const FasConfig base{1, 0.0, 2.0, 4.0};
    auto spec = analytic_spec({3, 2}, {0.3, 0.1}, {0.5, 1.5},
                              {Method::identical, Method::theorem1, Method::identical, Method::iid});
    const auto rows = run_sweep(spec, base);
    REQUIRE(rows.size() == 2 * 2 * 2 * 3);
    std::size_t i = 0;
    for (std::size_t n : {3u, 2u})
        for (double w : {0.3, 0.1})
            for (double x : {0.5, 1.5})
                for (Method m : {Method::theorem1, Method::iid, Method::identical})
                {
                    const auto &r = rows[i++];
                    CHECK(r.n == n);
                    CHECK(r.w == w);
                    CHECK(r.threshold_linear == x);
                    CHECK(r.method == m);
                    CHECK(r.nlcr == r.raw_rate / base.f_doppler);
                    CHECK_THAT(r.threshold_db, WithinAbs(20.0 * std::log10(x / std::sqrt(2.0)), 1e-12));
                }
    const FasConfig cfg{3, 0.3, 2.0, 4.0};
    CHECK(rows[0].raw_rate == lcr_theorem1(cfg, correlation_profile(cfg), 0.5));
}

TEST_CASE("run_sweep - dB thresholds")
{
    const FasConfig base{1, 0.0, 4.0, 1.0};
    SweepSpec spec = analytic_spec({1}, {0.0}, {-10.0, 0.0, 3.0}, {Method::identical});
    spec.thresholds.in_db = true;
    const auto rows = run_sweep(spec, base);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].threshold_linear == 2.0);
    CHECK(rows[0].threshold_db == -10.0);
    CHECK_THAT(rows[0].threshold_linear, WithinRel(2.0 / std::sqrt(10.0), 1e-15));
}

TEST_CASE("run_sweep - per-N curves are unimodal in the threshold")
{
    std::vector<double> x;
    for (int i = 0; i < 20; ++i)
        x.push_back(0.05 + (3.0 - 0.05) * i / 19.0);
    const auto rows = run_sweep(analytic_spec({2, 3, 4}, {0.1}, x, {Method::theorem1}), {1, 0.0, 1.0, 1.0});
    for (std::size_t k = 0; k < 3; ++k)
    {
        std::vector<double> curve;
        for (std::size_t t = 0; t < x.size(); ++t)
            curve.push_back(rows[k * x.size() + t].nlcr);
        CHECK(unimodal(curve));
    }
}

TEST_CASE("run_sweep - NLCR trends in N and W below the peak")
{
    std::vector<std::size_t> n;
    for (std::size_t k = 2; k <= 16; ++k)
        n.push_back(k);
    const std::vector<double> w{0.1, 0.2, 0.3};
    const auto rows = run_sweep(analytic_spec(n, w, {0.3}, {Method::theorem1}), {1, 0.0, 1.0, 1.0});
    auto at = [&](std::size_t ni, std::size_t wi) { return rows[ni * w.size() + wi].nlcr; };
    for (std::size_t wi = 0; wi < w.size(); ++wi)
        for (std::size_t ni = 0; ni + 1 < n.size(); ++ni)
            CHECK(at(ni + 1, wi) <= at(ni, wi));
    for (std::size_t ni = 0; ni < n.size(); ++ni)
        for (std::size_t wi = 0; wi + 1 < w.size(); ++wi)
            CHECK(at(ni, wi + 1) < at(ni, wi));
}

TEST_CASE("run_sweep - invalid specs name the field")
{
    const FasConfig base{1, 0.0, 1.0, 1.0};
    CHECK_THAT(config_error_message([&] { run_sweep(analytic_spec({2}, {0.1}, {}, {Method::iid}), base); }),
               ContainsSubstring("thresholds"));
    CHECK_THAT(config_error_message([&] { run_sweep(analytic_spec({2}, {0.1}, {-1.0}, {Method::iid}), base); }),
               ContainsSubstring("thresholds"));
    CHECK_THAT(config_error_message([&] { run_sweep(analytic_spec({}, {0.1}, {1.0}, {Method::iid}), base); }),
               ContainsSubstring("n"));
    CHECK_THAT(config_error_message([&] { run_sweep(analytic_spec({2}, {-0.1}, {1.0}, {Method::iid}), base); }),
               ContainsSubstring("w"));
    CHECK_THAT(config_error_message([&] { run_sweep(analytic_spec({2}, {0.1}, {1.0}, {}), base); }),
               ContainsSubstring("method"));
    CHECK_THAT(config_error_message(
                   [&] { run_sweep(analytic_spec({2, 3}, {0.1}, {1.0}, {Method::two_port_series}), base); }),
               ContainsSubstring("two_port_series"));
    CHECK_THAT(config_error_message([&] { run_sweep(analytic_spec({2}, {0.1}, {1.0}, {Method::monte_carlo}), base); }),
               ContainsSubstring("sim"));

    auto spec = analytic_spec({2}, {0.1}, {1.0}, {Method::monte_carlo});
    spec.sim = make_sim_params(base, 10.0, 1);
    CHECK_THAT(config_error_message([&] { run_sweep(spec, base); }), ContainsSubstring("sim"));
}

TEST_CASE("run_sweep - two-port series agrees with theorem1")
{
    const auto rows = run_sweep(analytic_spec({2}, {0.1, 0.3}, {0.2, 1.0, 2.5}, {Method::theorem1, Method::two_port_series}),
                                {1, 0.0, 1.0, 1.0});
    for (std::size_t i = 0; i < rows.size(); i += 2)
        CHECK_THAT(rows[i + 1].nlcr, WithinRel(rows[i].nlcr, 1e-8));
}

TEST_CASE("run_sweep - Monte-Carlo rows are deterministic")
{
    const FasConfig base{1, 0.0, 1.0, 2.0};
    auto spec = analytic_spec({2, 3}, {0.2}, {0.4, 1.0}, {Method::monte_carlo, Method::theorem1});
    spec.sim = make_sim_params(base, 300.0, 99);
    spec.threads = 1;
    const auto a = run_sweep(spec, base);
    spec.threads = 4;
    const auto b = run_sweep(spec, base);
    CHECK(csv_of(a) == csv_of(b));

    REQUIRE(a.size() == 8);
    const auto &mc = a[1];
    CHECK(mc.method == Method::monte_carlo);
    REQUIRE(mc.mc_crossings);
    REQUIRE(mc.mc_duration);
    CHECK(*mc.mc_duration == 150.0);
    CHECK(mc.raw_rate == static_cast<double>(*mc.mc_crossings) / 150.0);
    CHECK(mc.nlcr == mc.raw_rate / 2.0);

    spec.sim->seed = 100;
    CHECK(csv_of(run_sweep(spec, base)) != csv_of(a));
}

TEST_CASE("compare_methods - summaries")
{
    SECTION("identical analytic rows give zero error")
    {
        const auto rows = run_sweep(analytic_spec({1}, {0.1}, {0.3, 0.7, 1.2}, {Method::iid, Method::identical}),
                                    {1, 0.0, 1.0, 1.0});
        const auto s = compare_methods(rows, Method::iid, Method::identical);
        CHECK(s.n_gated == 3);
        CHECK(s.median_rel_error < 1e-14);
        CHECK(s.max_rel_error < 1e-14);
        CHECK(s.within(0.0));
    }

    SECTION("hand-built rows")
    {
        auto row = [](double x, Method m, double v)
        {
            ResultRow r;
            r.n = 2;
            r.w = 0.1;
            r.threshold_linear = x;
            r.method = m;
            r.nlcr = r.raw_rate = v;
            return r;
        };
        const std::vector<ResultRow> rows = {
            row(1, Method::theorem1, 1.0),  row(1, Method::monte_carlo, 1.1),
            row(2, Method::theorem1, 0.5),  row(2, Method::monte_carlo, 0.49),
            row(3, Method::theorem1, 0.2),  row(3, Method::monte_carlo, 0.26),
            row(4, Method::theorem1, 0.25), row(4, Method::monte_carlo, 0.25),
            row(5, Method::theorem1, 0.01), row(5, Method::monte_carlo, 0.05)};
        const auto s = compare_methods(rows);
        REQUIRE(s.points.size() == 5);
        CHECK(s.n_gated == 4);
        CHECK_FALSE(s.points[4].gated);
        CHECK_THAT(s.points[4].rel_error, WithinRel(4.0, 1e-12));
        // gated errors 0.1, 0.02, 0.3, 0
        CHECK_THAT(s.median_rel_error, WithinRel(0.06, 1e-12));
        CHECK_THAT(s.max_rel_error, WithinRel(0.3, 1e-12));
        CHECK(s.within(0.0601));
        CHECK_FALSE(s.within(0.0599));
    }

    SECTION("mismatched grids")
    {
        const FasConfig base{1, 0.0, 1.0, 1.0};
        auto a = run_sweep(analytic_spec({2}, {0.1}, {0.5, 1.0}, {Method::theorem1}), base);
        const auto b = run_sweep(analytic_spec({2}, {0.3}, {0.5, 1.0}, {Method::iid}), base);
        a.insert(a.end(), b.begin(), b.end());
        CHECK_THROWS_AS(compare_methods(a, Method::theorem1, Method::iid), ConfigError);
        CHECK_THROWS_AS(compare_methods(b, Method::theorem1, Method::iid), ConfigError);
        CHECK_THROWS_AS(compare_methods(b, Method::iid, Method::iid), ConfigError);
    }

    SECTION("no point above the gate")
    {
        const auto rows = run_sweep(analytic_spec({1}, {0.1}, {4.0}, {Method::iid, Method::identical}),
                                    {1, 0.0, 1.0, 1.0});
        CHECK_THROWS_AS(compare_methods(rows, Method::iid, Method::identical), ConfigError);
    }
}

TEST_CASE("compare_methods - Monte-Carlo against theorem1")
{
    const FasConfig base{1, 0.0, 1.0, 1.0};
    std::vector<double> x;
    for (int i = 0; i < 10; ++i)
        x.push_back(0.1 + 0.25 * i);
    auto spec = analytic_spec({2}, {0.1}, x, {Method::theorem1, Method::monte_carlo});
    spec.sim = make_sim_params(base, 1e4, 5);
    const auto s = compare_methods(run_sweep(spec, base));
    CHECK(s.n_gated >= 6);
    CHECK(s.median_rel_error <= 0.05);
}

TEST_CASE("emit_csv - format")
{
    CHECK(csv_of({}) == std::string(csv_header) + "\n");

    ResultRow r;
    r.n = 1;
    r.w = 0.1;
    r.threshold_linear = 0.5;
    r.threshold_db = -6.020599913279624;
    r.method = Method::iid;
    r.nlcr = 0.1;
    r.raw_rate = 0.2;
    CHECK(csv_of({r}) == std::string(csv_header) + "\n1,0.1,0.5,-6.020599913279624,iid,0.1,0.2,,\n");

    r.method = Method::monte_carlo;
    r.mc_crossings = 42;
    r.mc_duration = 1e4;
    CHECK(csv_of({r}) == std::string(csv_header) + "\n1,0.1,0.5,-6.020599913279624,monte_carlo,0.1,0.2,42,10000\n");
}

TEST_CASE("emit_csv - round trip")
{
    SECTION("single row")
    {
        const auto rows = run_sweep(analytic_spec({1}, {0.1}, {0.7}, {Method::theorem1}), {1, 0.0, 1.0, 1.0});
        std::istringstream in(csv_of(rows));
        CHECK(parse_csv(in) == rows);
    }

    SECTION("randomized rows")
    {
        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> mant(-1.0, 1.0);
        std::uniform_int_distribution<int> expo(-300, 300);
        std::uniform_int_distribution<int> pick(0, 4);
        auto real = [&] { return std::ldexp(mant(rng), expo(rng) / 10); };
        for (int trial = 0; trial < 20; ++trial)
        {
            std::vector<ResultRow> rows(trial);
            for (auto &r : rows)
            {
                r.n = static_cast<std::size_t>(pick(rng) + 1);
                r.w = std::abs(real());
                r.threshold_linear = std::abs(real());
                r.threshold_db = real();
                r.method = static_cast<Method>(pick(rng));
                r.nlcr = std::abs(real());
                r.raw_rate = std::abs(real());
                if (r.method == Method::monte_carlo)
                {
                    r.mc_crossings = rng() >> pick(rng);
                    r.mc_duration = std::abs(real());
                }
            }
            const std::string text = csv_of(rows);
            CHECK(text.find('\r') == std::string::npos);
            std::istringstream in(text);
            CHECK(parse_csv(in) == rows);
        }
    }

    SECTION("files")
    {
        const auto rows = run_sweep(analytic_spec({2}, {0.1}, {0.3, 0.9}, {Method::iid}), {1, 0.0, 1.0, 1.0});
        const auto path = temp_path("roundtrip.csv");
        emit_csv(rows, path);
        CHECK(read_csv(path) == rows);
        std::filesystem::remove(path);
    }
}

TEST_CASE("emit_csv - errors")
{
    try
    {
        emit_csv({}, std::string("/nonexistent-dir/out.csv"));
        FAIL("expected IoError");
    }
    catch (const IoError &e)
    {
        CHECK(e.path() == "/nonexistent-dir/out.csv");
    }
    CHECK_THROWS_AS(read_csv("/nonexistent-dir/in.csv"), IoError);

    std::istringstream bad_header("n,w\n");
    CHECK_THROWS_AS(parse_csv(bad_header), ConfigError);
    std::istringstream short_row(std::string(csv_header) + "\n1,0.1,0.5\n");
    CHECK_THROWS_AS(parse_csv(short_row), ConfigError);
    std::istringstream bad_number(std::string(csv_header) + "\n1,x,0.5,0,iid,1,1,,\n");
    CHECK_THROWS_AS(parse_csv(bad_number), ConfigError);
}

TEST_CASE("thresholds - dB round trip")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> db(-40.0, 20.0), sigma(0.1, 10.0);
    for (int i = 0; i < 1000; ++i)
    {
        const double s = sigma(rng), d = db(rng);
        CHECK_THAT(threshold_to_db(s, threshold_from_db(s, d)), WithinAbs(d, 1e-12));
    }
    CHECK(threshold_from_db(2.0, 0.0) == 2.0);
    CHECK_THAT(threshold_from_db(1.0, 20.0), WithinRel(10.0, 1e-15));
}

TEST_CASE("list parsing")
{
    CHECK(parse_real_list("0:1:5") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(parse_real_list("2:9:1") == std::vector<double>{2.0});
    CHECK(parse_real_list("0.5, 1e-3,-2") == std::vector<double>{0.5, 1e-3, -2.0});
    CHECK(parse_count_list("2:5") == std::vector<std::size_t>{2, 3, 4, 5});
    CHECK(parse_count_list("1,4,16") == std::vector<std::size_t>{1, 4, 16});
    CHECK_THROWS_AS(parse_real_list("1:2"), ConfigError);
    CHECK_THROWS_AS(parse_real_list("0:1:0"), ConfigError);
    CHECK_THROWS_AS(parse_real_list("a"), ConfigError);
    CHECK_THROWS_AS(parse_count_list("5:2"), ConfigError);
    CHECK_THROWS_AS(parse_count_list("1.5"), ConfigError);
}

TEST_CASE("RunConfig - keys and config files")
{
    RunConfig cfg;
    cfg.set("n", "2:4");
    cfg.set("w", "0.1,0.3");
    cfg.set("thresholds-db", "-10:0:3");
    cfg.set("method", "theorem1, monte_carlo");
    cfg.set("fd", "10");
    cfg.set("duration-cycles", "200");
    cfg.set("sample-rate-mult", "32");
    cfg.set("seed", "9");
    CHECK(cfg.n_list == std::vector<std::size_t>{2, 3, 4});
    CHECK(cfg.thresholds.in_db);
    const auto spec = cfg.sweep_spec();
    REQUIRE(spec.sim);
    CHECK(spec.sim->sample_rate == 320.0);
    CHECK(spec.sim->duration == 20.0);
    CHECK(spec.sim->seed == 9);
    CHECK_NOTHROW(spec.validate(cfg.base));

    CHECK_THAT(config_error_message([&] { cfg.set("colour", "red"); }), ContainsSubstring("colour"));
    CHECK_THAT(config_error_message([&] { cfg.set("sigma2", "big"); }), ContainsSubstring("sigma2"));

    const auto path = temp_path("run.cfg");
    {
        std::ofstream f(path);
        f << "# port sweep\n\nn = 2:16   # ports\nw=0.2\nthresholds = 0.3\nmethod = iid\n";
    }
    RunConfig from_file;
    load_config_file(from_file, path);
    CHECK(from_file.n_list.size() == 15);
    CHECK(from_file.w_list == std::vector<double>{0.2});
    CHECK(from_file.methods == std::vector<Method>{Method::iid});
    CHECK_FALSE(from_file.sweep_spec().sim);
    {
        std::ofstream f(path);
        f << "n = 2\nw 0.1\n";
    }
    CHECK_THAT(config_error_message([&] { load_config_file(from_file, path); }), ContainsSubstring(":2:"));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_config_file(from_file, "/nonexistent-dir/x.cfg"), IoError);
}
