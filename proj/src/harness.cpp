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


#include "fas_lcr/harness.hpp"
#include "fas_lcr/error.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <thread>
#include <tuple>

namespace fas
{
    namespace
    {
        constexpr Method all_methods[] = {Method::theorem1, Method::iid, Method::identical, Method::two_port_series,
                                          Method::monte_carlo};

        std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r\n");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r\n");
            return s.substr(first, last - first + 1);
        }

        std::vector<std::string_view> split(std::string_view s, char sep)
        {
            std::vector<std::string_view> out;
            std::size_t start = 0;
            for (;;)
            {
                const auto pos = s.find(sep, start);
                out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
                if (pos == std::string_view::npos)
                    return out;
                start = pos + 1;
            }
        }

        template <typename T>
        bool parse_number(std::string_view text, T &value)
        {
            text = trim(text);
            if (text.empty())
                return false;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            return ec == std::errc() && ptr == text.data() + text.size();
        }

        template <typename T>
        T require_number(std::string_view text, std::string_view what)
        {
            T value{};
            if (!parse_number(text, value))
                throw ConfigError(std::string(what) + ": cannot parse '" + std::string(trim(text)) + "'");
            return value;
        }

        std::string format_real(double v)
        {
            char buf[64];
            const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
            return std::string(buf, ptr);
        }

        std::vector<Method> canonical_methods(const std::vector<Method> &methods)
        {
            std::vector<Method> out;
            for (Method m : all_methods)
                if (std::find(methods.begin(), methods.end(), m) != methods.end())
                    out.push_back(m);
            return out;
        }

        double analytic_rate(Method m, const FasConfig &cfg, double x, const SweepSpec &spec)
        {
            switch (m)
            {
            case Method::theorem1:
                return lcr_theorem1(cfg, correlation_profile(cfg), x, spec.quad, spec.tol);
            case Method::iid:
                return lcr_iid(cfg, x);
            case Method::identical:
                return lcr_identical(cfg, x);
            case Method::two_port_series:
                return lcr_two_port_series(cfg, correlation_profile(cfg).mu.at(1), x, spec.series_tol);
            case Method::monte_carlo:
                break;
            }
            throw ConfigError("not an analytic method");
        }

        using GridKey = std::tuple<std::size_t, double, double>;

        std::string describe(const GridKey &k)
        {
            return "n=" + std::to_string(std::get<0>(k)) + " w=" + format_real(std::get<1>(k)) +
                   " threshold=" + format_real(std::get<2>(k));
        }
    }

    std::string_view to_string(Method m)
    {
        switch (m)
        {
        case Method::theorem1:
            return "theorem1";
        case Method::iid:
            return "iid";
        case Method::identical:
            return "identical";
        case Method::two_port_series:
            return "two_port_series";
        case Method::monte_carlo:
            return "monte_carlo";
        }
        return "unknown";
    }

    Method parse_method(std::string_view name)
    {
        name = trim(name);
        for (Method m : all_methods)
            if (to_string(m) == name)
                return m;
        throw ConfigError("method: unknown method '" + std::string(name) + "'");
    }

    bool is_analytic(Method m) { return m != Method::monte_carlo; }

    void SweepSpec::validate(const FasConfig &base) const
    {
        if (thresholds.values.empty())
            throw ConfigError("thresholds: grid is empty");
        for (double x : thresholds.values)
            if (!std::isfinite(x) || (!thresholds.in_db && x <= 0.0))
                throw ConfigError("thresholds: values must be finite" +
                                  std::string(thresholds.in_db ? "" : " and positive"));
        if (n_list.empty())
            throw ConfigError("n: list is empty");
        for (std::size_t n : n_list)
            if (n < 1)
                throw ConfigError("n: port counts must be >= 1");
        if (w_list.empty())
            throw ConfigError("w: list is empty");
        for (double w : w_list)
            if (!std::isfinite(w) || w < 0.0)
                throw ConfigError("w: apertures must be finite and >= 0");
        if (methods.empty())
            throw ConfigError("method: no method selected");

        const bool two_port = std::find(methods.begin(), methods.end(), Method::two_port_series) != methods.end();
        if (two_port && std::any_of(n_list.begin(), n_list.end(), [](std::size_t n) { return n != 2; }))
            throw ConfigError("method: two_port_series requires every n to be 2");

        const bool mc = std::find(methods.begin(), methods.end(), Method::monte_carlo) != methods.end();
        if (mc)
        {
            if (!sim)
                throw ConfigError("sim: monte_carlo requires simulation parameters");
            try
            {
                sim->validate(base);
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(std::string("sim: ") + e.what());
            }
        }
        base.validate();
        quad.validate();
        tol.validate();
        series_tol.validate();
    }

    std::vector<ResultRow> run_sweep(const SweepSpec &spec, const FasConfig &base)
    {
        spec.validate(base);
        const double sigma = base.sigma();
        const std::vector<Method> methods = canonical_methods(spec.methods);

        std::vector<double> x_lin, x_db;
        for (double v : spec.thresholds.values)
        {
            x_lin.push_back(spec.thresholds.in_db ? threshold_from_db(sigma, v) : v);
            x_db.push_back(spec.thresholds.in_db ? v : threshold_to_db(sigma, v));
        }

        const std::size_t n_n = spec.n_list.size(), n_w = spec.w_list.size(), n_t = x_lin.size(),
                          n_m = methods.size();
        std::vector<ResultRow> rows(n_n * n_w * n_t * n_m);
        auto index = [&](std::size_t ni, std::size_t wi, std::size_t ti, std::size_t mi)
        { return ((ni * n_w + wi) * n_t + ti) * n_m + mi; };
        auto config = [&](std::size_t ni, std::size_t wi)
        {
            FasConfig cfg = base;
            cfg.n_ports = spec.n_list[ni];
            cfg.aperture = spec.w_list[wi];
            return cfg;
        };

        for (std::size_t ni = 0; ni < n_n; ++ni)
            for (std::size_t wi = 0; wi < n_w; ++wi)
                for (std::size_t ti = 0; ti < n_t; ++ti)
                    for (std::size_t mi = 0; mi < n_m; ++mi)
                    {
                        ResultRow &r = rows[index(ni, wi, ti, mi)];
                        r.n = spec.n_list[ni];
                        r.w = spec.w_list[wi];
                        r.threshold_linear = x_lin[ti];
                        r.threshold_db = x_db[ti];
                        r.method = methods[mi];
                    }

        // Analytic points go to a worker pool; each writes only its own row.
        std::vector<std::size_t> tasks;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (is_analytic(rows[i].method))
                tasks.push_back(i);
        std::vector<std::exception_ptr> errors(tasks.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&]
        {
            for (std::size_t k = next.fetch_add(1); k < tasks.size(); k = next.fetch_add(1))
            {
                ResultRow &r = rows[tasks[k]];
                try
                {
                    FasConfig cfg = base;
                    cfg.n_ports = r.n;
                    cfg.aperture = r.w;
                    r.raw_rate = analytic_rate(r.method, cfg, r.threshold_linear, spec);
                    r.nlcr = r.raw_rate / cfg.f_doppler;
                }
                catch (...)
                {
                    errors[k] = std::current_exception();
                }
            }
        };
        std::size_t threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
        threads = std::max<std::size_t>(1, std::min(threads, tasks.size()));
        {
            std::vector<std::jthread> pool;
            for (std::size_t i = 1; i < threads; ++i)
                pool.emplace_back(worker);
            worker();
        }
        for (const auto &e : errors)
            if (e)
                std::rethrow_exception(e);

        const auto mc = std::find(methods.begin(), methods.end(), Method::monte_carlo);
        if (mc != methods.end())
        {
            const auto mi = static_cast<std::size_t>(mc - methods.begin());
            for (std::size_t ni = 0; ni < n_n; ++ni)
                for (std::size_t wi = 0; wi < n_w; ++wi)
                {
                    const auto est = estimate_lcr(config(ni, wi), *spec.sim, x_lin, spec.threads);
                    for (std::size_t ti = 0; ti < n_t; ++ti)
                    {
                        ResultRow &r = rows[index(ni, wi, ti, mi)];
                        r.raw_rate = est[ti].rate;
                        r.nlcr = est[ti].nlcr;
                        r.mc_crossings = est[ti].crossings;
                        r.mc_duration = est[ti].duration;
                    }
                }
        }
        return rows;
    }

    CompareSummary compare_methods(const std::vector<ResultRow> &rows, Method reference, Method candidate, double gate)
    {
        if (reference == candidate)
            throw ConfigError("compare: reference and candidate methods must differ");
        std::vector<GridKey> order;
        std::map<GridKey, double> ref, cand;
        for (const auto &r : rows)
        {
            const GridKey key{r.n, r.w, r.threshold_linear};
            if (r.method == reference && ref.emplace(key, r.nlcr).second)
                order.push_back(key);
            else if (r.method == candidate)
                cand.emplace(key, r.nlcr);
        }
        if (ref.empty() || cand.empty())
            throw ConfigError("compare: rows need both " + std::string(to_string(reference)) + " and " +
                              std::string(to_string(candidate)) + " results");
        for (const auto &[key, v] : cand)
            if (!ref.count(key))
                throw ConfigError("compare: grids differ, no " + std::string(to_string(reference)) + " row at " +
                                  describe(key));
        for (const auto &[key, v] : ref)
            if (!cand.count(key))
                throw ConfigError("compare: grids differ, no " + std::string(to_string(candidate)) + " row at " +
                                  describe(key));

        CompareSummary s;
        std::vector<double> gated;
        for (const auto &key : order)
        {
            ComparePoint p;
            std::tie(p.n, p.w, p.threshold_linear) = key;
            p.reference = ref.at(key);
            p.candidate = cand.at(key);
            p.rel_error = p.reference > 0.0 ? std::abs(p.candidate - p.reference) / p.reference
                                            : (p.candidate == 0.0 ? 0.0 : HUGE_VAL);
            p.gated = p.reference > gate;
            if (p.gated)
                gated.push_back(p.rel_error);
            s.points.push_back(p);
        }
        if (gated.empty())
            throw ConfigError("compare: no grid point has reference NLCR above " + format_real(gate));

        std::sort(gated.begin(), gated.end());
        const std::size_t m = gated.size();
        s.n_gated = m;
        s.median_rel_error = m % 2 ? gated[m / 2] : 0.5 * (gated[m / 2 - 1] + gated[m / 2]);
        s.max_rel_error = gated.back();
        return s;
    }

    void emit_csv(const std::vector<ResultRow> &rows, std::ostream &out)
    {
        out << csv_header << '\n';
        for (const auto &r : rows)
        {
            out << r.n << ',' << format_real(r.w) << ',' << format_real(r.threshold_linear) << ','
                << format_real(r.threshold_db) << ',' << to_string(r.method) << ',' << format_real(r.nlcr) << ','
                << format_real(r.raw_rate) << ',';
            if (r.mc_crossings)
                out << *r.mc_crossings;
            out << ',';
            if (r.mc_duration)
                out << format_real(*r.mc_duration);
            out << '\n';
        }
    }

    void emit_csv(const std::vector<ResultRow> &rows, const std::string &path)
    {
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw IoError("cannot open for writing", path);
        emit_csv(rows, f);
        f.flush();
        if (!f)
            throw IoError("write failed", path);
    }

    std::vector<ResultRow> parse_csv(std::istream &in)
    {
        std::string line;
        if (!std::getline(in, line) || trim(line) != csv_header)
            throw ConfigError("csv: missing or unexpected header");
        std::vector<ResultRow> rows;
        std::size_t line_no = 1;
        while (std::getline(in, line))
        {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty())
                continue;
            const auto f = split(line, ',');
            const std::string where = "csv line " + std::to_string(line_no);
            if (f.size() != 9)
                throw ConfigError(where + ": expected 9 fields");
            ResultRow r;
            r.n = require_number<std::size_t>(f[0], where + " n");
            r.w = require_number<double>(f[1], where + " w");
            r.threshold_linear = require_number<double>(f[2], where + " threshold_linear");
            r.threshold_db = require_number<double>(f[3], where + " threshold_db");
            r.method = parse_method(f[4]);
            r.nlcr = require_number<double>(f[5], where + " nlcr");
            r.raw_rate = require_number<double>(f[6], where + " raw_rate");
            if (!trim(f[7]).empty())
                r.mc_crossings = require_number<std::uint64_t>(f[7], where + " mc_crossings");
            if (!trim(f[8]).empty())
                r.mc_duration = require_number<double>(f[8], where + " mc_duration");
            rows.push_back(r);
        }
        return rows;
    }

    std::vector<ResultRow> read_csv(const std::string &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw IoError("cannot open for reading", path);
        return parse_csv(f);
    }

    std::vector<double> parse_real_list(std::string_view text)
    {
        text = trim(text);
        const auto range = split(text, ':');
        if (range.size() == 3)
        {
            const auto start = require_number<double>(range[0], "range start");
            const auto stop = require_number<double>(range[1], "range stop");
            const auto count = require_number<std::size_t>(range[2], "range count");
            if (count < 1)
                throw ConfigError("range count must be >= 1");
            std::vector<double> out(count, start);
            for (std::size_t i = 1; i < count; ++i)
                out[i] = i + 1 == count ? stop
                                        : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
            return out;
        }
        if (range.size() != 1)
            throw ConfigError("expected a list a,b,c or a range start:stop:count");
        std::vector<double> out;
        for (auto item : split(text, ','))
            out.push_back(require_number<double>(item, "list value"));
        return out;
    }

    std::vector<std::size_t> parse_count_list(std::string_view text)
    {
        text = trim(text);
        const auto range = split(text, ':');
        if (range.size() == 2)
        {
            const auto first = require_number<std::size_t>(range[0], "range start");
            const auto last = require_number<std::size_t>(range[1], "range end");
            if (last < first)
                throw ConfigError("range end must not precede its start");
            std::vector<std::size_t> out;
            for (std::size_t n = first; n <= last; ++n)
                out.push_back(n);
            return out;
        }
        if (range.size() != 1)
            throw ConfigError("expected a list a,b,c or a range first:last");
        std::vector<std::size_t> out;
        for (auto item : split(text, ','))
            out.push_back(require_number<std::size_t>(item, "list value"));
        return out;
    }

    void RunConfig::set(std::string_view key, std::string_view value)
    {
        key = trim(key);
        value = trim(value);
        const std::string k(key);
        try
        {
            if (key == "n")
                n_list = parse_count_list(value);
            else if (key == "w")
                w_list = parse_real_list(value);
            else if (key == "sigma2")
                base.sigma2 = require_number<double>(value, "value");
            else if (key == "fd")
                base.f_doppler = require_number<double>(value, "value");
            else if (key == "thresholds")
                thresholds = {parse_real_list(value), false};
            else if (key == "thresholds-db")
                thresholds = {parse_real_list(value), true};
            else if (key == "method")
            {
                methods.clear();
                for (auto m : split(value, ','))
                    methods.push_back(parse_method(m));
            }
            else if (key == "seed")
                seed = require_number<std::uint64_t>(value, "value");
            else if (key == "duration-cycles")
                duration_cycles = require_number<double>(value, "value");
            else if (key == "sample-rate-mult")
                sample_rate_mult = require_number<double>(value, "value");
            else if (key == "n-sinusoids")
                n_sinusoids = require_number<std::size_t>(value, "value");
            else if (key == "threads")
                threads = require_number<std::size_t>(value, "value");
            else if (key == "tolerance")
                tolerance = require_number<double>(value, "value");
            else if (key == "out")
                out = std::string(value);
            else
                throw ConfigError("unknown key");
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(k + ": " + e.what());
        }
    }

    SweepSpec RunConfig::sweep_spec() const
    {
        SweepSpec spec;
        spec.thresholds = thresholds;
        spec.n_list = n_list;
        spec.w_list = w_list;
        spec.methods = methods;
        spec.threads = threads;
        if (std::find(methods.begin(), methods.end(), Method::monte_carlo) != methods.end())
        {
            SimParams sim = make_sim_params(base, duration_cycles, seed, sample_rate_mult);
            sim.n_sinusoids = n_sinusoids;
            spec.sim = sim;
        }
        return spec;
    }

    void load_config_file(RunConfig &cfg, const std::string &path)
    {
        std::ifstream f(path);
        if (!f)
            throw IoError("cannot open config", path);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(f, line))
        {
            ++line_no;
            std::string_view s = line;
            s = trim(s.substr(0, s.find('#')));
            if (s.empty())
                continue;
            const auto eq = s.find('=');
            try
            {
                if (eq == std::string_view::npos)
                    throw ConfigError("expected key = value");
                cfg.set(s.substr(0, eq), s.substr(eq + 1));
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
            }
        }
    }
}
