/*
* Copyright (C) 2026 The sveiqhr authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
// Acceptance gate: one PASS/FAIL line per criterion. `--only <id>` runs a single criterion,
// `--list` prints the ids. The exit status is nonzero if any selected criterion fails.

#include "oracles.hpp"
#include "process.hpp"
#include "sampling.hpp"

#include "sveiqhr.hpp"
#include "sveiqhr/service.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <functional>
#include <iostream>
#include <random>
#include <thread>

using namespace sveiqhr;

namespace
{

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            notes.push_back("FAILED " + what);
        }
    }
    void note(const std::string& what)
    {
        notes.push_back(what);
    }
};

struct Criterion {
    std::string id;
    std::string title;
    std::function<Outcome()> check;
};

double rel(double a, double b)
{
    return std::abs(a - b) / std::abs(b);
}

Outcome r0_golden()
{
    Outcome o;
    const double a = compute_r0(disease_free_reference());
    const double b = compute_r0(endemic_reference());
    o.require(rel(a, oracle::quoted_r0_disease_free_set) <= 1e-8,
              fmt::format("R0 {:.12g} vs {:.10f}", a, oracle::quoted_r0_disease_free_set));
    o.require(rel(b, oracle::quoted_r0_endemic_set) <= 1e-8,
              fmt::format("R0 {:.12g} vs {:.10f}", b, oracle::quoted_r0_endemic_set));
    o.note(fmt::format("R0 = {:.12g} and {:.12g}", a, b));
    return o;
}

Outcome intercepts()
{
    Outcome o;
    for (const auto& q : oracle::quoted_intercepts) {
        const auto g = region_geometry(table1_parameters(q.delta), q.delta);
        o.require(std::abs(g.l1 - q.l1) <= 1e-9, fmt::format("delta={} l1 {:.13f} vs quoted {:.10f} (diff {:.2e})",
                                                            q.delta, g.l1, q.l1, std::abs(g.l1 - q.l1)));
        o.require(std::abs(g.l3 - q.l3) <= 1e-9, fmt::format("delta={} l3 {:.13f} vs quoted {:.10f} (diff {:.2e})",
                                                            q.delta, g.l3, q.l3, std::abs(g.l3 - q.l3)));
        o.require(std::abs(g.l2 - oracle::quoted_l2) <= 1e-9,
                  fmt::format("l2 {:.13f} vs quoted {:.10f}", g.l2, oracle::quoted_l2));
        // the line must pass through R0 = 1 at its own intercepts regardless of quoted digits
        auto v = table1_values(q.delta, 0.0);
        if (g.l1 >= 0.0) {
            v.u1 = g.l1;
            o.require(std::abs(compute_r0(ModelParameters(v)) - 1.0) <= 1e-10, "R0(l1, 0) = 1");
            v.u1 = q.l1;
            o.note(fmt::format("delta={}: R0 at the quoted l1 is 1 + {:.2e}", q.delta,
                               compute_r0(ModelParameters(v)) - 1.0));
        }
    }
    return o;
}

Outcome no_vaccination_line()
{
    Outcome o;
    const auto base = table1_parameters(0.653).with(Parameter::U1, 0.0);
    const auto s    = r0_slice(base, Parameter::U2, linspace(0.0, 1.0, 1001));
    // least-squares line through the slice
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : s) {
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double n         = static_cast<double>(s.size());
    const double slope     = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double worst           = 0.0;
    for (const auto& [x, y] : s) {
        worst = std::max(worst, std::abs(y - (intercept + slope * x)) / intercept);
    }
    o.require(worst <= 1e-12, fmt::format("affine residual {:.2e}", worst));
    o.require(rel(intercept, oracle::quoted_no_vaccination_r0) <= 1e-6, fmt::format("intercept {:.12g}", intercept));
    o.require(rel(-slope, oracle::quoted_no_vaccination_r0) <= 1e-6, fmt::format("slope {:.12g}", slope));
    o.note(fmt::format("intercept {:.12g}, slope {:.12g}", intercept, slope));
    return o;
}

Outcome sensitivity_labels()
{
    Outcome o;
    int matched = 0;
    const std::array<std::pair<const char*, ModelParameters>, 2> cases = {
        {{"disease-free", disease_free_reference()}, {"endemic", endemic_reference()}}};
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto& [label, p] = cases[c];
        const auto& labels     = c == 0 ? oracle::labels_disease_free : oracle::labels_endemic;
        for (auto which : all_parameters) {
            const double closed = sensitivity_index(p, which);
            const double fd     = oracle::sensitivity(p.values(), which);
            o.require(std::abs(closed - fd) <= 1e-6 * std::abs(fd),
                      fmt::format("{} {}: closed form {:.12g} vs difference quotient {:.12g}", label, name_of(which),
                                  closed, fd));
            const double quoted = labels[static_cast<std::size_t>(which)];
            if (std::abs(closed - quoted) <= 1e-8) {
                ++matched;
            }
            else {
                o.note(fmt::format("label discrepancy {} {}: computed {:.11f}, label {:.10f}, difference quotient "
                                   "{:.11f}",
                                   label, name_of(which), closed, quoted, fd));
            }
        }
    }
    const double u2 = sensitivity_index(disease_free_reference(), Parameter::U2);
    const double dl = sensitivity_index(endemic_reference(), Parameter::Delta);
    o.require(std::abs(u2 - -13.2701075492) <= 1e-8, fmt::format("upsilon_u2 {:.11f}", u2));
    o.require(std::abs(dl - -1.8814318750) <= 1e-8, fmt::format("upsilon_delta {:.11f}", dl));
    o.note(fmt::format("{}/34 labels within 1e-8", matched));
    return o;
}

Outcome ranking()
{
    Outcome o;
    const auto df = significance_ranking(disease_free_reference()).ordering();
    const auto en = significance_ranking(endemic_reference()).ordering();
    auto show     = [](const std::vector<Parameter>& v) {
        std::string s;
        for (auto p : v) {
            s += (s.empty() ? "" : " ") + std::string(name_of(p));
        }
        return s;
    };
    o.require(std::equal(df.begin(), df.end(), oracle::ordering_disease_free.begin()), "disease-free " + show(df));
    o.require(std::equal(en.begin(), en.end(), oracle::ordering_endemic.begin()), "endemic " + show(en));
    return o;
}

Outcome ngm_oracle()
{
    Outcome o;
    std::mt19937_64 rng(20260101);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
        const ModelParameters p(sampling::random_parameters(rng));
        const auto m            = ngm(p);
        const Eigen::Matrix4d K = m.F * m.V.inverse();
        worst = std::max(worst, rel(K.eigenvalues().cwiseAbs().maxCoeff(), compute_r0(p)));
    }
    o.require(worst <= 1e-10, fmt::format("max relative difference {:.2e}", worst));
    o.note(fmt::format("100 sets, max relative difference {:.2e}", worst));
    return o;
}

Outcome equilibrium_residuals()
{
    Outcome o;
    std::mt19937_64 rng(20260102);
    double worst_dfe = 0.0, worst_ee = 0.0;
    int endemic = 0, sign_checked = 0;
    for (int n = 0; n < 200; ++n) {
        const ModelParameters p(sampling::random_parameters(rng));
        const double r0 = compute_r0(p);
        worst_dfe       = std::max(worst_dfe, relative_residual(disease_free_equilibrium(p).to_vector(), p));
        const auto c    = endemic_coefficients(p);
        if (std::abs(r0 - 1.0) > 1e-9) {
            ++sign_checked;
            o.require((c.f / c.d < 0.0) == (r0 > 1.0), fmt::format("sign of f/d at R0 = {:.6g}", r0));
        }
        try {
            const auto r = endemic_equilibrium(p);
            if (r0 > 1.0) {
                o.require(r.positive_equilibrium.has_value(), fmt::format("no endemic equilibrium at R0 = {}", r0));
                worst_ee = std::max(worst_ee, r.residual);
                ++endemic;
            }
        }
        catch (const Error& e) {
            o.require(false, fmt::format("set {}: {}", n, e.what()));
        }
    }
    o.require(worst_dfe <= 1e-8, fmt::format("DFE residual {:.2e}", worst_dfe));
    o.require(worst_ee <= 1e-8, fmt::format("endemic residual {:.2e}", worst_ee));
    o.note(fmt::format("200 sets ({} endemic, {} sign checks); max residual DFE {:.2e}, endemic {:.2e}", endemic,
                       sign_checked, worst_dfe, worst_ee));
    return o;
}

Outcome stability_theorem()
{
    Outcome o;
    std::mt19937_64 rng(20260103);
    int checked = 0;
    double worst = 0.0;
    for (int n = 0; n < 200; ++n) {
        const ModelParameters p(sampling::random_parameters(rng));
        const auto st = dfe_stability(p);
        if (std::abs(st.report.r0 - 1.0) > 1e-6) {
            ++checked;
            const auto expect = st.report.r0 < 1.0 ? Verdict::LocallyAsymptoticallyStable : Verdict::Unstable;
            o.require(st.report.verdict == expect, fmt::format("verdict {} at R0 = {:.6g}",
                                                               to_string(st.report.verdict), st.report.r0));
        }
        for (double lambda : dfe_fixed_eigenvalues(p)) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& z : st.report.eigenvalues) {
                best = std::min(best, std::abs(z - lambda) / std::abs(lambda));
            }
            worst = std::max(worst, best);
        }
    }
    o.require(worst <= 1e-8, fmt::format("closed-form eigenvalue mismatch {:.2e}", worst));
    o.note(fmt::format("{} verdicts checked; closed-form eigenvalues within {:.2e}", checked, worst));
    return o;
}

Outcome bifurcation_probe()
{
    Outcome o;
    const auto base = disease_free_reference();
    const auto r    = endemic_equilibrium(base);
    o.require(r.root_class == RootClass::TwoNegative, fmt::format("root class {}", to_string(r.root_class)));
    o.note(fmt::format("roots {:.9g}, {:.9g} at R0 = {:.10f}", r.roots[0].real(), r.roots[1].real(), r.r0));

    // u2 path from the endemic side through R0 = 1 (R0 is affine in u2)
    const double r_lo = compute_r0(base.with(Parameter::U2, 0.0));
    const double r_hi = compute_r0(base.with(Parameter::U2, 1.0));
    const double u2c  = (r_lo - 1.0) / (r_lo - r_hi);
    std::vector<double> path;
    for (int k = 0; k < 12; ++k) {
        path.push_back(u2c - 0.1 * std::ldexp(1.0, -k));
    }
    std::vector<double> infected;
    for (double u2 : path) {
        const auto e = endemic_equilibrium(base.with(Parameter::U2, u2));
        o.require(e.positive_equilibrium.has_value(), fmt::format("no endemic equilibrium at u2 = {}", u2));
        infected.push_back(e.positive_equilibrium ? e.positive_equilibrium->I : 0.0);
    }
    for (std::size_t i = infected.size() - 5; i < infected.size(); ++i) {
        o.require(infected[i] > 0.0 && infected[i] < infected[i - 1], fmt::format("I1 at sample {}", i));
    }
    const auto past = endemic_equilibrium(base.with(Parameter::U2, std::min(1.0, u2c + 1e-4)));
    o.require(!past.positive_equilibrium.has_value(), "positive equilibrium past the crossing");
    o.note(fmt::format("I1 over the final 5 samples: {:.4g} {:.4g} {:.4g} {:.4g} {:.4g}", infected[7], infected[8],
                       infected[9], infected[10], infected[11]));
    return o;
}

Outcome dynamics_properties()
{
    Outcome o;
    {
        std::mt19937_64 rng(20260104);
        IntegratorConfig c;
        c.horizon = 730.0;
        for (int n = 0; n < 50; ++n) {
            const ModelParameters p(sampling::random_parameters(rng));
            const auto x0    = sampling::random_state(rng, p);
            const double cap = derive_constants(p).n_cap;
            const auto traj  = simulate(p, x0, c);
            bool ok          = true;
            for (std::size_t i = 0; i < traj.size(); ++i) {
                ok = ok && (traj.states[i].to_vector().array() >= 0.0).all() && traj.total[i] <= cap * (1 + 1e-9);
            }
            o.require(ok, fmt::format("invariance at random start {}", n));
        }
        o.note("50 random starts stay non-negative with N <= (lambda + lambda')/mu");
    }
    {
        const auto p = endemic_reference();
        IntegratorConfig c;
        c.horizon = c.sample_interval = 20.0;
        c.rel_tol                     = 1e-13;
        c.abs_tol                     = 1e-3;
        const double exact            = simulate(p, default_initial_state(), c).non_healthy.back();
        c.method                      = IntegrationMethod::Rk4;
        std::vector<double> err;
        for (double h : {0.2, 0.1, 0.05}) {
            c.step = h;
            err.push_back(std::abs(simulate(p, default_initial_state(), c).non_healthy.back() - exact));
        }
        const double r1 = err[0] / err[1], r2 = err[1] / err[2];
        o.require(r1 >= 8.0 && r2 >= 8.0, fmt::format("RK4 halving ratios {:.3g}, {:.3g}", r1, r2));
        o.note(fmt::format("RK4 halving ratios {:.3g}, {:.3g}", r1, r2));
    }
    {
        std::vector<PeakSummary> s;
        IntegratorConfig peak_cfg;
        peak_cfg.horizon         = 730.0;
        peak_cfg.sample_interval = 0.1;
        IntegratorConfig long_cfg;
        long_cfg.horizon         = 200000.0;
        long_cfg.sample_interval = 100.0;
        std::vector<State> terminal;
        for (double delta : {0.653, 0.9, 0.93}) {
            const auto p   = table1_parameters(delta);
            auto summary   = peak_and_limit(simulate(p, default_initial_state(), peak_cfg));
            const auto lt  = simulate(p, default_initial_state(), long_cfg);
            summary.terminal = lt.non_healthy.back();
            s.push_back(summary);
            terminal.push_back(lt.states.back());
        }
        o.require(s[0].peak > s[1].peak && s[1].peak > s[2].peak, "peaks strictly decrease with delta");
        o.require(s[0].terminal > s[1].terminal && s[1].terminal > s[2].terminal,
                  "terminal values strictly decrease with delta");
        o.note(fmt::format("peaks {:.6g} > {:.6g} > {:.6g}; terminal {:.6g} > {:.6g} > {:.6g}", s[0].peak, s[1].peak,
                           s[2].peak, s[0].terminal, s[1].terminal, s[2].terminal));

        const Vector7 dfe = disease_free_equilibrium(table1_parameters(0.93)).to_vector();
        const double d_dfe = (terminal[2].to_vector() - dfe).cwiseAbs().maxCoeff() / dfe.cwiseAbs().maxCoeff();
        const double d_nh  = rel(terminal[2].non_healthy(), State::from_vector(dfe).non_healthy());
        o.require(d_dfe <= 1e-3 && d_nh <= 1e-3, fmt::format("delta=0.93 distance to DFE {:.2e}", d_dfe));

        const auto ee = endemic_equilibrium(endemic_reference()).positive_equilibrium;
        o.require(ee.has_value(), "endemic equilibrium exists");
        double d_ee = 1.0;
        if (ee) {
            d_ee = (terminal[0].to_vector() - ee->to_vector()).cwiseQuotient(ee->to_vector()).cwiseAbs().maxCoeff();
        }
        o.require(d_ee <= 1e-3, fmt::format("delta=0.653 distance to endemic equilibrium {:.2e}", d_ee));
        o.note(fmt::format("at t = 2e5: relative distance to DFE {:.2e}, componentwise to endemic equilibrium {:.2e}",
                           d_dfe, d_ee));
    }
    return o;
}

Outcome ppkm_mapping()
{
    Outcome o;
    const double u2 = u2_from_profile(level1_profile());
    o.require(std::abs(u2 - 2.5 / 9.0) <= 1e-15, fmt::format("level 1 u2 {:.17g}", u2));
    o.require(fmt::format("{:.3f}", u2) == "0.278", "level 1 displays as 0.278");
    o.require(ppkm_level_u2(2) == 0.389 && ppkm_level_u2(3) == 0.694 && ppkm_level_u2(4) == 0.861,
              "levels 2-4 lookup");
    o.note(fmt::format("level 1 u2 = {:.17g}", u2));
    return o;
}

Outcome interface_determinism()
{
    Outcome o;
    const auto a = process::scratch("accept_figures_a");
    const auto b = process::scratch("accept_figures_b");
    o.require(process::run(process::cli("figures --out " + a.string() + " >/dev/null")).exit_code == 0, "figures run 1");
    o.require(process::run(process::cli("figures --out " + b.string() + " >/dev/null")).exit_code == 0, "figures run 2");
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(a)) {
        if (entry.path().extension() == ".csv") {
            ++files;
            o.require(process::slurp(entry.path()) == process::slurp(b / entry.path().filename()),
                      "byte-identical " + entry.path().filename().string());
        }
    }
    o.require(files > 0, "figures wrote CSV files");

    auto server    = make_server();
    const int port = server->bind_to_any_port("127.0.0.1");
    std::thread th([&] { server->listen_after_bind(); });
    server->wait_until_ready();
    int compared = 0;
    for (const auto& [flags, body] : std::vector<std::pair<std::string, std::string>>{
             {"--delta 0.653 --u1 1e-8 --u2 0.93", R"({"delta":0.653,"u1":1e-8,"u2":0.93})"},
             {"--delta 0.653 --u1 0.4 --u2 0.278", R"({"delta":0.653,"u1":0.4,"u2":0.278})"},
             {"--delta 0.9 --ppkm-level 3", R"({"delta":0.9,"ppkm_level":3})"}}) {
        const auto cli = process::run(process::cli("r0 " + flags));
        httplib::Client client("127.0.0.1", port);
        const auto res = client.Post("/api/r0", body, "application/json");
        o.require(res && res->status == 200, "service reachable");
        o.require(res && cli.out == res->body + "\n", fmt::format("CLI `{}` vs service `{}`", cli.out,
                                                                  res ? res->body : "<none>"));
        ++compared;
    }
    server->stop();
    th.join();
    o.note(fmt::format("{} CSVs identical across runs; {} CLI/service r0 pairs identical", files, compared));
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> criteria = {
        {"r0_golden", "R0 golden values", r0_golden},
        {"intercepts", "intercept golden values", intercepts},
        {"no_vaccination_line", "no-vaccination line", no_vaccination_line},
        {"sensitivity_labels", "sensitivity golden values", sensitivity_labels},
        {"ranking", "ranking reproduction", ranking},
        {"ngm_oracle", "next-generation matrix oracle", ngm_oracle},
        {"equilibrium_residuals", "equilibrium residuals", equilibrium_residuals},
        {"stability_theorem", "stability theorem check", stability_theorem},
        {"bifurcation_probe", "bifurcation probe", bifurcation_probe},
        {"dynamics_properties", "dynamics properties", dynamics_properties},
        {"ppkm_mapping", "restriction level mapping", ppkm_mapping},
        {"interface_determinism", "interface determinism", interface_determinism},
    };

    std::string only;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--list") {
            for (const auto& c : criteria) {
                std::cout << c.id << '\n';
            }
            return 0;
        }
        if (arg == "--only" && i + 1 < argc) {
            only = argv[++i];
        }
    }

    int failed = 0, ran = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && c.id != only) {
            continue;
        }
        ++ran;
        Outcome o;
        try {
            o = c.check();
        }
        catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << c.id << ": " << c.title << '\n';
        for (const auto& n : o.notes) {
            std::cout << "     " << n << '\n';
        }
    }
    if (ran == 0) {
        std::cerr << "unknown criterion " << only << '\n';
        return 2;
    }
    std::cout << fmt::format("{} of {} criteria passed\n", ran - failed, ran);
    return failed == 0 ? 0 : 1;
}
