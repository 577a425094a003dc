// laxlab: verification suites, simulations and matrix dumps for the elliptic
// n-particle model and its R/r-matrix structures.
#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "laxlab/cmmodel.hpp"
#include "laxlab/errors.hpp"
#include "laxlab/twist.hpp"
#include "laxlab/verify.hpp"
#include "laxlab/znalgebra.hpp"

namespace {

using laxlab::Complex;
using laxlab::Json;

// complex literals in the form "a+bi" / "a-bi" / "a" / "bi"
Complex parse_complex(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
    if (s.empty()) throw laxlab::ValidityError("empty complex literal");
    if (s.back() != 'i') return Complex(std::stod(s), 0.0);
    s.pop_back();  // trailing i
    // split at the last +/- that is not an exponent sign
    for (size_t pos = s.size(); pos-- > 1;) {
        if ((s[pos] == '+' || s[pos] == '-') && s[pos - 1] != 'e' && s[pos - 1] != 'E') {
            const double re = std::stod(s.substr(0, pos));
            std::string im = s.substr(pos);
            if (im == "+" || im == "-") im += "1";
            return Complex(re, std::stod(im));
        }
    }
    if (s.empty() || s == "+") return Complex(0.0, 1.0);
    if (s == "-") return Complex(0.0, -1.0);
    return Complex(0.0, std::stod(s));
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw laxlab::ValidityError("cannot open output file: " + path);
    f << text;
}

int cmd_verify(const std::vector<std::string>& suites, const std::vector<int>& n_list,
               const std::string& tau_s, double gamma, int trials, uint64_t seed,
               const std::vector<std::string>& tol_kv, const std::string& out) {
    laxlab::VerifyConfig cfg;
    cfg.suites = suites.empty() ? std::vector<std::string>{"all"} : suites;
    if (!n_list.empty()) cfg.n_list = n_list;
    cfg.tau = parse_complex(tau_s);
    cfg.gamma = gamma;
    cfg.trials = trials;
    cfg.seed = seed;
    for (const auto& kv : tol_kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw laxlab::ValidityError("--tol expects id=value, got '" + kv + "'");
        cfg.tol_overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    const laxlab::Report report = laxlab::run_verify(cfg);
    write_text(out, report.to_json().dump(2) + "\n");
    std::cerr << "checks: " << report.pass_count() << " passed, " << report.fail_count()
              << " failed\n";
    return report.fail_count() == 0 ? 0 : 1;
}

int cmd_simulate(int n, double gamma, double tau_im, double dt, long steps,
                 const std::vector<double>& q0, const std::vector<double>& p0,
                 long sample_every, const std::string& out) {
    laxlab::ModelParams par;
    par.n = n;
    par.tau = Complex(0.0, tau_im);
    par.gamma = gamma;

    laxlab::PhasePoint x0;
    if (static_cast<int>(q0.size()) != n || static_cast<int>(p0.size()) != n)
        throw laxlab::ValidityError("simulate: q0 and p0 must have length n");
    x0.q = q0;
    x0.p = p0;

    laxlab::IntegrateOptions opts;
    opts.dt = dt;
    opts.steps = steps;
    opts.sample_every = sample_every;

    const laxlab::IntegrateResult res = laxlab::integrate(x0, par, opts);
    write_text(out, laxlab::trajectory_csv(res.traj, n));

    Json summary;
    summary["aborted"] = res.aborted;
    if (res.aborted) {
        summary["abort_reason"] = res.abort_reason;
        summary["t_abort"] = res.t_abort;
        summary["step_abort"] = res.step_abort;
        summary["partial_output"] = true;
    }
    const auto& tr = res.traj;
    if (!tr.t.empty()) {
        double dh = 0.0, dp = 0.0;
        std::vector<double> dtr(n, 0.0);
        for (size_t r = 0; r < tr.t.size(); ++r) {
            dh = std::max(dh, std::abs(tr.H[r] - tr.H[0]));
            dp = std::max(dp, std::abs(tr.p_total[r] - tr.p_total[0]));
            for (int k = 0; k < n; ++k)
                dtr[k] = std::max(dtr[k], std::abs(tr.re_tr[r][k] - tr.re_tr[0][k]));
        }
        summary["max_drift_H"] = dh;
        summary["max_drift_H_rel"] = std::abs(tr.H[0]) > 0 ? dh / std::abs(tr.H[0]) : dh;
        summary["max_drift_p_total"] = dp;
        Json jd = Json::array();
        for (double v : dtr) jd.push_back(v);
        summary["max_drift_re_tr_L"] = jd;
        summary["samples"] = tr.t.size();
    }
    std::cout << summary.dump(2) << "\n";
    if (!out.empty() && out != "-") {
        std::ofstream f(out + ".summary.json", std::ios::binary);
        f << summary.dump(2) << "\n";
    }
    return res.aborted ? 1 : 0;
}

int cmd_dump(const std::string& object, int n, const std::string& tau_s, const std::string& v_s,
             const std::string& w_s, const std::string& u_s, double gamma,
             const std::vector<double>& q, const std::vector<double>& p,
             const std::string& out) {
    const Complex tau = parse_complex(tau_s);
    const laxlab::EllipticParams epar{tau, n, 1e-15};
    Json j;
    j["meta"] = {{"object", object}, {"n", n}, {"tau", laxlab::complex_to_string(tau)}};
    Json entries = Json::array();

    auto dump_rtensor = [&](const laxlab::RTensor& t) {
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int jj = 0; jj < n; ++jj) {
                        const Complex val = t.entry(l, k, i, jj);
                        if (val == Complex{}) continue;
                        entries.push_back({{"l", l},
                                           {"k", k},
                                           {"i", i},
                                           {"j", jj},
                                           {"re", val.real()},
                                           {"im", val.imag()}});
                    }
    };
    auto dump_matrix = [&](const laxlab::CMatrix& m) {
        for (int i = 0; i < m.rows(); ++i)
            for (int jj = 0; jj < m.cols(); ++jj) {
                const Complex val = m(i, jj);
                if (val == Complex{}) continue;
                entries.push_back(
                    {{"i", i}, {"j", jj}, {"re", val.real()}, {"im", val.imag()}});
            }
    };

    laxlab::PhasePoint x;
    x.q = q;
    x.p = p;
    if (object == "r") {
        j["meta"]["v"] = laxlab::complex_to_string(parse_complex(v_s));
        dump_rtensor(laxlab::classical_r(parse_complex(v_s), epar));
    } else if (object == "R") {
        j["meta"]["v"] = laxlab::complex_to_string(parse_complex(v_s));
        j["meta"]["w"] = laxlab::complex_to_string(parse_complex(w_s));
        j["meta"]["kind"] = "quantum";
        dump_rtensor(laxlab::belavin_r_quantum(parse_complex(v_s), parse_complex(w_s), epar));
    } else if (object == "A") {
        j["meta"]["u"] = laxlab::complex_to_string(parse_complex(u_s));
        dump_matrix(laxlab::intertwiner_A(parse_complex(u_s), q, epar));
    } else if (object == "L" || object == "Ltilde") {
        laxlab::ModelParams par;
        par.n = n;
        par.tau = tau;
        par.gamma = gamma;
        j["meta"]["u"] = laxlab::complex_to_string(parse_complex(u_s));
        j["meta"]["gamma"] = gamma;
        const auto field = (object == "L") ? laxlab::krichever_L(parse_complex(u_s), par)
                                           : laxlab::twisted_L(parse_complex(u_s), par);
        dump_matrix(field.value(x));
    } else {
        throw laxlab::ValidityError("dump: unknown object '" + object + "'");
    }
    j["entries"] = entries;
    write_text(out, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic n-particle model: identity verification, simulation, dumps"};
    app.set_config("--config");
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run verification suites, write a JSON report");
    std::vector<std::string> suites;
    std::vector<int> n_list;
    std::string tau_s = "0+1i";
    double gamma = 1.0;
    int trials = 20;
    uint64_t seed = 42;
    std::vector<std::string> tol_kv;
    std::string out;
    verify->add_option("--suite", suites,
                       "suites: elliptic rmatrix dynamical twist appendix all");
    verify->add_option("--n", n_list, "ranks to verify (within [2,6])");
    verify->add_option("--tau", tau_s, "modular parameter, a+bi literal");
    verify->add_option("--gamma", gamma, "coupling constant");
    verify->add_option("--trials", trials, "seeded sample points per check");
    verify->add_option("--seed", seed, "PRNG seed");
    verify->add_option("--tol", tol_kv, "tolerance override, id=value (prefix match)");
    verify->add_option("--out", out, "report path (default stdout)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "integrate a trajectory, write CSV");
    int sim_n = 2;
    double sim_gamma = 1.0, tau_im = 1.0, dt = 1e-3;
    long steps = 100000, sample_every = 100;
    std::vector<double> q0, p0;
    std::string sim_out;
    simulate->add_option("--n", sim_n, "particle count");
    simulate->add_option("--gamma", sim_gamma, "coupling constant");
    simulate->add_option("--tau-im", tau_im, "Im(tau), tau purely imaginary");
    simulate->add_option("--dt", dt, "time step");
    simulate->add_option("--steps", steps, "number of steps");
    simulate->add_option("--q0", q0, "initial positions")->expected(-1);
    simulate->add_option("--p0", p0, "initial momenta")->expected(-1);
    simulate->add_option("--sample-every", sample_every, "sampling stride");
    simulate->add_option("--out", sim_out, "CSV path (default stdout)");

    // dump
    auto* dump = app.add_subcommand("dump", "dump a matrix or tensor as JSON");
    std::string object, v_s = "0.3", w_s = "0.1", u_s = "0.3", dump_out;
    int dump_n = 2;
    std::string dump_tau = "0+1i";
    double dump_gamma = 1.0;
    std::vector<double> dump_q, dump_p;
    dump->add_option("--object", object, "one of: r R L Ltilde A")->required();
    dump->add_option("--n", dump_n, "rank");
    dump->add_option("--tau", dump_tau, "modular parameter, a+bi literal");
    dump->add_option("--v", v_s, "spectral parameter for r/R");
    dump->add_option("--w", w_s, "crossing parameter for R");
    dump->add_option("--u", u_s, "spectral parameter for L/Ltilde/A");
    dump->add_option("--gamma", dump_gamma, "coupling for L/Ltilde");
    dump->add_option("--q", dump_q, "positions for L/Ltilde/A")->expected(-1);
    dump->add_option("--p", dump_p, "momenta for L/Ltilde")->expected(-1);
    dump->add_option("--out", dump_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) return cmd_verify(suites, n_list, tau_s, gamma, trials, seed, tol_kv, out);
        if (*simulate)
            return cmd_simulate(sim_n, sim_gamma, tau_im, dt, steps, q0, p0, sample_every,
                                sim_out);
        if (*dump) {
            if (dump_q.empty()) {
                for (int i = 0; i < dump_n; ++i)
                    dump_q.push_back(-0.3 + 0.6 * i / std::max(1, dump_n - 1));
            }
            if (dump_p.empty()) dump_p.assign(dump_n, 0.0);
            return cmd_dump(object, dump_n, dump_tau, v_s, w_s, u_s, dump_gamma, dump_q, dump_p,
                            dump_out);
        }
    } catch (const laxlab::ValidityError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const laxlab::InvalidModulusError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const laxlab::PoleError& e) {
        std::cerr << "pole error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
