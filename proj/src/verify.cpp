#include "laxlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "laxlab/cmmodel.hpp"
#include "laxlab/errors.hpp"
#include "laxlab/sampling.hpp"
#include "laxlab/twist.hpp"
#include "laxlab/znalgebra.hpp"

namespace laxlab {

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

double rel(Complex diff, Complex scale) {
    return std::abs(diff) / std::max(std::abs(scale), 1e-30);
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// Spectral pair with u-v kept away from zeros of sigma and every theta^(j).
void sample_spectral_pair(Rng& rng, const EllipticParams& par, Complex& u, Complex& v) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        u = sample_spectral(rng, par);
        v = sample_spectral(rng, par);
        const Complex d = u - v;
        if (std::abs(sigma_fn(d, par.tau, par.eps)) < 1e-4) continue;
        bool ok = true;
        for (int j = 0; j < par.n && ok; ++j)
            if (std::abs(theta_j(j, d, par)) < 1e-4) ok = false;
        if (ok) return;
    }
    throw ValidityError("sample_spectral_pair: rejection did not converge");
}

struct Ctx {
    const VerifyConfig* cfg;
    Report* report;

    bool want(const std::string& suite) const {
        for (const auto& s : cfg->suites)
            if (s == "all" || s == suite) return true;
        return false;
    }

    double tol_for(const std::string& id, double def) const {
        size_t best_len = 0;
        double tol = def;
        for (const auto& [prefix, t] : cfg->tol_overrides)
            if (id.rfind(prefix, 0) == 0 && prefix.size() >= best_len) {
                best_len = prefix.size();
                tol = t;
            }
        return tol;
    }

    Rng rng_for(const std::string& id, int n) const {
        return Rng(cfg->seed).fork(fnv1a(id) ^ static_cast<uint64_t>(n));
    }

    Json base_params(int n) const {
        Json p;
        p["n"] = n;
        p["tau"] = complex_to_string(cfg->tau);
        p["gamma"] = cfg->gamma;
        p["trials"] = cfg->trials;
        return p;
    }

    void add(const std::string& id, int n, double residual, double def_tol,
             const std::string& notes = "", bool structured_pass = true) {
        CheckResult c;
        c.check_id = id;
        c.params = base_params(n);
        c.residual = residual;
        c.tol = tol_for(id, def_tol);
        c.pass = (residual < c.tol) && structured_pass;
        c.variant_notes = notes;
        report->checks.push_back(std::move(c));
    }
};

bool tau_is_imaginary(Complex tau) { return std::abs(tau.real()) < 1e-14; }

// ---------------------------------------------------------------- elliptic

void suite_elliptic(Ctx& ctx, int n) {
    const VerifyConfig& cfg = *ctx.cfg;
    const EllipticParams par{cfg.tau, n, 1e-15};
    const Complex tau = cfg.tau;

    {
        Rng rng = ctx.rng_for("eq07_theta_quasi_period_one", n);
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const ThetaChar ch{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
            const Complex z(rng.uniform(-0.5, 0.5), rng.uniform(-0.3, 0.3));
            const Complex lhs = theta_char(ch, z + 1.0, tau);
            const Complex rhs = std::exp(Complex(0, 2 * M_PI * ch.a)) * theta_char(ch, z, tau);
            worst = std::max(worst, rel(lhs - rhs, rhs));
        }
        ctx.add("eq07_theta_quasi_period_one", n, worst, 1e-12);
    }
    {
        Rng rng = ctx.rng_for("eq07_theta_quasi_period_tau", n);
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const ThetaChar ch{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
            const Complex z(rng.uniform(-0.5, 0.5), rng.uniform(-0.3, 0.3));
            const Complex mult =
                std::exp(Complex(0, -M_PI) * tau - Complex(0, 2 * M_PI) * (z + ch.b));
            const Complex lhs = theta_char(ch, z + tau, tau);
            const Complex rhs = mult * theta_char(ch, z, tau);
            worst = std::max(worst, rel(lhs - rhs, rhs));
        }
        ctx.add("eq07_theta_quasi_period_tau", n, worst, 1e-11);
    }
    {
        Rng rng = ctx.rng_for("eq07_sigma_odd", n);
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const Complex u(rng.uniform(0.05, 0.45), rng.uniform(0.0, 0.2));
            worst = std::max(worst, rel(sigma_fn(-u, tau) + sigma_fn(u, tau), sigma_fn(u, tau)));
        }
        ctx.add("eq07_sigma_odd", n, worst, 1e-12);
    }
    {
        Rng rng = ctx.rng_for("eq07_theta_reflection", n);
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const int alpha = 1 + static_cast<int>(rng.uniform(0, n - 1));
            const Complex v(rng.uniform(0.05, 0.45), rng.uniform(0.0, 0.2));
            const Complex lhs = theta_j(alpha, v, par);
            const Complex rhs =
                -std::exp(Complex(0, -2 * M_PI * alpha / n)) * theta_j(-alpha, -v, par);
            worst = std::max(worst, rel(lhs - rhs, lhs));
        }
        ctx.add("eq07_theta_reflection", n, worst, 1e-12);
    }
    {
        Rng rng = ctx.rng_for("eq08_xi_odd", n);
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const Complex u(rng.uniform(0.05, 0.45), rng.uniform(0.0, 0.2));
            worst = std::max(worst, rel(xi_fn(-u, tau) + xi_fn(u, tau), xi_fn(u, tau)));
        }
        ctx.add("eq08_xi_odd", n, worst, 1e-12);
    }
    {
        // 5-point central differences at step 1e-4 vs termwise derivatives
        Rng rng = ctx.rng_for("eq08_derivatives_fd", n);
        const double h = 1e-4;
        auto d5 = [&](auto&& f, Complex z) {
            return (-f(z + 2 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2 * h)) / (12 * h);
        };
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const Complex u(rng.uniform(0.05, 0.45), rng.uniform(0.0, 0.15));
            const int j = static_cast<int>(rng.uniform(0, n));
            worst = std::max(worst, rel(d5([&](Complex z) { return theta_j(j, z, par); }, u) -
                                            theta_j_deriv(j, u, par),
                                        theta_j_deriv(j, u, par)));
            worst = std::max(worst, rel(d5([&](Complex z) { return sigma_fn(z, tau); }, u) -
                                            sigma_deriv(u, tau),
                                        sigma_deriv(u, tau)));
            worst = std::max(
                worst, rel(d5([&](Complex z) { return xi_fn(z, tau); }, u) - xi_deriv(u, tau),
                           xi_deriv(u, tau)));
        }
        ctx.add("eq08_derivatives_fd", n, worst, 1e-8);
    }
    {
        Rng rng = ctx.rng_for("eq09_e_symmetric", n);
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const Complex u(rng.uniform(0.05, 0.45), rng.uniform(0.0, 0.2));
            const Complex v(rng.uniform(0.05, 0.45), rng.uniform(0.0, 0.2));
            const Complex e = e_fn(u, v, tau);
            worst = std::max(worst, rel(e - e_fn(v, u, tau), e));
            // defining ratio
            worst = std::max(worst, rel(sigma_fn(u, tau) * sigma_fn(v, tau) * e -
                                            sigma_fn(u + v, tau),
                                        sigma_fn(u + v, tau)));
        }
        ctx.add("eq09_e_symmetric", n, worst, 1e-12);
    }
    {
        Rng rng = ctx.rng_for("eq20_q_even", n);
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const Complex u(rng.uniform(0.05, 0.45), rng.uniform(0.0, 0.2));
            worst = std::max(worst, rel(q_fn(-u, tau) - q_fn(u, tau), q_fn(u, tau)));
        }
        ctx.add("eq20_q_even", n, worst, 1e-12);
    }
    {
        Rng rng = ctx.rng_for("eq20_difference_identity", n);
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const Complex u(rng.uniform(0.05, 0.45), rng.uniform(0.0, 0.15));
            const Complex v(rng.uniform(0.05, 0.45), rng.uniform(0.0, 0.15));
            if (std::abs(sigma_fn(u + v, tau)) < 1e-4 || std::abs(sigma_fn(u - v, tau)) < 1e-4)
                continue;
            const Complex lhs = q_fn(v, tau) - q_fn(u, tau);
            const Complex rhs = e_fn(u, v, tau) * e_fn(u, -v, tau);
            worst = std::max(worst, rel(lhs - rhs, rhs));
        }
        ctx.add("eq20_difference_identity", n, worst, 1e-11);
    }
    if (tau_is_imaginary(cfg.tau)) {
        Rng rng = ctx.rng_for("eq20_q_real_on_real_slice", n);
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t)
            worst = std::max(worst, std::abs(q_fn(rng.uniform(0.05, 0.45), tau).imag()));
        ctx.add("eq20_q_real_on_real_slice", n, worst, 1e-12);
    }
}

// ---------------------------------------------------------------- rmatrix

void suite_rmatrix(Ctx& ctx, int n) {
    const VerifyConfig& cfg = *ctx.cfg;
    const EllipticParams par{cfg.tau, n, 1e-15};

    auto off_pattern_max = [&](const RTensor& t) {
        double worst = 0.0;
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        if (((i + j) % n) != ((l + k) % n))
                            worst = std::max(worst, std::abs(t.entry(l, k, i, j)));
        return worst;
    };

    {
        Rng rng = ctx.rng_for("eq10_zero_pattern", n);
        double worst = 0.0;
        for (int t = 0; t < std::min(cfg.trials, 5); ++t) {
            const Complex v = sample_spectral(rng, par);
            const Complex w(rng.uniform(0.05, 0.3), 0.0);
            worst = std::max(worst, off_pattern_max(belavin_r_quantum(v, w, par)));
        }
        ctx.add("eq10_zero_pattern", n, worst, 1e-16);
    }
    {
        Rng rng = ctx.rng_for("eq11_qybe", n);
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const Complex v1 = sample_spectral(rng, par);
            const Complex v2 = sample_spectral(rng, par);
            const Complex v3 = sample_spectral(rng, par);
            const Complex w(rng.uniform(0.05, 0.25), 0.0);
            try {
                worst = std::max(worst, qybe_residual(v1, v2, v3, w, par));
            } catch (const PoleError&) {
                --t;  // resample a degenerate triple
                continue;
            }
        }
        ctx.add("eq11_qybe", n, worst, 1e-9);
    }
    {
        Rng rng = ctx.rng_for("eq12_zn_symmetry", n);
        double wq_g = 0.0, wq_h = 0.0, wc_g = 0.0, wc_h = 0.0;
        for (int t = 0; t < std::min(cfg.trials, 10); ++t) {
            const Complex v = sample_spectral(rng, par);
            const Complex w(rng.uniform(0.05, 0.25), 0.0);
            const RTensor rq = belavin_r_quantum(v, w, par);
            const RTensor rc = classical_r(v, par);
            wq_g = std::max(wq_g, zn_symmetry_residual(rq, 'g'));
            wq_h = std::max(wq_h, zn_symmetry_residual(rq, 'h'));
            wc_g = std::max(wc_g, zn_symmetry_residual(rc, 'g'));
            wc_h = std::max(wc_h, zn_symmetry_residual(rc, 'h'));
        }
        ctx.add("eq12_zn_symmetry_quantum_g", n, wq_g, 1e-11);
        ctx.add("eq12_zn_symmetry_quantum_h", n, wq_h, 1e-11);
        ctx.add("eq12_zn_symmetry_classical_g", n, wc_g, 1e-11);
        ctx.add("eq12_zn_symmetry_classical_h", n, wc_h, 1e-11);
    }
    {
        Rng rng = ctx.rng_for("eq15_classical_limit_slope", n);
        const Complex v = sample_spectral(rng, par);
        const LimitSlope printed = classical_limit_slope(v, par);
        const LimitSlope rescaled = classical_limit_slope_rescaled(v, par);
        std::string notes = "printed normalization slope=" + fmt(printed.slope) +
                            " (decays to r); remark-scalar normalization slope=" +
                            fmt(rescaled.slope) + ", residual at w_min=" +
                            fmt(rescaled.residual.back()) +
                            (rescaled.residual.back() < 1e-3 ? " (also decays)"
                                                             : " (does not reach r)");
        ctx.add("eq15_classical_limit_slope", n, std::abs(printed.slope - 1.0), 0.1, notes);
    }
    {
        Rng rng = ctx.rng_for("eq16_zero_pattern", n);
        double worst = 0.0;
        for (int t = 0; t < std::min(cfg.trials, 5); ++t)
            worst = std::max(worst, off_pattern_max(classical_r(sample_spectral(rng, par), par)));
        ctx.add("eq16_zero_pattern", n, worst, 1e-16);
    }
    {
        Rng rng = ctx.rng_for("eq17_cybe", n);
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const Complex v1 = sample_spectral(rng, par);
            const Complex v2 = sample_spectral(rng, par);
            const Complex v3 = sample_spectral(rng, par);
            try {
                worst = std::max(worst, cybe_residual(v1, v2, v3, par));
            } catch (const PoleError&) {
                --t;
                continue;
            }
        }
        ctx.add("eq17_cybe", n, worst, 1e-9);
    }
    {
        Rng rng = ctx.rng_for("eq18_antisymmetry", n);
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t)
            worst = std::max(worst, antisymmetry_residual(sample_spectral(rng, par), par));
        ctx.add("eq18_antisymmetry", n, worst, 1e-10);
    }
}

// ---------------------------------------------------------------- dynamical

ModelParams model_for(const VerifyConfig& cfg, int n) {
    ModelParams par;
    par.n = n;
    par.tau = cfg.tau;
    par.gamma = cfg.gamma;
    return par;
}

void suite_dynamical(Ctx& ctx, int n) {
    const VerifyConfig& cfg = *ctx.cfg;
    const ModelParams par = model_for(cfg, n);
    const EllipticParams epar = par.elliptic();

    {
        // {p_i, q_j} = delta_ij through the bracket engine
        Rng rng = ctx.rng_for("eq21_canonical_pairs", n);
        double worst = 0.0;
        const PhasePoint x = sample_phase_point(rng, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                auto pj = [i, n](const PhasePoint& y) {
                    FieldJet jj;
                    jj.value = CMatrix(1, 1);
                    jj.value(0, 0) = y.p[i];
                    for (int k = 0; k < n; ++k) {
                        CMatrix dp(1, 1), dq(1, 1);
                        if (k == i) dp(0, 0) = 1.0;
                        jj.dp.push_back(dp);
                        jj.dq.push_back(dq);
                    }
                    return jj;
                };
                auto qj = [j, n](const PhasePoint& y) {
                    FieldJet jj;
                    jj.value = CMatrix(1, 1);
                    jj.value(0, 0) = y.q[j];
                    for (int k = 0; k < n; ++k) {
                        CMatrix dp(1, 1), dq(1, 1);
                        if (k == j) dq(0, 0) = 1.0;
                        jj.dp.push_back(dp);
                        jj.dq.push_back(dq);
                    }
                    return jj;
                };
                const SmoothMatrixField fp("p_i", 1, pj);
                const SmoothMatrixField fq("q_j", 1, qj);
                const CMatrix br = poisson_bracket(fp, fq, x);
                worst = std::max(worst, std::abs(br(0, 0) - (i == j ? 1.0 : 0.0)));
            }
        ctx.add("eq21_canonical_pairs", n, worst, 1e-14);
    }
    {
        Rng rng = ctx.rng_for("eq25_bracket", n);
        double w_an = 0.0, w_fd = 0.0, w_agree = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const PhasePoint x = sample_phase_point(rng, n);
            Complex u, v;
            sample_spectral_pair(rng, epar, u, v);
            w_an = std::max(w_an, dynamical_bracket_residual(u, v, x, par));
            w_fd = std::max(w_fd, dynamical_bracket_residual(u, v, x, par,
                                                             RConvention::consistent,
                                                             BracketEngine::fd));
            const SmoothMatrixField lu = krichever_L(u, par), lv = krichever_L(v, par);
            w_agree = std::max(w_agree, max_norm(poisson_bracket(lu, lv, x) -
                                                 fd_bracket_oracle(lu, lv, x)));
        }
        ctx.add("eq25_bracket_analytic", n, w_an, 1e-8);
        ctx.add("eq25_bracket_fd_oracle", n, w_fd, 1e-5);
        ctx.add("eq25_engine_agreement", n, w_agree, 1e-5);
    }
    {
        Rng rng = ctx.rng_for("eq25_convention_probe", n);
        const PhasePoint x = sample_phase_point(rng, n);
        Complex u, v;
        sample_spectral_pair(rng, epar, u, v);
        const auto probe = dynamical_convention_probe(u, v, x, par);
        std::string notes, vanishing;
        double best = -1.0;
        for (const auto& e : probe) {
            notes += e.label + "=" + fmt(e.residual) + "; ";
            if (e.residual < 1e-8) vanishing += e.label + " ";
            if (best < 0.0 || e.residual < best) best = e.residual;
        }
        notes += "vanishing: " + (vanishing.empty() ? "none" : vanishing);
        // flipping bracket and r signs together negates both sides, so the
        // consistent variant vanishes exactly for the two aligned sign pairs
        const bool structured =
            vanishing == "consistent/bracket+/r+ consistent/bracket-/r- ";
        ctx.add("eq25_convention_probe", n, best, 1e-8, notes, structured);
    }
    {
        Rng rng = ctx.rng_for("eq29_dynamical_ybe", n);
        double worst = 0.0;
        for (int t = 0; t < std::min(cfg.trials, 10); ++t) {
            const PhasePoint x = sample_phase_point(rng, n);
            Complex u1, u2, u3, dummy;
            sample_spectral_pair(rng, epar, u1, u2);
            sample_spectral_pair(rng, epar, u3, dummy);
            const Complex d = u2 - u3;
            if (std::abs(sigma_fn(d, epar.tau, epar.eps)) < 1e-4) {
                --t;
                continue;
            }
            try {
                worst = std::max(worst, dynamical_ybe_residual(u1, u2, u3, x, par));
            } catch (const PoleError&) {
                --t;
                continue;
            }
        }
        ctx.add("eq29_dynamical_ybe", n, worst, 1e-7);
    }
    if (tau_is_imaginary(cfg.tau)) {
        // the Hamiltonian is real only on the imaginary-modulus slice
        Rng rng = ctx.rng_for("eq24_hamiltonian_consistency", n);
        const Complex u = sample_spectral(rng, epar);
        const double worst =
            hamiltonian_consistency(u, par, std::min(cfg.trials, 20), cfg.seed ^ 0x9e37);
        ctx.add("eq24_hamiltonian_consistency", n, worst, 1e-9);
    }
    {
        Rng rng = ctx.rng_for("trace_invariants_commute", n);
        double worst = 0.0;
        for (int t = 0; t < std::min(cfg.trials, 10); ++t) {
            const PhasePoint x = sample_phase_point(rng, n);
            Complex u, v;
            sample_spectral_pair(rng, epar, u, v);
            const int k = 1 + static_cast<int>(rng.uniform(0, n));
            const int m = 1 + static_cast<int>(rng.uniform(0, n));
            double scale = 0.0;
            const double res = invariants_commute_residual(u, v, k, m, x, par, &scale);
            worst = std::max(worst, res / std::max(scale, 1.0));
        }
        ctx.add("trace_invariants_commute", n, worst, 1e-8);
    }
}

// ---------------------------------------------------------------- twist

void suite_twist(Ctx& ctx, int n) {
    const VerifyConfig& cfg = *ctx.cfg;
    const ModelParams par = model_for(cfg, n);
    const EllipticParams epar = par.elliptic();

    {
        // frame partials against central differences
        Rng rng = ctx.rng_for("eq14_intertwiner_partials_fd", n);
        double worst = 0.0;
        const double h = 1e-6;
        for (int t = 0; t < std::min(cfg.trials, 5); ++t) {
            const PhasePoint x = sample_phase_point(rng, n);
            const Complex u = sample_spectral(rng, epar);
            const TwistFrame f = twist_g(u, x.q, epar);
            for (int m = 0; m < n; ++m) {
                std::vector<double> qp = x.q, qm = x.q;
                qp[m] += h;
                qm[m] -= h;
                const TwistFrame fp = twist_g(u, qp, epar);
                const TwistFrame fm = twist_g(u, qm, epar);
                CMatrix dfd = fp.A - fm.A;
                dfd *= 1.0 / (2 * h);
                worst = std::max(worst, max_norm(dfd - f.dA[m]) / std::max(max_norm(dfd), 1.0));
                dfd = fp.g - fm.g;
                dfd *= 1.0 / (2 * h);
                worst = std::max(worst, max_norm(dfd - f.dg[m]) / std::max(max_norm(dfd), 1.0));
            }
            worst = std::max(worst, max_norm(f.g * f.g_inv - CMatrix::identity(n)));
        }
        ctx.add("eq14_intertwiner_partials_fd", n, worst, 1e-6);
    }
    {
        Rng rng = ctx.rng_for("eq31_similarity_invariants", n);
        double worst = 0.0;
        for (int t = 0; t < std::min(cfg.trials, 10); ++t) {
            const PhasePoint x = sample_phase_point(rng, n);
            const Complex u = sample_spectral(rng, epar);
            const CMatrix l = krichever_L(u, par).value(x);
            const CMatrix lt = twisted_L(u, par).value(x);
            for (int k = 1; k <= n; ++k)
                worst = std::max(worst, rel(trace_pow(lt, k) - trace_pow(l, k), trace_pow(l, k)));
        }
        ctx.add("eq31_similarity_invariants", n, worst, 1e-9);
    }
    {
        Rng rng = ctx.rng_for("eq32_poisson_lie", n);
        double w_an = 0.0, w_fd = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const PhasePoint x = sample_phase_point(rng, n);
            Complex u, v;
            sample_spectral_pair(rng, epar, u, v);
            w_an = std::max(w_an, nondynamical_bracket_residual(u, v, x, par));
            if (t < 3) {
                // relative disagreement of the two bracket engines
                const SmoothMatrixField ltu = twisted_L(u, par);
                const SmoothMatrixField ltv = twisted_L(v, par);
                const CMatrix ban = poisson_bracket(ltu, ltv, x);
                const CMatrix bfd = fd_bracket_oracle(ltu, ltv, x);
                w_fd = std::max(w_fd, max_norm(ban - bfd) / std::max(max_norm(ban), 1.0));
            }
        }
        ctx.add("eq32_poisson_lie", n, w_an, 1e-7);
        ctx.add("eq32_fd_crosscheck", n, w_fd, 1e-5);
    }
    {
        Rng rng = ctx.rng_for("eq33_twist_consistency", n);
        double worst = 0.0, single = 0.0;
        for (int t = 0; t < std::min(cfg.trials, 5); ++t) {
            const PhasePoint x = sample_phase_point(rng, n);
            Complex u, v;
            sample_spectral_pair(rng, epar, u, v);
            double sc = 0.0;
            worst = std::max(worst, twist_consistency_residual(u, v, x, par, &sc));
            single = std::max(single, sc);
        }
        ctx.add("eq33_twist_consistency", n, worst, 1e-7,
                "joint gauge-rule residual; single-commutator form |[r - rho, Lt1+Lt2]| = " +
                    fmt(single) + " (does not vanish)");
    }
}

// ---------------------------------------------------------------- appendix

void suite_appendix(Ctx& ctx, int n) {
    const VerifyConfig& cfg = *ctx.cfg;
    const ModelParams par = model_for(cfg, n);
    const EllipticParams epar = par.elliptic();
    // twist parameter from the coupling link
    const Complex s =
        -std::sqrt(Complex(par.gamma)) * static_cast<double>(n) /
        sigma_deriv(0.0, par.tau, 1, par.eps);
    const AppendixParams app{s, -1, true};

    {
        Rng rng = ctx.rng_for("eq34_poisson_lie_t", n);
        double worst = 0.0;
        for (int t = 0; t < std::min(cfg.trials, 10); ++t) {
            const PhasePoint x = sample_phase_point(rng, n);
            Complex u, v;
            sample_spectral_pair(rng, epar, u, v);
            worst = std::max(worst, appendix_bracket_residual(u, v, x, app, par));
        }
        ctx.add("eq34_poisson_lie_t", n, worst, 1e-7);
    }
    {
        Rng rng = ctx.rng_for("eq35_factorization", n);
        double worst = 0.0;
        bool stable = true;
        std::string notes;
        for (int t = 0; t < std::min(cfg.trials, 10); ++t) {
            const PhasePoint x = sample_phase_point(rng, n);
            const Complex u = sample_spectral(rng, epar);
            const FactorizationResult res = factorization_residual(u, x, app, par);
            // the globally consistent variant is shift-minus with the scalar
            // term; it must attain tolerance at every seed
            double r_designated = res.min_residual;
            for (const auto& [label, r] : res.grid)
                if (label == "shift-/scalar") r_designated = r;
            worst = std::max(worst, r_designated);
            if (res.min_residual < r_designated / 100.0) stable = false;
            if (t == 0)
                for (const auto& [label, r] : res.grid) notes += label + "=" + fmt(r) + "; ";
        }
        notes += std::string("winning variant: shift-/scalar") +
                 (stable ? " (all seeds)" : " (UNSTABLE)");
        ctx.add("eq35_factorization", n, worst, 1e-8, notes, stable);
    }
    if (tau_is_imaginary(cfg.tau)) {
        Rng rng = ctx.rng_for("eq37_symplectic_map", n);
        double worst = 0.0;
        for (int t = 0; t < std::min(cfg.trials, 5); ++t) {
            const PhasePoint x = sample_phase_point(rng, n);
            auto map = [&](const PhasePoint& y) { return momentum_shift_map(y, s, epar, +1); };
            worst = std::max(worst, symplecticity_residual(map, x));
        }
        ctx.add("eq37_symplectic_map", n, worst, 1e-6);
    }
    {
        Rng rng = ctx.rng_for("vandermonde_constancy", n);
        std::vector<Complex> ratios;
        for (int t = 0; t < 10; ++t) {
            std::vector<Complex> ul;
            for (int k = 0; k < n; ++k)
                ul.emplace_back(rng.uniform(0.1, 1.4), rng.uniform(0.0, 0.2));
            try {
                ratios.push_back(vandermonde_ratio(ul, epar));
            } catch (const PoleError&) {
                --t;
            }
        }
        double worst = 0.0;
        for (const Complex& r : ratios)
            worst = std::max(worst, std::abs(r - ratios.front()) / std::abs(ratios.front()));
        ctx.add("vandermonde_constancy", n, worst, 1e-9);
    }
    {
        Rng rng = ctx.rng_for("ainv_shift_closed_form", n);
        double worst = 0.0;
        for (int t = 0; t < std::min(cfg.trials, 10); ++t) {
            const PhasePoint x = sample_phase_point(rng, n);
            const Complex u = sample_spectral(rng, epar);
            const Complex w(rng.uniform(0.05, 0.3), 0.0);
            worst = std::max(worst, inverse_shift_product_residual(u, w, x.q, epar));
        }
        ctx.add("ainv_shift_closed_form", n, worst, 1e-9);
    }
    if (tau_is_imaginary(cfg.tau)) {
        // bracket residual of T at x equals the twisted-L residual at the
        // shifted point; both are ~0, their gap must stay below tolerance
        // (relative to the bracket magnitude, which sets the round-off scale)
        Rng rng = ctx.rng_for("appendix_consistency_chain", n);
        double worst = 0.0;
        for (int t = 0; t < std::min(cfg.trials, 5); ++t) {
            const PhasePoint x = sample_phase_point(rng, n);
            Complex u, v;
            sample_spectral_pair(rng, epar, u, v);
            const double ra = appendix_bracket_residual(u, v, x, app, par);
            const PhasePoint y = momentum_shift_map(x, s, epar, +1);
            const double rb = nondynamical_bracket_residual(u, v, y, par);
            const double scale = max_norm(
                poisson_bracket(appendix_T(app, u, par), appendix_T(app, v, par), x));
            worst = std::max(worst, std::abs(ra - rb) / std::max(scale, 1.0));
        }
        ctx.add("appendix_consistency_chain", n, worst, 1e-8);
    }
}

}  // namespace

void VerifyConfig::validate() const {
    static const std::vector<std::string> known{"elliptic", "rmatrix", "dynamical",
                                                "twist",    "appendix", "all"};
    if (suites.empty()) throw ValidityError("verify: no suites selected");
    for (const auto& s : suites)
        if (std::find(known.begin(), known.end(), s) == known.end())
            throw ValidityError("verify: unknown suite '" + s + "'");
    if (trials < 1) throw ValidityError("verify: trials must be >= 1");
    if (n_list.empty()) throw ValidityError("verify: empty n list");
    for (int n : n_list)
        if (n < 2 || n > 6) throw ValidityError("verify: n must be within [2, 6]");
    if (tau.imag() <= 0.0) throw InvalidModulusError("verify: Im(tau) must be positive");
    if (gamma <= 0.0) throw ValidityError("verify: gamma must be positive");
    for (const auto& [k, v] : tol_overrides)
        if (v <= 0.0) throw ValidityError("verify: tolerance override must be positive");
}

Report run_verify(const VerifyConfig& cfg) {
    cfg.validate();
    Report report;
    Ctx ctx{&cfg, &report};

    for (int n : cfg.n_list) {
        if (ctx.want("elliptic")) suite_elliptic(ctx, n);
        if (ctx.want("rmatrix")) suite_rmatrix(ctx, n);
        if (ctx.want("dynamical")) suite_dynamical(ctx, n);
        if (ctx.want("twist")) suite_twist(ctx, n);
        if (ctx.want("appendix")) suite_appendix(ctx, n);
    }

    Json suites = Json::array();
    for (const auto& s : cfg.suites) suites.push_back(s);
    Json nl = Json::array();
    for (int n : cfg.n_list) nl.push_back(n);
    Json tols = Json::object();
    for (const auto& [k, v] : cfg.tol_overrides) tols[k] = v;
    report.meta = {{"version", "0.1.0"},
                   {"seed", cfg.seed},
                   {"config",
                    {{"suites", suites},
                     {"n_list", nl},
                     {"tau", complex_to_string(cfg.tau)},
                     {"gamma", cfg.gamma},
                     {"trials", cfg.trials},
                     {"tol_overrides", tols}}}};
    report.sort();
    return report;
}

}  // namespace laxlab
