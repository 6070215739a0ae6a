#include "ckn/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ckn {

std::vector<double> default_eps_ladder() {
    std::vector<double> eps;
    for (int i = 0; i <= 8; ++i) eps.push_back(std::pow(10.0, -2.0 - 0.5 * i));
    return eps;
}

double det_uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53; // [0, 1)
    return lo + (hi - lo) * u;
}

Profile random_bump(std::mt19937_64& rng) {
    const double center = det_uniform(rng, -2.5, 2.5);
    const double halfwidth = det_uniform(rng, 0.5, 2.5);
    return Profile::smooth_bump(center - halfwidth, center + halfwidth);
}

RateFit fit_log_power(const std::vector<std::pair<double, double>>& eps_value) {
    if (eps_value.size() < 5)
        throw InvalidSpecError("fit_log_power: at least 5 points required");
    RateFit fit;
    fit.points = eps_value;

    // Sort by descending eps to locate the pre-asymptotic points.
    std::vector<std::pair<double, double>> pts = eps_value;
    std::sort(pts.begin(), pts.end(),
              [](const auto& l, const auto& r) { return l.first > r.first; });

    std::vector<double> x, y, w;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double eps = pts[i].first, value = pts[i].second;
        if (!(eps > 0.0 && eps < 1.0) || !(value > 0.0))
            throw InvalidSpecError("fit_log_power: points must have 0 < eps < 1 and value > 0");
        x.push_back(std::log(std::log(1.0 / eps)));
        y.push_back(std::log(value));
        w.push_back(i < 3 ? 0.1 : 1.0); // three largest eps down-weighted
    }

    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
        sxx += w[i] * x[i] * x[i];
        sxy += w[i] * x[i] * y[i];
    }
    const double det = sw * sxx - sx * sx;
    fit.exponent = (sw * sxy - sx * sy) / det;
    const double intercept = (sy - fit.exponent * sx) / sw;
    fit.amplitude = std::exp(intercept);

    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / sw;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double yhat = intercept + fit.exponent * x[i];
        ss_res += w[i] * (y[i] - yhat) * (y[i] - yhat);
        ss_tot += w[i] * (y[i] - ybar) * (y[i] - ybar);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

VerifyReport verify_extremizer(const Params& p, const QuadratureConfig& cfg) {
    const RegionInfo region = classify(p);
    if (region.on_C)
        throw InvalidSpecError("verify_extremizer: no extremizer on line C");

    const ExtremizerSpec spec = default_extremizer_spec(p);
    const Profile u = Profile::extremizer(spec, p);
    const WeightedIntegrals w = weighted_integrals(u, p, cfg, Component::PGM);
    if (!(w.M > 0.0)) throw ZeroDenominatorError("verify_extremizer: M = 0");

    VerifyReport report;
    report.params = p;
    report.region = region.canonical;
    report.E_tilde = std::sqrt(w.P * w.G) / w.M;
    report.c_sharp = branch_constants(p).c_sharp;
    report.gap = std::abs(report.E_tilde - report.c_sharp);
    report.err =
        report.E_tilde * w.err * (0.5 / w.P + 0.5 / w.G + 1.0 / w.M) + 1e-15;
    report.tol = 100.0 * report.err;
    report.pass = report.gap <= report.tol;
    return report;
}

std::vector<ScanRow> scan_plane(int N, std::pair<double, double> a_range,
                                std::pair<double, double> b_range, double step,
                                int verify_every, const QuadratureConfig& cfg) {
    if (!(step > 0.0)) throw InvalidSpecError("scan_plane: step > 0 required");
    if (!(a_range.first <= a_range.second) || !(b_range.first <= b_range.second))
        throw InvalidSpecError("scan_plane: ranges must be ordered");

    auto axis = [step](double lo, double hi) {
        std::vector<double> v;
        for (int i = 0;; ++i) {
            const double x = lo + i * step;
            if (x > hi + 0.5 * step) break;
            v.push_back(std::min(x, hi));
        }
        return v;
    };

    std::vector<ScanRow> rows;
    int off_c_counter = 0;
    for (double a : axis(a_range.first, a_range.second)) {
        for (double b : axis(b_range.first, b_range.second)) {
            const Params p{N, a, b};
            ScanRow row;
            row.a = a;
            row.b = b;
            const RegionInfo region = classify(p);
            const BranchConstants bc = branch_constants(p);
            row.region = region.canonical;
            row.c_A = bc.c_A;
            row.c_B = bc.c_B;
            row.c_sharp = bc.c_sharp;
            if (!region.on_C && verify_every > 0 && (++off_c_counter % verify_every == 0)) {
                try {
                    const VerifyReport v = verify_extremizer(p, cfg);
                    row.verified = v.E_tilde;
                    row.gap = v.gap;
                } catch (const std::exception& e) {
                    row.error = e.what();
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

HardyRateReport hardy_rate_study(const Params& p, const std::vector<double>& eps_list,
                                 const QuadratureConfig& cfg) {
    p.validate();
    if (p.a != p.b + 1.0)
        throw InvalidSpecError("hardy_rate_study: requires a = b+1 (line C)");
    if (eps_list.size() < 5)
        throw InvalidSpecError("hardy_rate_study: at least 5 eps values required");
    const auto [emin, emax] = std::minmax_element(eps_list.begin(), eps_list.end());
    if (!(*emax / *emin >= 1e3))
        throw InvalidSpecError("hardy_rate_study: eps values must span >= 3 decades");

    HardyRateReport report;
    report.params = p;
    report.c_sharp = branch_constants(p).c_sharp;
    const double c2 = report.c_sharp * report.c_sharp;

    std::vector<std::pair<double, double>> remainder, denominator, gap;
    for (double eps : eps_list) {
        const Profile u = make_hardy_sequence(CutoffSpec(eps), p);
        const WeightedIntegrals w = weighted_integrals(u, p, cfg, Component::All);
        const double quotient = std::sqrt(w.P * w.G) / w.M;
        remainder.emplace_back(eps, w.G - c2 * w.Q);
        denominator.emplace_back(eps, w.Q);
        gap.emplace_back(eps, quotient * quotient - c2);
        report.quotients.push_back(quotient);
    }
    report.fit_remainder = fit_log_power(remainder);
    report.fit_denominator = fit_log_power(denominator);
    report.fit_gap = fit_log_power(gap);
    return report;
}

DensityReport density_decay_study(const Params& p, const std::vector<double>& eps_list,
                                  const QuadratureConfig& cfg, std::optional<Family> family) {
    const RegionInfo region = classify(p);
    if (region.on_C)
        throw InvalidSpecError("density_decay_study: requires (a,b) off line C");
    if (eps_list.size() < 5)
        throw InvalidSpecError("density_decay_study: at least 5 eps values required");

    DensityReport report;
    report.params = p;
    const ExtremizerSpec spec = default_extremizer_spec(p, family);
    report.family = spec.family;
    if (spec.family == Family::A)
        report.paper_case = region.in_A1 ? 1 : 2;
    else
        report.paper_case = region.in_B1 ? 3 : 4;

    const Profile u = Profile::extremizer(spec, p);
    const auto u_kinks = u.kink_radii();

    std::vector<std::pair<double, double>> cross_points;
    for (double eps : eps_list) {
        const CutoffSpec cut{eps};

        // Cross term: |u eta'|^2 against the G-weight; eta' lives on the two
        // ramp annuli only.
        std::vector<double> kinks = u_kinks;
        kinks.insert(kinks.end(), {cut.r_inner_lo(), cut.r_inner_hi(), cut.r_outer_lo(),
                                   cut.r_outer_hi()});
        RadialFn cross(
            [&u, &cut](double r) {
                const double d = cut.eta_dr(r);
                if (d == 0.0) return 0.0;
                const double v = u.value(r) * d;
                return v * v;
            },
            kinks, std::make_pair(cut.r_inner_lo(), cut.r_outer_hi()));
        const double sphere = integrate_sphere(u.angular(), 2, p.N);
        const double cross_val =
            sphere * integrate_radial(cross, p.N - 1.0 - 2.0 * p.b, cfg).value;

        // (G + P)-norm of u - eta u = (1 - eta) u; not compactly supported.
        RadialFn diff_p(
            [&u, &cut](double r) {
                const double v = (1.0 - cut.eta(r)) * u.value(r);
                return v * v;
            },
            kinks);
        RadialFn diff_g(
            [&u, &cut](double r) {
                const double v = (1.0 - cut.eta(r)) * u.deriv(r) - cut.eta_dr(r) * u.value(r);
                return v * v;
            },
            kinks);
        const double P_part = sphere * integrate_radial(diff_p, p.N - 1.0 - 2.0 * p.a, cfg).value;
        const double G_part = sphere * integrate_radial(diff_g, p.N - 1.0 - 2.0 * p.b, cfg).value;

        report.rows.push_back({eps, std::sqrt(P_part + G_part), cross_val});
        cross_points.emplace_back(eps, cross_val);
    }

    report.cross_fit = fit_log_power(cross_points);

    // Decay assertions on rows ordered by decreasing eps.
    std::vector<DensityRow> byeps = report.rows;
    std::sort(byeps.begin(), byeps.end(),
              [](const DensityRow& l, const DensityRow& r) { return l.eps > r.eps; });
    report.cross_decays = byeps.back().cross_term < byeps.front().cross_term;
    report.monotone_tail = true;
    const std::size_t tail = std::min<std::size_t>(5, byeps.size());
    for (std::size_t i = byeps.size() - tail; i + 1 < byeps.size(); ++i)
        if (!(byeps[i + 1].diff_norm < byeps[i].diff_norm)) report.monotone_tail = false;
    return report;
}

AuditReport branch_bound_audit(const Params& p, int trials, const QuadratureConfig& cfg,
                               std::uint64_t seed) {
    p.validate();
    if (trials < 10) throw InvalidSpecError("branch_bound_audit: trials >= 10 required");

    const RegionInfo region = classify(p);
    const BranchConstants bc = branch_constants(p);
    AuditReport report;
    report.params = p;
    report.c_A = bc.c_A;
    report.c_B = bc.c_B;
    report.c_sharp = bc.c_sharp;
    report.trials = trials;
    report.seed = seed;

    std::mt19937_64 rng(seed);
    double min_q = std::numeric_limits<double>::infinity();
    for (int i = 0; i < trials; ++i) {
        const Profile bump = random_bump(rng);
        const WeightedIntegrals w = weighted_integrals(bump, p, cfg, Component::PGM);
        const double pg = w.P * w.G;
        const double m2 = w.M * w.M;
        const double tol = 50.0 * w.err * (w.P + w.G + bc.c_sharp * bc.c_sharp * w.M) + 1e-30;
        if (pg < bc.c_A * bc.c_A * m2 - tol) ++report.violations_A;
        if (pg < bc.c_B * bc.c_B * m2 - tol) ++report.violations_B;
        min_q = std::min(min_q, std::sqrt(pg) / w.M);
    }
    report.min_quotient = min_q;
    report.extremizer_quotient = region.on_C
                                     ? std::numeric_limits<double>::quiet_NaN()
                                     : verify_extremizer(p, cfg).E_tilde;
    return report;
}

} // namespace ckn
