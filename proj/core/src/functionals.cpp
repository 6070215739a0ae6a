#include "ckn/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ckn {

namespace {

// Integrate r^p f(r) dr with the window seeded from the integrand's own peak
// when the profile is not compactly supported.
IntegralResult integrate_component(const RadialFn& f, double p, const QuadratureConfig& cfg,
                                   const char* component) {
    QuadratureConfig local = cfg;
    if (!f.support) {
        try {
            const auto [lo, hi] = auto_window(f, p);
            local.s_min = lo;
            local.s_max = hi;
        } catch (const PeakNotFoundError&) {
            throw DivergenceError(std::string("weighted integral ") + component +
                                      ": integrand grows toward both window ends",
                                  component);
        }
    }
    try {
        return integrate_radial(f, p, local);
    } catch (const DivergenceError&) {
        throw DivergenceError(std::string("weighted integral ") + component + " diverges",
                              component);
    }
}

void require_compact(const Profile& u, const char* where) {
    const auto supp = u.support();
    if (!supp)
        throw UnsupportedProfileError(std::string(where) +
                                      ": profile must be compactly supported away from 0");
}

} // namespace

WeightedIntegrals weighted_integrals(const Profile& u, const Params& p,
                                     const QuadratureConfig& cfg, Component which) {
    p.validate();
    if (!u.angular().supports_dimension(p.N))
        throw InvalidSpecError("weighted_integrals: angular factor unsupported for N");
    const double sphere = integrate_sphere(u.angular(), 2, p.N);

    WeightedIntegrals w;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    w.P = w.G = w.M = w.Q = nan;

    const RadialFn u2 = u.squared();
    if (has(which, Component::P)) {
        const IntegralResult r = integrate_component(u2, p.N - 1.0 - 2.0 * p.a, cfg, "P");
        w.P = sphere * r.value;
        w.err = std::max(w.err, sphere * r.abs_error_estimate);
    }
    if (has(which, Component::G)) {
        const IntegralResult r =
            integrate_component(u.deriv_squared(), p.N - 1.0 - 2.0 * p.b, cfg, "G");
        w.G = sphere * r.value;
        w.err = std::max(w.err, sphere * r.abs_error_estimate);
    }
    if (has(which, Component::M)) {
        const IntegralResult r = integrate_component(u2, p.N - 2.0 - p.a - p.b, cfg, "M");
        w.M = sphere * r.value;
        w.err = std::max(w.err, sphere * r.abs_error_estimate);
    }
    if (has(which, Component::Q)) {
        const IntegralResult r = integrate_component(u2, p.N - 3.0 - 2.0 * p.b, cfg, "Q");
        w.Q = sphere * r.value;
        w.err = std::max(w.err, sphere * r.abs_error_estimate);
    }
    return w;
}

double rayleigh_tilde(const Profile& u, const Params& p, const QuadratureConfig& cfg) {
    const WeightedIntegrals w = weighted_integrals(u, p, cfg, Component::PGM);
    if (!(w.M > 0.0))
        throw ZeroDenominatorError("rayleigh_tilde: M = 0 (u vanishes a.e.)");
    return std::sqrt(w.P * w.G) / w.M;
}

double rayleigh_full(const Profile& u, const Params& p, const QuadratureConfig& cfg) {
    if (u.angular().is_constant()) return rayleigh_tilde(u, p, cfg);
    const double grad_energy = integrate_sphere_grad_sq(u.angular(), p.N);
    const WeightedIntegrals w = weighted_integrals(u, p, cfg, Component::All);
    if (!(w.M > 0.0))
        throw ZeroDenominatorError("rayleigh_full: M = 0 (u vanishes a.e.)");
    const double sphere = integrate_sphere(u.angular(), 2, p.N);
    const double g_full = w.G + grad_energy * (w.Q / sphere);
    return std::sqrt(w.P * g_full) / w.M;
}

double expand_square_direct(const Profile& u, const Params& p, const ExpandSquareParams& esp,
                            const QuadratureConfig& cfg) {
    p.validate();
    require_compact(u, "expand_square_direct");
    const double sphere = integrate_sphere(u.angular(), 2, p.N);
    const double t = esp.t, s = esp.s;
    const double a = p.a, b = p.b;
    RadialFn f(
        [&u, t, s, a, b](double r) {
            const double f0 = u.value(r);
            const double f1 = u.deriv(r);
            const double v = std::pow(r, -b) * f1 + t * std::pow(r, -a) * f0 +
                             s * std::pow(r, -b - 1.0) * f0;
            return v * v;
        },
        u.kink_radii(), u.support());
    const IntegralResult res = integrate_radial(f, p.N - 1.0, cfg);
    return sphere * res.value;
}

double expand_square_identity(const WeightedIntegrals& w, const Params& p,
                              const ExpandSquareParams& esp) {
    p.validate();
    const double t = esp.t, s = esp.s;
    return w.G + t * t * w.P + t * (2.0 * s - (p.N - p.a - p.b - 1.0)) * w.M +
           s * (s - (p.N - 2.0 * p.b - 2.0)) * w.Q;
}

PairResult ibp_check(const Profile& u, const Params& p, double d, const QuadratureConfig& cfg) {
    p.validate();
    require_compact(u, "ibp_check");
    const double sphere = integrate_sphere(u.angular(), 2, p.N);

    RadialFn ffp([&u](double r) { return u.value(r) * u.deriv(r); }, u.kink_radii(), u.support());
    const IntegralResult lhs = integrate_radial(ffp, p.N - 1.0 - d, cfg);
    const IntegralResult sq = integrate_radial(u.squared(), p.N - 2.0 - d, cfg);

    PairResult out;
    out.lhs = sphere * lhs.value;
    out.rhs = -0.5 * (p.N - d - 1.0) * sphere * sq.value;
    out.err = sphere * (lhs.abs_error_estimate +
                        0.5 * std::abs(p.N - d - 1.0) * sq.abs_error_estimate);
    return out;
}

PairResult hardy_remainder(const Profile& u, const Params& p, const QuadratureConfig& cfg) {
    p.validate();
    if (p.a != p.b + 1.0)
        throw InvalidSpecError("hardy_remainder: requires a = b+1 (line C)");
    require_compact(u, "hardy_remainder");

    const double csharp = branch_constants(p).c_sharp; // |N-2(b+1)|/2
    const WeightedIntegrals w = weighted_integrals(u, p, cfg, Component::G | Component::Q);

    const double gamma = 0.5 * (p.N - 2.0 * p.b - 2.0);
    RadialFn rem(
        [&u, gamma](double r) {
            const double f0 = u.value(r);
            const double f1 = u.deriv(r);
            const double v = f1 * std::pow(r, gamma) + gamma * std::pow(r, gamma - 1.0) * f0;
            return v * v;
        },
        u.kink_radii(), u.support());
    const double sphere = integrate_sphere(u.angular(), 2, p.N);
    const IntegralResult rhs = integrate_radial(rem, 1.0, cfg);

    PairResult out;
    out.lhs = w.G - csharp * csharp * w.Q;
    out.rhs = sphere * rhs.value;
    out.err = w.err * (1.0 + csharp * csharp) + sphere * rhs.abs_error_estimate;
    return out;
}

double el_residual(const Profile& u, const Params& p, double t, ElBranch branch, int samples) {
    p.validate();
    if (samples < 1) throw InvalidSpecError("el_residual: samples >= 1 required");
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double s = samples == 1 ? 0.0 : -std::log(10.0) + 2.0 * std::log(10.0) * i / (samples - 1);
        const double r = std::exp(s);
        const double f0 = u.value(r);
        if (!(f0 > 0.0))
            throw NumericError("el_residual: non-positive profile value at a sample radius");
        double res = u.deriv(r) / f0 - t * std::pow(r, p.b - p.a);
        if (branch == ElBranch::sN) res += (p.N - 2.0 * p.b - 2.0) / r;
        worst = std::max(worst, std::abs(res));
    }
    return worst;
}

double norm_Htilde(const Profile& u, const Params& p, const QuadratureConfig& cfg) {
    const WeightedIntegrals w = weighted_integrals(u, p, cfg, Component::P | Component::G);
    return std::sqrt(w.G + w.P);
}

} // namespace ckn
