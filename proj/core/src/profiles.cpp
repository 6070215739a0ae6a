#include "ckn/profiles.hpp"

#include <algorithm>
#include <cmath>

namespace ckn {

namespace {
constexpr double kLogCap = 700.0;

double guarded_exp(double logv, OverflowPolicy policy, const char* what) {
    if (logv < -kLogCap) return 0.0;
    if (logv > kLogCap) {
        if (policy == OverflowPolicy::Zero) return 0.0;
        throw NonFiniteError(std::string(what) + ": |log value| > 700 (overflow)");
    }
    return std::exp(logv);
}

// Core closed-form evaluation; callers are responsible for validity.
std::pair<double, double> extremizer_value_deriv(Family family, double t, const Params& p,
                                                 double r, OverflowPolicy policy) {
    const double expo = p.b + 1.0 - p.a; // nonzero off line C
    const double s = std::log(r);
    double logu = (t / expo) * std::exp(expo * s);
    double power_coeff = 0.0;
    if (family == Family::B) {
        power_coeff = 2.0 * (p.b + 1.0) - p.N;
        logu += power_coeff * s;
    }
    const double u = guarded_exp(logu, policy, "eval_extremizer");
    if (u == 0.0) return {0.0, 0.0};
    const double logderiv = t * std::exp((p.b - p.a) * s) + power_coeff / r;
    return {u, u * logderiv};
}
} // namespace

CutoffSpec::CutoffSpec(double eps) : eps_(eps) {
    if (!(eps > 0.0) || !(eps < eps_max))
        throw InvalidSpecError("CutoffSpec: eps must lie in (0, 0.3)");
    eps2_ = eps_ * eps_;
    inv_eps_ = 1.0 / eps_;
    inv_eps2_ = 1.0 / eps2_;
    log_inv_eps_ = std::log(inv_eps_);
}

double CutoffSpec::eta(double r) const {
    if (r <= eps2_ || r >= inv_eps2_) return 0.0;
    if (r < eps_) return std::log(r / eps2_) / log_inv_eps_;
    if (r <= inv_eps_) return 1.0;
    return std::log(1.0 / (eps2_ * r)) / log_inv_eps_; // ramps 1 -> 0 on [1/eps, 1/eps^2]
}

double CutoffSpec::eta_dr(double r) const {
    if (r > eps2_ && r < eps_) return 1.0 / (log_inv_eps_ * r);
    if (r > inv_eps_ && r < inv_eps2_) return -1.0 / (log_inv_eps_ * r);
    return 0.0;
}

ValidityResult validity_check(const ExtremizerSpec& spec, const Params& p) {
    p.validate();
    if (!(std::isfinite(spec.t)) || spec.t == 0.0)
        return {false, "t must be a nonzero finite real"};
    if (!spec.angular.supports_dimension(p.N))
        return {false, "angular factor kind unsupported for this dimension"};
    const RegionInfo region = classify(p);
    if (region.on_C) return {false, "a = b+1 excluded (line C has no extremizers)"};
    if (spec.family == Family::A) {
        if (!region.in_A()) return {false, "family A requires (a,b) in region A"};
        if (region.in_A1 && spec.t >= 0.0) return {false, "t must be negative in A1"};
        if (region.in_A2 && spec.t <= 0.0) return {false, "t must be positive in A2"};
    } else {
        if (!region.in_B()) return {false, "family B requires (a,b) in region B"};
        if (region.in_B1 && spec.t <= 0.0) return {false, "t must be positive in B1"};
        if (region.in_B2 && spec.t >= 0.0) return {false, "t must be negative in B2"};
    }
    return {true, ""};
}

ExtremizerSpec default_extremizer_spec(const Params& p, std::optional<Family> family) {
    const RegionInfo region = classify(p);
    if (region.on_C)
        throw InvalidSpecError("default_extremizer_spec: no extremizer on line C");
    ExtremizerSpec spec;
    spec.family = family.value_or(
        (region.canonical == Region::A1 || region.canonical == Region::A2) ? Family::A : Family::B);
    if (spec.family == Family::A)
        spec.t = region.in_A1 ? -1.0 : 1.0;
    else
        spec.t = region.in_B1 ? 1.0 : -1.0;
    const ValidityResult v = validity_check(spec, p);
    if (!v) throw InvalidSpecError("default_extremizer_spec: " + v.reason);
    return spec;
}

std::pair<double, double> eval_extremizer(const ExtremizerSpec& spec, const Params& p, double r,
                                          OverflowPolicy policy) {
    const ValidityResult v = validity_check(spec, p);
    if (!v) throw InvalidSpecError("eval_extremizer: " + v.reason);
    if (!(r > 0.0)) throw InvalidSpecError("eval_extremizer: r > 0 required");
    return extremizer_value_deriv(spec.family, spec.t, p, r, policy);
}

// ---------------------------------------------------------------------------
// Profile

Profile Profile::extremizer(const ExtremizerSpec& spec, const Params& p, OverflowPolicy policy) {
    const ValidityResult v = validity_check(spec, p);
    if (!v) throw InvalidSpecError("Profile::extremizer: " + v.reason);
    return Profile(ExtremizerRadial{spec.family, spec.t, p, policy}, spec.angular);
}

Profile Profile::cutoff_eta(const CutoffSpec& c) {
    return Profile(PowerCutoff{0.0, c, OverflowPolicy::Raise}, AngularFactor::constant(1.0));
}

Profile Profile::power_cutoff(double kappa, std::optional<CutoffSpec> c, OverflowPolicy policy) {
    if (!std::isfinite(kappa)) throw InvalidSpecError("Profile::power_cutoff: kappa must be finite");
    return Profile(PowerCutoff{kappa, std::move(c), policy}, AngularFactor::constant(1.0));
}

Profile Profile::pure_power(double kappa) {
    return power_cutoff(kappa, std::nullopt);
}

Profile Profile::grid(double s_min, double s_max, std::vector<double> values, AngularFactor D) {
    if (!(s_min < s_max)) throw InvalidSpecError("Profile::grid: s_min < s_max required");
    if (values.size() < 3) throw InvalidSpecError("Profile::grid: at least 3 nodes required");
    if (values.front() != 0.0 || values.back() != 0.0)
        throw InvalidSpecError("Profile::grid: endpoint values must be zero (compact support)");
    return Profile(Grid{s_min, s_max, std::move(values)}, std::move(D));
}

Profile Profile::smooth_bump(double s_lo, double s_hi) {
    if (!(s_lo < s_hi)) throw InvalidSpecError("Profile::smooth_bump: s_lo < s_hi required");
    return Profile(SmoothBump{s_lo, s_hi}, AngularFactor::constant(1.0));
}

Profile Profile::truncated(const CutoffSpec& c) const {
    return Profile(Truncated{std::make_shared<Profile>(*this), c}, angular_);
}

Profile Profile::dilated(double lambda) const {
    if (!(lambda > 0.0)) throw InvalidSpecError("Profile::dilated: lambda > 0 required");
    // Grid profiles dilate exactly by a shift in s.
    if (const auto* gp = std::get_if<Grid>(&radial_)) {
        const double shift = std::log(lambda);
        return Profile(Grid{gp->s_min - shift, gp->s_max - shift, gp->values}, angular_);
    }
    return Profile(Dilated{std::make_shared<Profile>(*this), lambda}, angular_);
}

Profile Profile::with_angular(AngularFactor D) const {
    Profile copy(*this);
    copy.angular_ = std::move(D);
    return copy;
}

namespace {

double grid_value(const Profile::Grid& g, double r) {
    const double s = std::log(r);
    if (s <= g.s_min || s >= g.s_max) return 0.0;
    const std::size_t m = g.values.size();
    const double h = (g.s_max - g.s_min) / static_cast<double>(m - 1);
    const double x = (s - g.s_min) / h;
    std::size_t i = std::min(static_cast<std::size_t>(x), m - 2);
    const double frac = x - static_cast<double>(i);
    return g.values[i] * (1.0 - frac) + g.values[i + 1] * frac;
}

double grid_deriv(const Profile::Grid& g, double r) {
    const double s = std::log(r);
    if (s <= g.s_min || s >= g.s_max) return 0.0;
    const std::size_t m = g.values.size();
    const double h = (g.s_max - g.s_min) / static_cast<double>(m - 1);
    const double x = (s - g.s_min) / h;
    std::size_t i = std::min(static_cast<std::size_t>(x), m - 2);
    return (g.values[i + 1] - g.values[i]) / h / r; // dw/ds * ds/dr
}

double bump_value(const Profile::SmoothBump& bump, double r) {
    const double s = std::log(r);
    if (s <= bump.s_lo || s >= bump.s_hi) return 0.0;
    const double z = (2.0 * s - (bump.s_lo + bump.s_hi)) / (bump.s_hi - bump.s_lo);
    const double d = 1.0 - z * z;
    if (d <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / d);
}

double bump_deriv(const Profile::SmoothBump& bump, double r) {
    const double s = std::log(r);
    if (s <= bump.s_lo || s >= bump.s_hi) return 0.0;
    const double z = (2.0 * s - (bump.s_lo + bump.s_hi)) / (bump.s_hi - bump.s_lo);
    const double d = 1.0 - z * z;
    if (d <= 0.0) return 0.0;
    const double w = std::exp(1.0 - 1.0 / d);
    const double dz_ds = 2.0 / (bump.s_hi - bump.s_lo);
    return w * (-2.0 * z / (d * d)) * dz_ds / r;
}

} // namespace

double Profile::value(double r) const {
    if (!(r > 0.0)) throw InvalidSpecError("Profile::value: r > 0 required");
    return std::visit(
        [r](const auto& radial) -> double {
            using T = std::decay_t<decltype(radial)>;
            if constexpr (std::is_same_v<T, ExtremizerRadial>) {
                return extremizer_value_deriv(radial.family, radial.t, radial.params, r,
                                              radial.policy)
                    .first;
            } else if constexpr (std::is_same_v<T, PowerCutoff>) {
                const double eta = radial.cutoff ? radial.cutoff->eta(r) : 1.0;
                if (eta == 0.0) return 0.0;
                const double pw =
                    guarded_exp(radial.kappa * std::log(r), radial.policy, "Profile power");
                return pw * eta;
            } else if constexpr (std::is_same_v<T, Truncated>) {
                const double eta = radial.cutoff.eta(r);
                return eta == 0.0 ? 0.0 : eta * radial.base->value(r);
            } else if constexpr (std::is_same_v<T, Grid>) {
                return grid_value(radial, r);
            } else if constexpr (std::is_same_v<T, SmoothBump>) {
                return bump_value(radial, r);
            } else {
                return radial.base->value(radial.lambda * r);
            }
        },
        radial_);
}

double Profile::deriv(double r) const {
    if (!(r > 0.0)) throw InvalidSpecError("Profile::deriv: r > 0 required");
    return std::visit(
        [r](const auto& radial) -> double {
            using T = std::decay_t<decltype(radial)>;
            if constexpr (std::is_same_v<T, ExtremizerRadial>) {
                return extremizer_value_deriv(radial.family, radial.t, radial.params, r,
                                              radial.policy)
                    .second;
            } else if constexpr (std::is_same_v<T, PowerCutoff>) {
                const double eta = radial.cutoff ? radial.cutoff->eta(r) : 1.0;
                const double deta = radial.cutoff ? radial.cutoff->eta_dr(r) : 0.0;
                if (eta == 0.0 && deta == 0.0) return 0.0;
                const double pw =
                    guarded_exp(radial.kappa * std::log(r), radial.policy, "Profile power");
                if (pw == 0.0) return 0.0;
                return pw * (radial.kappa / r * eta + deta);
            } else if constexpr (std::is_same_v<T, Truncated>) {
                const double eta = radial.cutoff.eta(r);
                const double deta = radial.cutoff.eta_dr(r);
                if (eta == 0.0 && deta == 0.0) return 0.0;
                return deta * radial.base->value(r) + eta * radial.base->deriv(r);
            } else if constexpr (std::is_same_v<T, Grid>) {
                return grid_deriv(radial, r);
            } else if constexpr (std::is_same_v<T, SmoothBump>) {
                return bump_deriv(radial, r);
            } else {
                return radial.lambda * radial.base->deriv(radial.lambda * r);
            }
        },
        radial_);
}

std::vector<double> Profile::kink_radii() const {
    std::vector<double> out = std::visit(
        [](const auto& radial) -> std::vector<double> {
            using T = std::decay_t<decltype(radial)>;
            if constexpr (std::is_same_v<T, ExtremizerRadial>) {
                return {};
            } else if constexpr (std::is_same_v<T, PowerCutoff>) {
                if (!radial.cutoff) return {};
                const auto& c = *radial.cutoff;
                return {c.r_inner_lo(), c.r_inner_hi(), c.r_outer_lo(), c.r_outer_hi()};
            } else if constexpr (std::is_same_v<T, Truncated>) {
                auto ks = radial.base->kink_radii();
                const auto& c = radial.cutoff;
                ks.insert(ks.end(),
                          {c.r_inner_lo(), c.r_inner_hi(), c.r_outer_lo(), c.r_outer_hi()});
                return ks;
            } else if constexpr (std::is_same_v<T, Grid>) {
                std::vector<double> ks;
                const std::size_t m = radial.values.size();
                ks.reserve(m);
                const double h = (radial.s_max - radial.s_min) / static_cast<double>(m - 1);
                for (std::size_t i = 0; i < m; ++i)
                    ks.push_back(std::exp(radial.s_min + static_cast<double>(i) * h));
                return ks;
            } else if constexpr (std::is_same_v<T, SmoothBump>) {
                return {std::exp(radial.s_lo), std::exp(radial.s_hi)};
            } else {
                auto ks = radial.base->kink_radii();
                for (double& k : ks) k /= radial.lambda;
                return ks;
            }
        },
        radial_);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<std::pair<double, double>> Profile::support() const {
    return std::visit(
        [](const auto& radial) -> std::optional<std::pair<double, double>> {
            using T = std::decay_t<decltype(radial)>;
            if constexpr (std::is_same_v<T, ExtremizerRadial>) {
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, PowerCutoff>) {
                if (!radial.cutoff) return std::nullopt;
                return std::make_pair(radial.cutoff->r_inner_lo(), radial.cutoff->r_outer_hi());
            } else if constexpr (std::is_same_v<T, Truncated>) {
                double lo = radial.cutoff.r_inner_lo(), hi = radial.cutoff.r_outer_hi();
                if (auto base = radial.base->support()) {
                    lo = std::max(lo, base->first);
                    hi = std::min(hi, base->second);
                    if (!(lo < hi)) hi = lo * (1.0 + 1e-15); // empty intersection: u == 0
                }
                return std::make_pair(lo, hi);
            } else if constexpr (std::is_same_v<T, Grid>) {
                return std::make_pair(std::exp(radial.s_min), std::exp(radial.s_max));
            } else if constexpr (std::is_same_v<T, SmoothBump>) {
                return std::make_pair(std::exp(radial.s_lo), std::exp(radial.s_hi));
            } else {
                auto base = radial.base->support();
                if (!base) return std::nullopt;
                return std::make_pair(base->first / radial.lambda, base->second / radial.lambda);
            }
        },
        radial_);
}

const Profile::Grid* Profile::as_grid() const noexcept {
    return std::get_if<Grid>(&radial_);
}

RadialFn Profile::as_radial_fn() const {
    return RadialFn([*this](double r) { return value(r); }, kink_radii(), support());
}

RadialFn Profile::squared() const {
    return RadialFn(
        [*this](double r) {
            const double v = value(r);
            return v * v;
        },
        kink_radii(), support());
}

RadialFn Profile::deriv_squared() const {
    return RadialFn(
        [*this](double r) {
            const double d = deriv(r);
            return d * d;
        },
        kink_radii(), support());
}

// ---------------------------------------------------------------------------
// Factories and checks

Profile make_cutoff_eta(const CutoffSpec& c) { return Profile::cutoff_eta(c); }

Profile make_hardy_sequence(const CutoffSpec& c, const Params& p) {
    p.validate();
    if (p.a != p.b + 1.0)
        throw InvalidSpecError("make_hardy_sequence: requires a = b+1 (line C)");
    const double kappa = -(p.N - 2.0 * p.b - 2.0) / 2.0;
    return Profile::power_cutoff(kappa, c);
}

Profile truncate_profile(const Profile& u, const CutoffSpec& c) { return u.truncated(c); }

Profile sample_to_grid(const Profile& u, double s_min, double s_max, int nodes) {
    if (nodes < 3) throw InvalidSpecError("sample_to_grid: at least 3 nodes required");
    std::vector<double> values(static_cast<std::size_t>(nodes), 0.0);
    const double h = (s_max - s_min) / static_cast<double>(nodes - 1);
    for (int i = 1; i + 1 < nodes; ++i) values[i] = u.value(std::exp(s_min + i * h));
    return Profile::grid(s_min, s_max, std::move(values), u.angular());
}

bool envelope_check(const Profile& u, const Params& p, int samples) {
    p.validate();
    if (samples < 16) throw InvalidSpecError("envelope_check: samples >= 16 required");
    const RegionInfo region = classify(p);
    if (region.on_C)
        throw InvalidSpecError("envelope_check: envelope class undefined on line C");
    const bool b_shape = region.canonical == Region::B1 || region.canonical == Region::B2;
    const double expo = p.b + 1.0 - p.a;
    const double power = b_shape ? 2.0 * (p.b + 1.0) - p.N : 0.0;

    std::vector<double> radii(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i)
        radii[i] = std::pow(10.0, -6.0 + 12.0 * i / (samples - 1));
    // The decaying end of the envelope: r -> inf when b+1-a > 0, r -> 0 otherwise.
    const std::size_t decay_idx = expo > 0.0 ? radii.size() - 1 : 0;

    for (int ci = 0; ci <= 48; ++ci) {
        const double C = std::pow(10.0, -6.0 + 0.25 * ci);
        double worst = 0.0;
        std::size_t argmax = 0;
        bool feasible = true;
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const double r = radii[i];
            const double uv = std::abs(u.value(r));
            if (uv == 0.0) continue;
            const double log_env = power * std::log(r) - C * std::exp(expo * std::log(r));
            const double log_ratio = std::log(uv) - log_env;
            if (log_ratio > kLogCap) {
                feasible = false;
                break;
            }
            const double ratio = std::exp(log_ratio);
            if (ratio > worst) {
                worst = ratio;
                argmax = i;
            }
        }
        if (!feasible) continue;
        if (worst == 0.0) return true; // u vanishes on all samples
        if (argmax != decay_idx) {
            const double r = radii[decay_idx];
            const double uv = std::abs(u.value(r));
            const double log_env = power * std::log(r) - C * std::exp(expo * std::log(r));
            const double end_ratio = uv == 0.0 ? 0.0 : std::exp(std::log(uv) - log_env);
            if (end_ratio < 0.999 * worst) return true;
        }
    }
    return false;
}

} // namespace ckn
