#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ckn/angular.hpp"
#include "ckn/params.hpp"
#include "ckn/quadrature.hpp"

namespace ckn {

/// What to do when a closed-form evaluation leaves the representable range
/// (|log u| > 700).  Underflow (log u < -700) always evaluates to 0; the
/// policy governs the overflow side.
enum class OverflowPolicy { Raise, Zero };

/// The logarithmic cutoff eta_eps: 1 on [eps, 1/eps], log ramps down to 0 on
/// [eps^2, eps] and [1/eps, 1/eps^2], 0 outside.  The a.e. radial derivative
/// is +-(log 1/eps)^{-1}/r on the open ramps (+ inner, - outer) and 0
/// elsewhere.  The mollifier that would smooth the four kinks has support
/// radius eps^2/2; it is not applied here, only its scale is documented.
struct CutoffSpec {
    static constexpr double eps_max = 0.3;

    explicit CutoffSpec(double eps);

    double eps() const noexcept { return eps_; }
    double r_inner_lo() const noexcept { return eps2_; }
    double r_inner_hi() const noexcept { return eps_; }
    double r_outer_lo() const noexcept { return inv_eps_; }
    double r_outer_hi() const noexcept { return inv_eps2_; }
    double mollifier_radius() const noexcept { return 0.5 * eps2_; }

    double eta(double r) const;
    double eta_dr(double r) const; // a.e.; 0 at the exact kink radii

private:
    double eps_, eps2_, inv_eps_, inv_eps2_, log_inv_eps_;
};

enum class Family { A, B };

/// Closed-form extremizer family:
///   A: u(r) = exp(t r^{b+1-a} / (b+1-a)),             t < 0 in A1, t > 0 in A2
///   B: u(r) = r^{2(b+1)-N} exp(t r^{b+1-a} / (b+1-a)), t > 0 in B1, t < 0 in B2
/// times an angular factor D(sigma).  The sign rule is equivalent to
/// t (b+1-a) < 0: the radial profile decays at the end where the weights are
/// heaviest.  a = b+1 admits no extremizer.
struct ExtremizerSpec {
    Family family = Family::A;
    double t = -1.0;
    AngularFactor angular = AngularFactor::constant(1.0);
};

struct ValidityResult {
    bool ok = false;
    std::string reason;
    explicit operator bool() const noexcept { return ok; }
};

/// Theorem-style sign/region validity of an extremizer spec at p.
ValidityResult validity_check(const ExtremizerSpec& spec, const Params& p);

/// Region-appropriate default spec (|t| = 1; family from the canonical label
/// unless forced).  Throws on line C.
ExtremizerSpec default_extremizer_spec(const Params& p,
                                       std::optional<Family> family = std::nullopt);

/// Radial value and radial derivative of the extremizer at r > 0 (the
/// angular factor multiplies separately and cancels in every quotient).
std::pair<double, double> eval_extremizer(const ExtremizerSpec& spec, const Params& p, double r,
                                          OverflowPolicy policy = OverflowPolicy::Raise);

/// A trial function u(x) = radial(r) * D(x/|x|).  Radial parts are one of:
/// closed-form extremizers, power-times-cutoff (or pure power), a truncation
/// eta_eps * base, a grid-sampled profile (linear in log radius, zero at both
/// endpoints), a smooth compact bump in log radius, or a dilation of another
/// profile.  Profiles are immutable; evaluation is pure and thread-safe.
class Profile {
public:
    struct ExtremizerRadial {
        Family family;
        double t;
        Params params;
        OverflowPolicy policy;
    };
    struct PowerCutoff {
        double kappa;
        std::optional<CutoffSpec> cutoff; // nullopt: pure power r^kappa
        OverflowPolicy policy;
    };
    struct Truncated {
        std::shared_ptr<const Profile> base;
        CutoffSpec cutoff;
    };
    struct Grid {
        double s_min;
        double s_max;
        std::vector<double> values; // at uniform s-nodes; first/last must be 0
    };
    struct SmoothBump {
        double s_lo;
        double s_hi; // exp(1 - 1/(1-z^2)) in z = affine(s), peak value 1
    };
    struct Dilated {
        std::shared_ptr<const Profile> base;
        double lambda; // value(r) = base(lambda r)
    };

    static Profile extremizer(const ExtremizerSpec& spec, const Params& p,
                              OverflowPolicy policy = OverflowPolicy::Raise);
    static Profile cutoff_eta(const CutoffSpec& c);
    static Profile power_cutoff(double kappa, std::optional<CutoffSpec> c,
                                OverflowPolicy policy = OverflowPolicy::Raise);
    static Profile pure_power(double kappa);
    static Profile grid(double s_min, double s_max, std::vector<double> values,
                        AngularFactor D = AngularFactor::constant(1.0));
    static Profile smooth_bump(double s_lo, double s_hi);

    Profile truncated(const CutoffSpec& c) const;
    Profile dilated(double lambda) const;
    Profile with_angular(AngularFactor D) const;

    double value(double r) const;  // radial part
    double deriv(double r) const;  // d/dr of the radial part, a.e.
    const AngularFactor& angular() const noexcept { return angular_; }

    /// Grid payload when this profile is grid-backed, nullptr otherwise.
    const Grid* as_grid() const noexcept;

    std::vector<double> kink_radii() const;
    std::optional<std::pair<double, double>> support() const;
    bool compact() const { return support().has_value(); }

    /// Radial-function views for the integrator (kinks and support attached).
    RadialFn as_radial_fn() const;        // r -> u(r)
    RadialFn squared() const;             // r -> u(r)^2
    RadialFn deriv_squared() const;       // r -> u'(r)^2

private:
    using Radial = std::variant<ExtremizerRadial, PowerCutoff, Truncated, Grid, SmoothBump, Dilated>;
    Profile(Radial radial, AngularFactor D) : radial_(std::move(radial)), angular_(std::move(D)) {}

    Radial radial_;
    AngularFactor angular_;
};

/// eta_eps as a Profile (spec factory name).
Profile make_cutoff_eta(const CutoffSpec& c);

/// The degenerate-line minimizing sequence u_eps(r) = r^{-(N-2b-2)/2} eta_eps(r).
/// Requires a = b+1 exactly.
Profile make_hardy_sequence(const CutoffSpec& c, const Params& p);

/// Pointwise product eta_eps * u with product-rule derivative (a.e.).
Profile truncate_profile(const Profile& u, const CutoffSpec& c);

/// Samples a profile's radial part onto a uniform grid in s = log r; the two
/// endpoint values are pinned to zero (compact support), interior nodes carry
/// the sampled values exactly.
Profile sample_to_grid(const Profile& u, double s_min, double s_max, int nodes);

/// Does u admit a decaying envelope of the region-appropriate shape
/// (A: K e^{-C r^{b+1-a}},  B: K r^{2(b+1)-N} e^{-C r^{b+1-a}})?
/// C is searched over a log grid in [1e-6, 1e6]; the amplitude is
/// existential.  The finite-sample certificate: for some C, the ratio
/// |u|/envelope must not attain its maximum at the decaying-end sample.
/// Throws on line C (the envelope class is undefined there).
bool envelope_check(const Profile& u, const Params& p, int samples);

} // namespace ckn
