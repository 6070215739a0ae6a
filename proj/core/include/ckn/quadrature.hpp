#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ckn/angular.hpp"
#include "ckn/errors.hpp"

namespace ckn {

/// Configuration for radial quadrature in log-radius coordinates.
///
/// Every integral of the form  int_0^inf r^p f(r) dr  is evaluated after the
/// substitution r = e^s, which turns power weights times stretched
/// exponentials into smooth, exponentially decaying integrands in s.
struct QuadratureConfig {
    double s_min = -40.0;          // initial window in s = log r
    double s_max = 40.0;
    int panels = 16;               // composite panels at refinement level 0
    int nodes_per_panel = 12;      // Gauss-Legendre order per panel, in [4, 64]
    double target_rel_tol = 1e-12; // refinement stopping criterion
    int max_refinements = 20;
    bool auto_widen = true;        // extend the window until tails are negligible
    double widen_cap_s = 600.0;    // |s| beyond which widening gives up (divergence)

    void validate() const;
};

struct IntegralResult {
    double value = 0.0;
    double abs_error_estimate = 0.0; // last inter-refinement difference
    int refinements_used = 0;
    double s_min = 0.0; // window actually integrated over
    double s_max = 0.0;
};

/// A radial function handed to the integrator: the callable plus whatever
/// structure the integrator can exploit (kink radii to snap panel edges to,
/// exact compact support).
struct RadialFn {
    std::function<double(double)> f;       // value at r > 0
    std::vector<double> breakpoints;       // kink radii, r > 0, ascending not required
    std::optional<std::pair<double, double>> support; // (r_lo, r_hi); zero outside

    RadialFn(std::function<double(double)> fn) : f(std::move(fn)) {} // NOLINT(google-explicit-constructor)
    RadialFn(std::function<double(double)> fn, std::vector<double> kinks,
             std::optional<std::pair<double, double>> supp = std::nullopt)
        : f(std::move(fn)), breakpoints(std::move(kinks)), support(std::move(supp)) {}
};

/// int_0^inf r^p f(r) dr by composite Gauss-Legendre in s = log r with
/// panel doubling until the inter-refinement difference meets the target.
/// Panel edges are snapped to the function's kink radii.  Compact-support
/// functions are integrated over exactly their support; otherwise the window
/// is widened until the boundary contributions are negligible.
///
/// Throws DivergenceError when widening keeps adding mass at the cap, and
/// NonFiniteError when f returns NaN/Inf inside the window.
IntegralResult integrate_radial(const RadialFn& f, double p_exponent,
                                const QuadratureConfig& cfg = {});

/// Surface measure of S^{N-1}: 2 pi^{N/2} / Gamma(N/2); equals 2 for N = 1.
double sphere_area(int N);

/// Smallest window (in s, padded by 2) outside which |e^{(p+1)s} f(e^s)| is
/// below 1e-18 of its peak on a coarse scan of [-60, 60].  Compact-support
/// functions return their exact support window, unpadded.
/// Throws PeakNotFoundError when the scan is non-decreasing toward both ends.
std::pair<double, double> auto_window(const RadialFn& f, double p_exponent);

/// int_{S^{N-1}} D^power dsigma for power in {1, 2} and N in {1, 2, 3}.
/// N = 2 uses the periodic trapezoid rule (exact for trig polynomials),
/// N = 3 Gauss-Legendre in cos(theta) times trapezoid in phi (exact for the
/// polynomial family), N = 1 sums the two points of S^0.
double integrate_sphere(const AngularFactor& D, int power, int N);

/// int_{S^{N-1}} |grad_sigma D|^2 dsigma, the tangential-gradient energy of
/// the angular factor; zero exactly for constants.
double integrate_sphere_grad_sq(const AngularFactor& D, int N);

namespace detail {
/// Nodes/weights of n-point Gauss-Legendre on [-1, 1] (cached per n).
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);
} // namespace detail

} // namespace ckn
