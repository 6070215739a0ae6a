#pragma once

#include "ckn/params.hpp"
#include "ckn/profiles.hpp"
#include "ckn/quadrature.hpp"

namespace ckn {

/// Which of the four weighted energies to evaluate.
enum class Component : unsigned {
    P = 1u,
    G = 2u,
    M = 4u,
    Q = 8u,
    PGM = 7u,
    All = 15u,
};
constexpr Component operator|(Component a, Component b) {
    return static_cast<Component>(static_cast<unsigned>(a) | static_cast<unsigned>(b));
}
constexpr bool has(Component set, Component c) {
    return (static_cast<unsigned>(set) & static_cast<unsigned>(c)) != 0;
}

/// The four weighted energies of u(x) = f(r) D(sigma):
///   P = int |u|^2/|x|^{2a},  G = int |x.grad u|^2/|x|^{2b+2},
///   M = int |u|^2/|x|^{a+b+1},  Q = int |u|^2/|x|^{2(b+1)},
/// each reduced to a radial integral times int D^2 dsigma.  Components not
/// requested are NaN.  err is the largest absolute quadrature error estimate
/// over the computed components.
struct WeightedIntegrals {
    double P = 0.0;
    double G = 0.0;
    double M = 0.0;
    double Q = 0.0;
    double err = 0.0;
};

WeightedIntegrals weighted_integrals(const Profile& u, const Params& p,
                                     const QuadratureConfig& cfg = {},
                                     Component which = Component::All);

/// Radial-derivative Rayleigh quotient sqrt(P G)/M; its infimum over
/// admissible u is the sharp constant.  Throws ZeroDenominatorError on M = 0.
double rayleigh_tilde(const Profile& u, const Params& p, const QuadratureConfig& cfg = {});

/// Full-gradient quotient E(u): the G-part gains the tangential energy of the
/// angular factor, int |grad_sigma D|^2 dsigma * int f^2 r^{N-3-2b} dr.
/// Coincides with rayleigh_tilde exactly for constant D; strictly larger for
/// non-constant D.
double rayleigh_full(const Profile& u, const Params& p, const QuadratureConfig& cfg = {});

/// Parameters (t, s) of the three-term square.
struct ExpandSquareParams {
    double t = 0.0;
    double s = 0.0;
};

/// S = int (r^{-b} f' + t r^{-a} f + s r^{-b-1} f)^2 r^{N-1} dr * int D^2.
/// Requires compact support away from 0 and infinity (the identity route
/// integrates by parts and needs vanishing boundary terms).
double expand_square_direct(const Profile& u, const Params& p, const ExpandSquareParams& esp,
                            const QuadratureConfig& cfg = {});

/// The same square assembled from the four energies:
///   G + t^2 P + t [2s - (N-a-b-1)] M + s [s - (N-2b-2)] Q.
double expand_square_identity(const WeightedIntegrals& w, const Params& p,
                              const ExpandSquareParams& esp);

struct PairResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double err = 0.0;
};

/// Divergence-theorem identity: for compact u and any real d,
///   int u (x.grad u)/|x|^{d+1} = -(N-d-1)/2 int u^2/|x|^{d+1}.
/// Both sides are returned; the caller asserts closeness.
PairResult ibp_check(const Profile& u, const Params& p, double d,
                     const QuadratureConfig& cfg = {});

/// Hardy remainder identity on the line a = b+1:
///   G - C^2 Q = int |d/dr(f r^{(N-2b-2)/2})|^2 r dr * int D^2,
/// with C = |N-2(b+1)|/2 taken from branch_constants (single source of truth).
PairResult hardy_remainder(const Profile& u, const Params& p,
                           const QuadratureConfig& cfg = {});

enum class ElBranch { s0, sN };

/// Max absolute Euler-Lagrange residual over `samples` log-spaced radii in
/// [0.1, 10], in the Theorem-2 sign convention:
///   s0 branch:  |f'/f - t r^{b-a}|
///   sN branch:  |f'/f - t r^{b-a} + (N-2b-2)/r|.
/// Throws on a non-positive sample.
double el_residual(const Profile& u, const Params& p, double t, ElBranch branch, int samples);

/// sqrt(G + P); divergence of either part propagates (tagged).
double norm_Htilde(const Profile& u, const Params& p, const QuadratureConfig& cfg = {});

} // namespace ckn
