#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ckn/eigmin.hpp"
#include "ckn/functionals.hpp"

namespace ckn {

/// One row of a parameter-plane scan.
struct ScanRow {
    double a = 0.0;
    double b = 0.0;
    Region region = Region::C;
    double c_A = 0.0;
    double c_B = 0.0;
    double c_sharp = 0.0;
    std::optional<double> verified; // measured quotient of the extremizer
    std::optional<double> gap;      // |verified - c_sharp|
    std::string error;              // per-row failure note; scan continues
};

/// Power-law fit  value ~ amplitude * L^exponent  against L = log(1/eps),
/// by weighted least squares on log-log axes (the three largest-eps points
/// are down-weighted as pre-asymptotic).
struct RateFit {
    double exponent = 0.0;
    double amplitude = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> points; // (eps, value)
};

RateFit fit_log_power(const std::vector<std::pair<double, double>>& eps_value);

struct VerifyReport {
    Params params;
    Region region = Region::C;
    double E_tilde = 0.0;
    double c_sharp = 0.0;
    double gap = 0.0;
    double err = 0.0; // propagated quadrature error of E_tilde
    double tol = 0.0; // 100 * err (the pass threshold)
    bool pass = false;
};

/// Builds the region-appropriate extremizer (default t), measures its
/// quotient by quadrature and compares against the sharp constant.
VerifyReport verify_extremizer(const Params& p, const QuadratureConfig& cfg = {});

/// Full grid scan over closed ranges [a_lo, a_hi] x [b_lo, b_hi] with the
/// given step; every `verify_every`-th off-C row is also verified
/// (0 disables verification).  Row failures are recorded, not thrown.
std::vector<ScanRow> scan_plane(int N, std::pair<double, double> a_range,
                                std::pair<double, double> b_range, double step,
                                int verify_every, const QuadratureConfig& cfg = {});

struct HardyRateReport {
    Params params;
    double c_sharp = 0.0;
    RateFit fit_remainder;   // G - c^2 Q       ~ L^{-1}
    RateFit fit_denominator; // Q               ~ L^{+1}
    RateFit fit_gap;         // E~^2 - c^2      ~ L^{-2}
    std::vector<double> quotients; // E~(u_eps) per eps, expected to decrease
};

/// Minimizing-sequence rates on the degenerate line a = b+1.
/// Requires >= 5 eps values spanning >= 3 decades.
HardyRateReport hardy_rate_study(const Params& p, const std::vector<double>& eps_list,
                                 const QuadratureConfig& cfg = {});

struct DensityRow {
    double eps = 0.0;
    double diff_norm = 0.0;  // || u - eta_eps u || in the (G + P) norm
    double cross_term = 0.0; // int |u eta'|^2 r^{-2b} dV * sphere factor
};

struct DensityReport {
    Params params;
    Family family = Family::A;
    int paper_case = 0; // 1: A1, 2: A2, 3: B1, 4: B2 (by flags + family)
    RateFit cross_fit;  // cross term vs L = log(1/eps)
    std::vector<DensityRow> rows;
    bool cross_decays = false;  // last cross term below first
    bool monotone_tail = false; // diff_norm strictly decreasing on the tail
};

/// Truncation-approximation study for an extremizer off line C: the
/// cross-term (the annulus contribution of eta') must decay to zero and the
/// approximation error must shrink monotonically on the small-eps tail.
/// `family` overrides the canonical extremizer family on closed boundaries
/// where both families exist.
DensityReport density_decay_study(const Params& p, const std::vector<double>& eps_list,
                                  const QuadratureConfig& cfg = {},
                                  std::optional<Family> family = std::nullopt);

struct AuditReport {
    Params params;
    double c_A = 0.0;
    double c_B = 0.0;
    double c_sharp = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    double min_quotient = 0.0;         // min over trials of sqrt(PG)/M
    double extremizer_quotient = 0.0;  // NaN on line C
    int violations_A = 0;              // trials with P G < c_A^2 M^2 - tol
    int violations_B = 0;              // trials with P G < c_B^2 M^2 - tol
};

/// Random compact bumps vs the two branch lower bounds: both hold for every
/// trial, and the infimum over trials stays above max(c_A, c_B), not the min
/// of the branch constants.
AuditReport branch_bound_audit(const Params& p, int trials, const QuadratureConfig& cfg = {},
                               std::uint64_t seed = 12345);

/// Default eps ladder {1e-2, 1e-2.5, ..., 1e-6}: small enough for the
/// asymptotic regime, large enough that eps^2 stays comfortably inside
/// double precision.
std::vector<double> default_eps_ladder();

/// Platform-independent uniform draw in [lo, hi) from a seeded engine.
double det_uniform(std::mt19937_64& rng, double lo, double hi);

/// Smooth compact bump on a random sub-window of [-3.5, 3.5] in s.
Profile random_bump(std::mt19937_64& rng);

} // namespace ckn
