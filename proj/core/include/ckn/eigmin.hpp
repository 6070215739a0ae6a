#pragma once

#include <vector>

#include "ckn/functionals.hpp"
#include "ckn/params.hpp"

namespace ckn {

/// Uniform Dirichlet grid in s = log r: n interior nodes in (s_min, s_max),
/// zero values pinned at both ends (the discrete stand-in for compactly
/// supported test functions).
struct Discretization {
    double s_min = -12.0;
    double s_max = 6.0;
    int n = 1800;

    double h() const { return (s_max - s_min) / (n + 1); }
    void validate() const;
};

/// The four quadratic forms in log-radius coordinates,
///   P = int e^{(N-2a)s} w^2,  G = int e^{(N-2b-2)s} (w')^2,
///   M = int e^{(N-a-b-1)s} w^2,  Q = int e^{(N-2b-2)s} w^2,
/// discretized with midpoint-weighted first differences for G (tridiagonal)
/// and diagonal mass lumping for P, M, Q.  All carry the |S^{N-1}| factor.
struct AssembledForms {
    std::vector<double> P_diag;
    std::vector<double> M_diag;
    std::vector<double> Q_diag;
    std::vector<double> G_diag;
    std::vector<double> G_off; // size n-1, coupling i <-> i+1
    double sphere = 0.0;
};

AssembledForms assemble(const Params& p, const Discretization& d);

struct EigenResult {
    double lambda_min = 0.0;
    std::vector<double> vector; // interior nodes, B-normalized, ground-state sign
    int iterations = 0;
    double residual = 0.0;      // ||A v - lambda B v|| in the reduced metric
    double quotient_check = 0.0; // continuous rayleigh_tilde of the interpolant
    Discretization grid;
    bool line_c = false; // true: pencil (G, Q) solved, lambda ~ c_sharp^2
};

/// Smallest eigenvalue of the variational pencil.
///
/// Off line C the pencil is ((P+G)/2, M).  Dilations act on the trial space
/// as shifts in s and rescale P and G by reciprocal exponential factors
/// (their weight exponents differ by 2(b+1-a) != 0), so any trial function
/// can be shifted to P = G where the AM-GM bound (P+G)/2 >= sqrt(PG) is
/// tight; hence inf (P+G)/(2M) = inf sqrt(PG)/M = c_sharp and lambda_min
/// converges to the sharp constant itself, from above up to O(h^2).
///
/// On line C that shift degenerates (the two exponents coincide), and the
/// solved pencil is (G, Q): lambda_min approaches c_sharp^2, the Hardy
/// constant squared, one-sidedly and only as the window grows
/// (non-attainment).
///
/// Solver: Sturm-count bisection on the reduced symmetric tridiagonal matrix
/// to bracket the smallest eigenvalue, then shifted inverse iteration with a
/// pivoted tridiagonal solve to polish the pair.
EigenResult min_quotient(const Params& p, const Discretization& d,
                         const QuadratureConfig& cfg = {});

struct ConvergeRow {
    double h = 0.0;
    double s_min = 0.0;
    double s_max = 0.0;
    int n = 0;
    double lambda = 0.0;
};

struct ConvergeStudy {
    std::vector<ConvergeRow> rows;
    double richardson = 0.0; // extrapolated limit from the last ladder step
    double order = 0.0;      // empirical order from the last three rungs
};

/// Runs min_quotient over a ladder of >= 3 discretizations and estimates the
/// empirical convergence order (expect ~2 in h for a fixed adequate window).
ConvergeStudy converge_study(const Params& p, const std::vector<Discretization>& ladder,
                             const QuadratureConfig& cfg = {});

} // namespace ckn
