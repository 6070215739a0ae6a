#include "ckn/eigmin.hpp"

#include <algorithm>
#include <cmath>

#include "ckn/quadrature.hpp"

namespace ckn {

void Discretization::validate() const {
    if (!(s_min < s_max)) throw InvalidSpecError("Discretization: s_min < s_max required");
    if (n < 16) throw InvalidSpecError("Discretization: at least 16 interior nodes required");
}

AssembledForms assemble(const Params& p, const Discretization& d) {
    p.validate();
    d.validate();
    const int n = d.n;
    const double h = d.h();
    const double aP = p.N - 2.0 * p.a;
    const double aG = p.N - 2.0 * p.b - 2.0;
    const double aM = p.N - p.a - p.b - 1.0;

    AssembledForms f;
    f.sphere = sphere_area(p.N);
    f.P_diag.resize(n);
    f.M_diag.resize(n);
    f.Q_diag.resize(n);
    f.G_diag.resize(n);
    f.G_off.resize(n - 1);

    auto node = [&](int i) { return d.s_min + h * (i + 1); }; // i = 0..n-1 interior

    for (int i = 0; i < n; ++i) {
        const double s = node(i);
        f.P_diag[i] = f.sphere * h * std::exp(aP * s);
        f.M_diag[i] = f.sphere * h * std::exp(aM * s);
        f.Q_diag[i] = f.sphere * h * std::exp(aG * s);
    }
    // G = sum over segments of rho(mid) (w_{i+1}-w_i)^2 / h, Dirichlet ends.
    std::vector<double> rho(n + 1);
    for (int seg = 0; seg <= n; ++seg)
        rho[seg] = f.sphere * std::exp(aG * (d.s_min + h * (seg + 0.5)));
    for (int i = 0; i < n; ++i) f.G_diag[i] = (rho[i] + rho[i + 1]) / h;
    for (int i = 0; i + 1 < n; ++i) f.G_off[i] = -rho[i + 1] / h;
    return f;
}

namespace {

// Eigenvalue count below x for a symmetric tridiagonal matrix (Sturm/LDL^T).
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x) {
    const int n = static_cast<int>(diag.size());
    int count = 0;
    double q = diag[0] - x;
    if (q < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
        const double e = off[i - 1];
        if (q == 0.0) q = 1e-300;
        q = (diag[i] - x) - e * e / q;
        if (q < 0.0) ++count;
    }
    return count;
}

// Tridiagonal solve (T - sigma I) x = b with partial pivoting (gttrf/gtts2
// scheme specialized to the symmetric case); returns false on exact breakdown.
bool shifted_tridiag_solve(const std::vector<double>& diag, const std::vector<double>& off,
                           double sigma, std::vector<double>& x) {
    const int n = static_cast<int>(diag.size());
    std::vector<double> dl(std::max(0, n - 1)), dd(n), du(std::max(0, n - 1)),
        du2(std::max(0, n - 2), 0.0);
    std::vector<int> swapped(std::max(0, n - 1), 0);
    for (int i = 0; i < n; ++i) dd[i] = diag[i] - sigma;
    for (int i = 0; i + 1 < n; ++i) dl[i] = du[i] = off[i];

    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(dd[i]) >= std::abs(dl[i])) {
            if (dd[i] == 0.0) return false;
            const double fact = dl[i] / dd[i];
            dl[i] = fact;
            dd[i + 1] -= fact * du[i];
        } else {
            const double fact = dd[i] / dl[i];
            dd[i] = dl[i];
            dl[i] = fact;
            const double tmp = du[i];
            du[i] = dd[i + 1];
            dd[i + 1] = tmp - fact * dd[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
            swapped[i] = 1;
        }
    }

    for (int i = 0; i + 1 < n; ++i) {
        if (!swapped[i]) {
            x[i + 1] -= dl[i] * x[i];
        } else {
            const double tmp = x[i];
            x[i] = x[i + 1];
            x[i + 1] = tmp - dl[i] * x[i];
        }
    }
    if (dd[n - 1] == 0.0) return false;
    x[n - 1] /= dd[n - 1];
    if (n >= 2) {
        if (dd[n - 2] == 0.0) return false;
        x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / dd[n - 2];
    }
    for (int i = n - 3; i >= 0; --i) {
        if (dd[i] == 0.0) return false;
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / dd[i];
    }
    return true;
}

} // namespace

EigenResult min_quotient(const Params& p, const Discretization& d, const QuadratureConfig& cfg) {
    const AssembledForms f = assemble(p, d);
    const int n = d.n;
    const bool line_c = p.a == p.b + 1.0;

    // Pencil (A, B): main branch ((P+G)/2, M); line C (G, Q).
    std::vector<double> a_diag(n), a_off(n - 1), b_diag(n);
    if (line_c) {
        a_diag = f.G_diag;
        a_off = f.G_off;
        b_diag = f.Q_diag;
    } else {
        for (int i = 0; i < n; ++i) a_diag[i] = 0.5 * (f.P_diag[i] + f.G_diag[i]);
        for (int i = 0; i + 1 < n; ++i) a_off[i] = 0.5 * f.G_off[i];
        b_diag = f.M_diag;
    }

    // Reduce to standard symmetric tridiagonal: C = B^{-1/2} A B^{-1/2}.
    std::vector<double> c_diag(n), c_off(n - 1), b_isqrt(n);
    for (int i = 0; i < n; ++i) {
        if (!(b_diag[i] > 0.0)) throw SolverError("min_quotient: mass matrix not positive");
        b_isqrt[i] = 1.0 / std::sqrt(b_diag[i]);
        c_diag[i] = a_diag[i] * b_isqrt[i] * b_isqrt[i];
    }
    for (int i = 0; i + 1 < n; ++i) c_off[i] = a_off[i] * b_isqrt[i] * b_isqrt[i + 1];

    // Gershgorin bracket, then Sturm bisection for the smallest eigenvalue.
    double lo = c_diag[0], hi = c_diag[0];
    for (int i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(c_off[i - 1]);
        if (i + 1 < n) radius += std::abs(c_off[i]);
        lo = std::min(lo, c_diag[i] - radius);
        hi = std::max(hi, c_diag[i] + radius);
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(c_diag, c_off, mid) >= 1)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid))) break;
    }
    double lambda = 0.5 * (lo + hi);

    // Inverse iteration with a shift just below the bracket.
    const double shift = lo - 1e-8 * std::max(1.0, std::abs(lo));
    std::vector<double> y(n, 1.0);
    double norm = std::sqrt(static_cast<double>(n));
    for (double& v : y) v /= norm;

    int iterations = 0;
    double residual = 0.0;
    for (; iterations < 60; ++iterations) {
        if (!shifted_tridiag_solve(c_diag, c_off, shift, y))
            throw SolverError("min_quotient: tridiagonal factorization failed");
        norm = 0.0;
        for (double v : y) norm += v * v;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw SolverError("min_quotient: inverse iteration broke down");
        for (double& v : y) v /= norm;

        // Rayleigh quotient and residual of the reduced problem.
        double rq = 0.0;
        for (int i = 0; i < n; ++i) {
            double cv = c_diag[i] * y[i];
            if (i > 0) cv += c_off[i - 1] * y[i - 1];
            if (i + 1 < n) cv += c_off[i] * y[i + 1];
            rq += y[i] * cv;
        }
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
            double cv = c_diag[i] * y[i];
            if (i > 0) cv += c_off[i - 1] * y[i - 1];
            if (i + 1 < n) cv += c_off[i] * y[i + 1];
            const double r = cv - rq * y[i];
            res += r * r;
        }
        res = std::sqrt(res);
        lambda = rq;
        residual = res;
        if (res <= 1e-12 * std::max(std::abs(lambda), 1e-30)) {
            ++iterations;
            break;
        }
    }
    if (residual > 1e-10 * std::max(std::abs(lambda), 1e-30))
        throw SolverError("min_quotient: inverse iteration did not converge");

    EigenResult out;
    out.lambda_min = lambda;
    out.iterations = iterations;
    out.residual = residual;
    out.grid = d;
    out.line_c = line_c;

    // Map back to the pencil eigenvector and fix the ground-state sign.
    out.vector.resize(n);
    double amax = 0.0;
    int imax = 0;
    for (int i = 0; i < n; ++i) {
        out.vector[i] = y[i] * b_isqrt[i];
        if (std::abs(y[i]) > amax) {
            amax = std::abs(y[i]);
            imax = i;
        }
    }
    if (y[imax] < 0.0)
        for (double& v : out.vector) v = -v;

    // Independent confirmation: continuous quotient of the P1 interpolant.
    std::vector<double> values(static_cast<std::size_t>(n) + 2, 0.0);
    for (int i = 0; i < n; ++i) values[i + 1] = out.vector[i];
    const Profile interp = Profile::grid(d.s_min, d.s_max, std::move(values));
    QuadratureConfig qc = cfg;
    out.quotient_check = rayleigh_tilde(interp, p, qc);
    return out;
}

ConvergeStudy converge_study(const Params& p, const std::vector<Discretization>& ladder,
                             const QuadratureConfig& cfg) {
    if (ladder.size() < 3)
        throw InvalidSpecError("converge_study: at least 3 ladder rungs required");
    ConvergeStudy study;
    study.rows.reserve(ladder.size());
    for (const auto& d : ladder) {
        const EigenResult r = min_quotient(p, d, cfg);
        study.rows.push_back({d.h(), d.s_min, d.s_max, d.n, r.lambda_min});
    }
    const std::size_t m = study.rows.size();
    const ConvergeRow &r1 = study.rows[m - 3], &r2 = study.rows[m - 2], &r3 = study.rows[m - 1];
    const double d12 = r1.lambda - r2.lambda;
    const double d23 = r2.lambda - r3.lambda;
    const double hratio = r2.h / r3.h;
    if (d23 != 0.0 && d12 / d23 > 0.0 && hratio > 1.0)
        study.order = std::log(d12 / d23) / std::log(r1.h / r2.h);
    else
        study.order = 0.0;
    const double denom = std::pow(hratio, study.order > 0.0 ? study.order : 2.0) - 1.0;
    study.richardson = denom > 0.0 ? r3.lambda + (r3.lambda - r2.lambda) / denom : r3.lambda;
    return study;
}

} // namespace ckn
