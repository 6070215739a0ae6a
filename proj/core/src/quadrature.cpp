#include "ckn/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace ckn {

void QuadratureConfig::validate() const {
    if (!(s_min < s_max)) throw InvalidSpecError("QuadratureConfig: s_min < s_max required");
    if (panels < 1) throw InvalidSpecError("QuadratureConfig: panels >= 1 required");
    if (nodes_per_panel < 4 || nodes_per_panel > 64)
        throw InvalidSpecError("QuadratureConfig: nodes_per_panel must be in [4, 64]");
    if (!(target_rel_tol > 0.0)) throw InvalidSpecError("QuadratureConfig: positive tolerance required");
    if (max_refinements < 0) throw InvalidSpecError("QuadratureConfig: max_refinements >= 0");
}

namespace detail {

// Legendre nodes by Newton on P_n, symmetric pairs; cached per order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> x(n), w(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        long double z = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
        long double pp = 0.0L;
        for (int iter = 0; iter < 100; ++iter) {
            long double p0 = 1.0L, p1 = 0.0L;
            for (int j = 0; j < n; ++j) {
                const long double p2 = p1;
                p1 = p0;
                p0 = ((2.0L * j + 1.0L) * z * p1 - j * p2) / (j + 1.0L);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0L);
            const long double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-19L) break;
        }
        x[i] = static_cast<double>(-z);
        x[n - 1 - i] = static_cast<double>(z);
        const double wi = static_cast<double>(2.0L / ((1.0L - z * z) * pp * pp));
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

} // namespace detail

namespace {

constexpr double kZeroFloor = 1e-300;

struct Integrand {
    const RadialFn* fn;
    double p;

    // e^{(p+1)s} f(e^s); an exactly-zero f short-circuits the weight so that
    // compact supports and underflowed tails never produce inf * 0.
    double operator()(double s) const {
        const double fv = fn->f(std::exp(s));
        if (fv == 0.0) return 0.0;
        return std::exp((p + 1.0) * s) * fv;
    }
};

// Composite Gauss-Legendre over [a, b] with `total_panels` panels distributed
// proportionally over the segments delimited by `cuts` (interior kink
// locations in s, sorted).  Summation order is fixed for determinism.
double composite(const Integrand& g, double a, double b, const std::vector<double>& cuts,
                 int total_panels, int nodes, bool* nonfinite) {
    const auto& [xs, ws] = detail::gauss_legendre(nodes);
    std::vector<double> edges;
    edges.push_back(a);
    for (double c : cuts)
        if (c > a && c < b) edges.push_back(c);
    edges.push_back(b);

    const double total_len = b - a;
    double sum = 0.0;
    for (std::size_t seg = 0; seg + 1 < edges.size(); ++seg) {
        const double lo = edges[seg], hi = edges[seg + 1];
        const int np = std::max(1, static_cast<int>(std::llround(total_panels * (hi - lo) / total_len)));
        const double h = (hi - lo) / np;
        for (int p = 0; p < np; ++p) {
            const double mid = lo + (p + 0.5) * h;
            double acc = 0.0;
            for (int q = 0; q < nodes; ++q) {
                const double v = g(mid + 0.5 * h * xs[q]);
                if (!std::isfinite(v)) {
                    if (nonfinite) *nonfinite = true;
                    return v;
                }
                acc += ws[q] * v;
            }
            sum += 0.5 * h * acc;
        }
    }
    return sum;
}

// Refine by panel doubling until successive values agree to tol (relative).
struct RefineOut {
    double value;
    double err;
    int refinements;
};

RefineOut refine(const Integrand& g, double a, double b, const std::vector<double>& cuts,
                 const QuadratureConfig& cfg) {
    bool nonfinite = false;
    int panels = cfg.panels;
    double prev = composite(g, a, b, cuts, panels, cfg.nodes_per_panel, &nonfinite);
    if (nonfinite) throw NonFiniteError("integrate_radial: integrand not finite in window");
    double err = std::abs(prev);
    int k = 0;
    for (; k < cfg.max_refinements; ++k) {
        panels *= 2;
        const double cur = composite(g, a, b, cuts, panels, cfg.nodes_per_panel, &nonfinite);
        if (nonfinite) throw NonFiniteError("integrate_radial: integrand not finite in window");
        err = std::abs(cur - prev);
        prev = cur;
        if (err <= cfg.target_rel_tol * std::max(std::abs(cur), kZeroFloor)) {
            ++k;
            break;
        }
    }
    return {prev, err, k};
}

} // namespace

IntegralResult integrate_radial(const RadialFn& fn, double p_exponent, const QuadratureConfig& cfg) {
    cfg.validate();
    const Integrand g{&fn, p_exponent};

    double a = cfg.s_min, b = cfg.s_max;
    if (fn.support) {
        const auto [rlo, rhi] = *fn.support;
        if (!(rlo > 0.0 && rhi > rlo))
            throw InvalidSpecError("integrate_radial: invalid support interval");
        a = std::log(rlo);
        b = std::log(rhi);
    }

    std::vector<double> cuts;
    cuts.reserve(fn.breakpoints.size());
    for (double r : fn.breakpoints)
        if (r > 0.0) cuts.push_back(std::log(r));
    std::sort(cuts.begin(), cuts.end());

    RefineOut core = refine(g, a, b, cuts, cfg);
    double value = core.value;
    double err = core.err;

    if (!fn.support && cfg.auto_widen) {
        const double W = 4.0;
        QuadratureConfig chunk_cfg = cfg;
        chunk_cfg.panels = std::max(4, cfg.panels / 2);
        chunk_cfg.max_refinements = std::min(cfg.max_refinements, 12);

        for (int dir = 0; dir < 2; ++dir) { // 0: extend left, 1: extend right
            int quiet = 0;
            bool grew = false;
            while (quiet < 2) {
                const double edge = dir == 0 ? a : b;
                if (std::abs(edge) >= cfg.widen_cap_s) {
                    if (grew && quiet == 0)
                        throw DivergenceError("integrate_radial: window widening still adds mass at the cap");
                    break;
                }
                const double lo = dir == 0 ? edge - W : edge;
                const double hi = dir == 0 ? edge : edge + W;
                bool nonfinite = false;
                const double probe = composite(g, lo, hi, cuts, chunk_cfg.panels,
                                               cfg.nodes_per_panel, &nonfinite);
                if (nonfinite || !std::isfinite(probe))
                    throw DivergenceError("integrate_radial: integrand overflow while widening window");
                if (std::abs(probe) > cfg.target_rel_tol * std::max(std::abs(value), kZeroFloor)) {
                    const RefineOut c = refine(g, lo, hi, cuts, chunk_cfg);
                    value += c.value;
                    err += c.err;
                    quiet = 0;
                    grew = true;
                } else {
                    err += std::abs(probe);
                    ++quiet;
                }
                (dir == 0 ? a : b) = dir == 0 ? lo : hi;
            }
        }
    }

    if (!std::isfinite(value)) throw NonFiniteError("integrate_radial: non-finite integral value");
    return IntegralResult{value, err, core.refinements, a, b};
}

double sphere_area(int N) {
    if (N < 1) throw InvalidSpecError("sphere_area: N >= 1 required");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
}

std::pair<double, double> auto_window(const RadialFn& fn, double p_exponent) {
    if (fn.support) {
        const auto [rlo, rhi] = *fn.support;
        return {std::log(rlo), std::log(rhi)};
    }
    const Integrand g{&fn, p_exponent};
    constexpr double lo = -60.0, hi = 60.0, step = 0.25;
    const int n = static_cast<int>((hi - lo) / step) + 1;

    std::vector<double> mag(n);
    double peak = 0.0;
    int ipeak = 0;
    for (int i = 0; i < n; ++i) {
        const double v = std::abs(g(lo + i * step));
        mag[i] = std::isfinite(v) ? v : 0.0;
        if (mag[i] > peak) {
            peak = mag[i];
            ipeak = i;
        }
    }
    if (peak == 0.0) return {-2.0, 2.0}; // identically (numerically) zero

    const bool incr_left = mag[0] > 0.0 && mag[0] >= mag[1];
    const bool incr_right = mag[n - 1] > 0.0 && mag[n - 1] >= mag[n - 2];
    if (incr_left && incr_right)
        throw PeakNotFoundError("auto_window: integrand grows toward both window ends");

    const double thresh = 1e-18 * peak;
    int il = ipeak, ir = ipeak;
    while (il > 0 && mag[il] > thresh) --il;
    while (ir < n - 1 && mag[ir] > thresh) ++ir;
    return {lo + il * step - 2.0, lo + ir * step + 2.0};
}

double integrate_sphere(const AngularFactor& D, int power, int N) {
    if (power != 1 && power != 2)
        throw InvalidSpecError("integrate_sphere: power must be 1 or 2");
    if (!D.supports_dimension(N))
        throw InvalidSpecError("integrate_sphere: unsupported (dimension, kind) combination");

    if (D.is_constant()) {
        double c = D.value_circle(0.0);
        return (power == 2 ? c * c : c) * sphere_area(N);
    }
    if (N == 2) {
        const int M = std::max(64, 4 * D.degree() + 8);
        double sum = 0.0;
        for (int i = 0; i < M; ++i) {
            const double v = D.value_circle(2.0 * std::numbers::pi * i / M);
            sum += power == 2 ? v * v : v;
        }
        return sum * 2.0 * std::numbers::pi / M;
    }
    if (N == 3) {
        const int nc = 2 * D.degree() + 4;
        const int M = 4 * D.degree() + 8;
        const auto& [xs, ws] = detail::gauss_legendre(nc);
        double sum = 0.0;
        for (int i = 0; i < nc; ++i) {
            const double ct = xs[i];
            const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            double ring = 0.0;
            for (int j = 0; j < M; ++j) {
                const double ph = 2.0 * std::numbers::pi * j / M;
                const double v = D.value({st * std::cos(ph), st * std::sin(ph), ct}, 3);
                ring += power == 2 ? v * v : v;
            }
            sum += ws[i] * ring * 2.0 * std::numbers::pi / M;
        }
        return sum;
    }
    throw InvalidSpecError("integrate_sphere: N must be in {1, 2, 3} for non-constant factors");
}

double integrate_sphere_grad_sq(const AngularFactor& D, int N) {
    if (D.is_constant()) return 0.0;
    if (!D.supports_dimension(N))
        throw InvalidSpecError("integrate_sphere_grad_sq: unsupported (dimension, kind)");
    if (N == 2) {
        const int M = std::max(64, 4 * D.degree() + 8);
        double sum = 0.0;
        for (int i = 0; i < M; ++i) {
            const double d = D.dtheta_circle(2.0 * std::numbers::pi * i / M);
            sum += d * d;
        }
        return sum * 2.0 * std::numbers::pi / M;
    }
    if (N == 3) {
        const int nc = 2 * D.degree() + 4;
        const int M = 4 * D.degree() + 8;
        const auto& [xs, ws] = detail::gauss_legendre(nc);
        double sum = 0.0;
        for (int i = 0; i < nc; ++i) {
            const double ct = xs[i];
            const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            double ring = 0.0;
            for (int j = 0; j < M; ++j) {
                const double ph = 2.0 * std::numbers::pi * j / M;
                ring += D.grad_sq_sphere({st * std::cos(ph), st * std::sin(ph), ct});
            }
            sum += ws[i] * ring * 2.0 * std::numbers::pi / M;
        }
        return sum;
    }
    throw InvalidSpecError("integrate_sphere_grad_sq: N must be 2 or 3 for non-constant factors");
}

} // namespace ckn
