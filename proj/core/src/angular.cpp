#include "ckn/angular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ckn {

namespace {

bool all_zero(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

// Ambient-gradient of a monomial sum at a point.
std::array<double, 3> poly_grad(const AngularFactor::SpherePoly& p,
                                const std::array<double, 3>& x) {
    std::array<double, 3> g{0.0, 0.0, 0.0};
    auto pw = [](double base, int e) { return e == 0 ? 1.0 : std::pow(base, e); };
    for (const auto& m : p.terms) {
        if (m.i > 0) g[0] += m.coeff * m.i * pw(x[0], m.i - 1) * pw(x[1], m.j) * pw(x[2], m.k);
        if (m.j > 0) g[1] += m.coeff * m.j * pw(x[0], m.i) * pw(x[1], m.j - 1) * pw(x[2], m.k);
        if (m.k > 0) g[2] += m.coeff * m.k * pw(x[0], m.i) * pw(x[1], m.j) * pw(x[2], m.k - 1);
    }
    return g;
}

} // namespace

AngularFactor::AngularFactor(Constant c) : kind_(c) {
    if (c.c == 0.0) throw InvalidSpecError("AngularFactor: constant factor must be nonzero");
}

AngularFactor::AngularFactor(CircleTrig t) : kind_(std::move(t)) {
    const auto& ct = std::get<CircleTrig>(kind_);
    if (ct.a0 == 0.0 && all_zero(ct.cos_coeffs) && all_zero(ct.sin_coeffs))
        throw InvalidSpecError("AngularFactor: trig polynomial must not be identically zero");
}

AngularFactor::AngularFactor(SpherePoly p) : kind_(std::move(p)) {
    const auto& sp = std::get<SpherePoly>(kind_);
    bool nonzero = false;
    for (const auto& m : sp.terms) {
        if (m.i < 0 || m.j < 0 || m.k < 0)
            throw InvalidSpecError("AngularFactor: monomial exponents must be nonnegative");
        if (m.coeff != 0.0) nonzero = true;
    }
    if (!nonzero)
        throw InvalidSpecError("AngularFactor: sphere polynomial must not be identically zero");
}

bool AngularFactor::supports_dimension(int N) const noexcept {
    if (std::holds_alternative<Constant>(kind_)) return N >= 1;
    if (std::holds_alternative<CircleTrig>(kind_)) return N == 2;
    return N == 3;
}

double AngularFactor::value(const std::array<double, 3>& sigma, int N) const {
    if (!supports_dimension(N))
        throw InvalidSpecError("AngularFactor: unsupported (kind, dimension) combination");
    if (const auto* c = std::get_if<Constant>(&kind_)) return c->c;
    if (std::holds_alternative<CircleTrig>(kind_))
        return value_circle(std::atan2(sigma[1], sigma[0]));
    const auto& sp = std::get<SpherePoly>(kind_);
    double v = 0.0;
    auto pw = [](double base, int e) { return e == 0 ? 1.0 : std::pow(base, e); };
    for (const auto& m : sp.terms)
        v += m.coeff * pw(sigma[0], m.i) * pw(sigma[1], m.j) * pw(sigma[2], m.k);
    return v;
}

double AngularFactor::value_circle(double theta) const {
    if (const auto* c = std::get_if<Constant>(&kind_)) return c->c;
    const auto* t = std::get_if<CircleTrig>(&kind_);
    if (!t) throw InvalidSpecError("AngularFactor: circle evaluation needs Constant or CircleTrig");
    double v = t->a0;
    for (std::size_t k = 0; k < t->cos_coeffs.size(); ++k)
        v += t->cos_coeffs[k] * std::cos(double(k + 1) * theta);
    for (std::size_t k = 0; k < t->sin_coeffs.size(); ++k)
        v += t->sin_coeffs[k] * std::sin(double(k + 1) * theta);
    return v;
}

double AngularFactor::dtheta_circle(double theta) const {
    if (std::holds_alternative<Constant>(kind_)) return 0.0;
    const auto* t = std::get_if<CircleTrig>(&kind_);
    if (!t) throw InvalidSpecError("AngularFactor: circle derivative needs Constant or CircleTrig");
    double v = 0.0;
    for (std::size_t k = 0; k < t->cos_coeffs.size(); ++k)
        v -= t->cos_coeffs[k] * double(k + 1) * std::sin(double(k + 1) * theta);
    for (std::size_t k = 0; k < t->sin_coeffs.size(); ++k)
        v += t->sin_coeffs[k] * double(k + 1) * std::cos(double(k + 1) * theta);
    return v;
}

double AngularFactor::grad_sq_sphere(const std::array<double, 3>& sigma) const {
    if (std::holds_alternative<Constant>(kind_)) return 0.0;
    const auto* sp = std::get_if<SpherePoly>(&kind_);
    if (!sp) throw InvalidSpecError("AngularFactor: sphere gradient needs Constant or SpherePoly");
    const auto g = poly_grad(*sp, sigma);
    const double radial = g[0] * sigma[0] + g[1] * sigma[1] + g[2] * sigma[2];
    const double g2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
    return std::max(0.0, g2 - radial * radial);
}

double AngularFactor::sup_abs(int N) const {
    if (const auto* c = std::get_if<Constant>(&kind_)) return std::abs(c->c);
    double sup = 0.0;
    if (std::holds_alternative<CircleTrig>(kind_)) {
        const int n = 4096;
        for (int i = 0; i < n; ++i)
            sup = std::max(sup, std::abs(value_circle(2.0 * std::numbers::pi * i / n)));
        return sup;
    }
    if (N != 3) throw InvalidSpecError("AngularFactor: SpherePoly requires N = 3");
    const int nth = 181, nph = 256;
    for (int it = 0; it < nth; ++it) {
        const double ct = -1.0 + 2.0 * it / (nth - 1);
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int ip = 0; ip < nph; ++ip) {
            const double ph = 2.0 * std::numbers::pi * ip / nph;
            sup = std::max(sup, std::abs(value({st * std::cos(ph), st * std::sin(ph), ct}, 3)));
        }
    }
    return sup;
}

int AngularFactor::degree() const noexcept {
    if (std::holds_alternative<Constant>(kind_)) return 0;
    if (const auto* t = std::get_if<CircleTrig>(&kind_))
        return static_cast<int>(std::max(t->cos_coeffs.size(), t->sin_coeffs.size()));
    int d = 0;
    for (const auto& m : std::get<SpherePoly>(kind_).terms) d = std::max(d, m.i + m.j + m.k);
    return d;
}

} // namespace ckn
