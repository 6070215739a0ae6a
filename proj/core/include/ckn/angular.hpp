#pragma once

#include <array>
#include <variant>
#include <vector>

#include "ckn/errors.hpp"

namespace ckn {

/// Angular factor D: S^{N-1} -> R.  Three closed families, all inducing a
/// C^1 map x -> D(x/|x|) away from the origin:
///   Constant   — any dimension;
///   CircleTrig — finite trigonometric polynomial on S^1 (N = 2);
///   SpherePoly — low-degree polynomial in ambient (x,y,z) restricted to S^2
///                (N = 3).
class AngularFactor {
public:
    struct Constant {
        double c = 1.0;
    };
    /// D(theta) = a0 + sum_k (cos_coeffs[k-1] cos k theta + sin_coeffs[k-1] sin k theta)
    struct CircleTrig {
        double a0 = 0.0;
        std::vector<double> cos_coeffs;
        std::vector<double> sin_coeffs;
    };
    /// Sum of monomials coeff * x^i y^j z^k evaluated on |x| = 1.
    struct SpherePoly {
        struct Monomial {
            int i = 0, j = 0, k = 0;
            double coeff = 0.0;
        };
        std::vector<Monomial> terms;
    };

    AngularFactor() : kind_(Constant{1.0}) {}
    explicit AngularFactor(Constant c);
    explicit AngularFactor(CircleTrig t);
    explicit AngularFactor(SpherePoly p);

    static AngularFactor constant(double c) { return AngularFactor(Constant{c}); }

    bool is_constant() const noexcept { return std::holds_alternative<Constant>(kind_); }
    /// Dimensions this factor can live on (Constant: any; CircleTrig: 2; SpherePoly: 3).
    bool supports_dimension(int N) const noexcept;

    /// Value at the unit vector sigma (size N; only the first N entries are read).
    double value(const std::array<double, 3>& sigma, int N) const;

    /// Value on S^1 parametrized by theta (CircleTrig / Constant only).
    double value_circle(double theta) const;
    /// d/dtheta on S^1 (CircleTrig / Constant only).
    double dtheta_circle(double theta) const;

    /// Squared tangential (sphere) gradient |grad_sigma D|^2 at sigma on S^2.
    /// For SpherePoly this is |(I - sigma sigma^T) grad P(sigma)|^2, exact.
    double grad_sq_sphere(const std::array<double, 3>& sigma) const;

    /// Max |D| over the sphere (exact for Constant, sampled for the others).
    double sup_abs(int N) const;

    /// Trig-polynomial degree (CircleTrig) or total monomial degree (SpherePoly).
    int degree() const noexcept;

    template <class Visitor>
    decltype(auto) visit(Visitor&& v) const {
        return std::visit(std::forward<Visitor>(v), kind_);
    }

private:
    std::variant<Constant, CircleTrig, SpherePoly> kind_;
};

} // namespace ckn
