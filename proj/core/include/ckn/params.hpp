#pragma once

#include <string>

#include "ckn/errors.hpp"

namespace ckn {

/// Dimension and weight exponents (N, a, b).  The coordinates of everything
/// else in this library.
struct Params {
    int N = 3;      // ambient dimension, N >= 1
    double a = 0.0; // weight exponent of the |u|^2/|x|^{2a} term
    double b = 0.0; // weight exponent of the radial-derivative term

    void validate() const;
};

enum class Region { A1, A2, B1, B2, C };

std::string to_string(Region r);

/// Membership flags for the parameter-plane partition.
///
/// A1: b+1-a > 0 and b <= (N-2)/2      A2: b+1-a < 0 and b >= (N-2)/2
/// B1: b+1-a < 0 and b <= (N-2)/2      B2: b+1-a > 0 and b >= (N-2)/2
/// C : a = b+1 (exact)
///
/// The b-comparisons are closed, so points with b = (N-2)/2 carry one A-flag
/// and one B-flag simultaneously; `canonical` breaks the tie toward the
/// A-side (the two branch constants coincide there).
struct RegionInfo {
    bool in_A1 = false;
    bool in_A2 = false;
    bool in_B1 = false;
    bool in_B2 = false;
    bool on_C = false;
    Region canonical = Region::C;

    bool in_A() const noexcept { return in_A1 || in_A2; }
    bool in_B() const noexcept { return in_B1 || in_B2; }
};

/// The two expand-the-square branch constants and their comparison data.
///
///   c_A = |N-(a+b+1)|/2, c_B = |N-(3b-a+3)|/2, c_sharp = max(c_A, c_B),
///   T   = (b-a+1)(N-2-2b)  with  c_A^2 - c_B^2 = T identically.
///
/// T is kept in its printed product form; only its sign is load-bearing
/// (T >= 0 on region A, T <= 0 on region B, T = 0 on line C and on the
/// shared boundary b = (N-2)/2).
struct BranchConstants {
    double c_A = 0.0;
    double c_B = 0.0;
    double T = 0.0;
    double c_sharp = 0.0;
};

/// Exact-comparison region classification.  Total: every valid Params gets
/// at least one flag.  No epsilon fuzzing; callers wanting fuzzy membership
/// must perturb inputs themselves.
RegionInfo classify(const Params& p);

/// Both branch constants, the discriminator T, and the sharp constant.
BranchConstants branch_constants(const Params& p);

/// max(c_A, c_B).  May legitimately be zero (e.g. N = 2(b+1) on line C).
double sharp_constant(const Params& p);

} // namespace ckn
