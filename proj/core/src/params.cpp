#include "ckn/params.hpp"

#include <algorithm>
#include <cmath>

namespace ckn {

void Params::validate() const {
    if (N < 1) throw InvalidSpecError("Params: dimension N must be >= 1");
    if (!std::isfinite(a) || !std::isfinite(b))
        throw InvalidSpecError("Params: exponents a, b must be finite");
}

std::string to_string(Region r) {
    switch (r) {
        case Region::A1: return "A1";
        case Region::A2: return "A2";
        case Region::B1: return "B1";
        case Region::B2: return "B2";
        case Region::C: return "C";
    }
    return "?";
}

RegionInfo classify(const Params& p) {
    p.validate();
    RegionInfo info;
    const double gap = p.b + 1.0 - p.a;        // sign splits A1/B2 from A2/B1
    const double bcrit = (p.N - 2.0) / 2.0;

    if (gap == 0.0) {
        info.on_C = true;
        info.canonical = Region::C;
        return info;
    }
    info.in_A1 = gap > 0.0 && p.b <= bcrit;
    info.in_A2 = gap < 0.0 && p.b >= bcrit;
    info.in_B1 = gap < 0.0 && p.b <= bcrit;
    info.in_B2 = gap > 0.0 && p.b >= bcrit;

    // Tie-break toward the A side on the shared boundary b = (N-2)/2.
    if (info.in_A1)
        info.canonical = Region::A1;
    else if (info.in_A2)
        info.canonical = Region::A2;
    else if (info.in_B1)
        info.canonical = Region::B1;
    else
        info.canonical = Region::B2;
    return info;
}

BranchConstants branch_constants(const Params& p) {
    p.validate();
    BranchConstants c;
    c.c_A = std::abs(p.N - (p.a + p.b + 1.0)) / 2.0;
    c.c_B = std::abs(p.N - (3.0 * p.b - p.a + 3.0)) / 2.0;
    c.T = (p.b - p.a + 1.0) * (p.N - 2.0 - 2.0 * p.b);
    c.c_sharp = std::max(c.c_A, c.c_B);
    return c;
}

double sharp_constant(const Params& p) {
    return branch_constants(p).c_sharp;
}

} // namespace ckn
