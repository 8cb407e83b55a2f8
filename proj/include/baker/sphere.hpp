#pragma once

#include <cmath>
#include <complex>

namespace baker {

using cplx = std::complex<double>;

/// A point of the Riemann sphere: a finite complex value or the point at infinity.
struct SphereValue {
    cplx value{0.0, 0.0};
    bool finite = true;

    static SphereValue of(cplx z) { return SphereValue{z, true}; }
    static SphereValue infinity() { return SphereValue{cplx{0.0, 0.0}, false}; }

    bool operator==(const SphereValue& o) const {
        if (finite != o.finite) return false;
        return !finite || value == o.value;
    }
};

inline SphereValue finite_or_infinity(cplx z) {
    if (std::isfinite(z.real()) && std::isfinite(z.imag())) return SphereValue::of(z);
    return SphereValue::infinity();
}

} // namespace baker
