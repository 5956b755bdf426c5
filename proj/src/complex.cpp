#include "qev/complex.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace qev {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::NonFinite: return "NonFinite";
        case Errc::DivisionByNearZero: return "DivisionByNearZero";
        case Errc::BadFrame: return "BadFrame";
        case Errc::UnknownLabel: return "UnknownLabel";
        case Errc::FrameMismatch: return "FrameMismatch";
        case Errc::TotalConflict: return "TotalConflict";
        case Errc::NotRealValued: return "NotRealValued";
        case Errc::EmptyHypothesis: return "EmptyHypothesis";
        case Errc::BadGridStep: return "BadGridStep";
        case Errc::BadWeights: return "BadWeights";
        case Errc::ZeroBlockNorm: return "ZeroBlockNorm";
        case Errc::ParamOutOfRange: return "ParamOutOfRange";
        case Errc::NotHermitian: return "NotHermitian";
        case Errc::NotProjector: return "NotProjector";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::BadConfig: return "BadConfig";
        case Errc::Parse: return "Parse";
        case Errc::Validation: return "Validation";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

Complex c_div(Complex z1, Complex z2) {
    if (!(c_abs(z2) > kDivisionEpsilon)) {
        throw Error(Errc::DivisionByNearZero, "divisor magnitude is not above 1e-300");
    }
    const double den = c_abs_sq(z2);
    if (den < std::numeric_limits<double>::min()) {
        // |z2|^2 underflows; rescale the divisor first.
        const double scale = std::max(std::abs(z2.re), std::abs(z2.im));
        const Complex w{z2.re / scale, z2.im / scale};
        const double wden = c_abs_sq(w);
        return {(z1.re * w.re + z1.im * w.im) / wden / scale,
                (w.re * z1.im - z1.re * w.im) / wden / scale};
    }
    return {(z1.re * z2.re + z1.im * z2.im) / den, (z2.re * z1.im - z1.re * z2.im) / den};
}

std::ostream& operator<<(std::ostream& os, Complex z) {
    return os << z.re << (z.im < 0 ? " - " : " + ") << std::abs(z.im) << 'i';
}

}  // namespace qev
