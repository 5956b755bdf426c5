#pragma once

#include <cmath>
#include <iosfwd>

#include "qev/error.hpp"

namespace qev {

/// Cartesian complex scalar carrying every mass value and amplitude.
///
/// Arithmetic follows the textbook component formulas exactly (no scaled
/// division, no polar form). Operators do not check finiteness; use
/// Complex::checked() at trust boundaries (parsing, user input).
struct Complex {
    double re = 0.0;
    double im = 0.0;

    constexpr Complex() = default;
    constexpr Complex(double r, double i = 0.0) : re(r), im(i) {}

    static Complex checked(double r, double i) {
        if (!std::isfinite(r) || !std::isfinite(i)) {
            throw Error(Errc::NonFinite, "complex components must be finite");
        }
        return {r, i};
    }

    bool finite() const { return std::isfinite(re) && std::isfinite(im); }

    constexpr Complex& operator+=(Complex o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    constexpr Complex& operator-=(Complex o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    constexpr Complex& operator*=(Complex o) {
        const double r = re * o.re - im * o.im;
        im = re * o.im + o.re * im;
        re = r;
        return *this;
    }

    friend constexpr bool operator==(Complex a, Complex b) = default;
};

/// Hard guard on |divisor| for c_div.
inline constexpr double kDivisionEpsilon = 1e-300;

constexpr Complex operator+(Complex a, Complex b) { return {a.re + b.re, a.im + b.im}; }
constexpr Complex operator-(Complex a, Complex b) { return {a.re - b.re, a.im - b.im}; }
constexpr Complex operator-(Complex a) { return {-a.re, -a.im}; }
constexpr Complex operator*(Complex a, Complex b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + b.re * a.im};
}
constexpr Complex operator*(double s, Complex a) { return {s * a.re, s * a.im}; }
constexpr Complex operator*(Complex a, double s) { return {s * a.re, s * a.im}; }

constexpr Complex c_add(Complex a, Complex b) { return a + b; }
constexpr Complex c_sub(Complex a, Complex b) { return a - b; }
constexpr Complex c_mul(Complex a, Complex b) { return a * b; }
constexpr Complex c_conj(Complex z) { return {z.re, -z.im}; }

/// x^2 + y^2, i.e. z * conj(z).
constexpr double c_abs_sq(Complex z) { return z.re * z.re + z.im * z.im; }

/// Modulus. Returns |x| exactly when y == 0.
inline double c_abs(Complex z) { return std::hypot(z.re, z.im); }

/// ((x1 x2 + y1 y2) + (x2 y1 - x1 y2) i) / (x2^2 + y2^2).
/// Throws DivisionByNearZero when |z2| <= kDivisionEpsilon.
Complex c_div(Complex z1, Complex z2);

inline Complex operator/(Complex a, Complex b) { return c_div(a, b); }

std::ostream& operator<<(std::ostream& os, Complex z);

}  // namespace qev
