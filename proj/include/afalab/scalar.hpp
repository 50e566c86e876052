// Scalar: the number type underneath every machine in this library.
//
// A scalar is either an exact arbitrary-precision rational or a 64-bit
// float, and the mode is part of the value. Machines declare one mode and
// every matrix entry shares it; mixing modes in arithmetic is a hard error
// rather than a silent promotion, because the exactness claims of the
// rational constructions (integer transition matrices, exact sign tests at
// a cutpoint) would not survive contact with floating point.

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <variant>

#include "afalab/errors.hpp"

namespace afalab {

enum class ScalarMode { Rational, Float64 };

inline const char* to_string(ScalarMode m) {
    return m == ScalarMode::Rational ? "rational" : "float";
}

// Default tolerance for float-mode comparisons. All desk-scale products in
// this library stay well above it.
inline constexpr double kDefaultTol = 1e-9;

class Scalar {
public:
    // Rational zero by default.
    Scalar() : value_(mpq_class(0)) {}

    static Scalar rational(long num, long den = 1) {
        if (den == 0) throw Error("rational with zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        return Scalar(std::move(q));
    }

    static Scalar rational(mpq_class q) {
        q.canonicalize();
        return Scalar(std::move(q));
    }

    // Parses "num/den" or a plain integer string.
    static Scalar parse_rational(const std::string& text) {
        mpq_class q;
        if (q.set_str(text, 10) != 0)
            throw ParseError("bad rational literal: '" + text + "'");
        if (q.get_den() == 0)
            throw ParseError("zero denominator in rational literal: '" + text + "'");
        q.canonicalize();
        return Scalar(std::move(q));
    }

    static Scalar real(double d) { return Scalar(d); }

    static Scalar zero(ScalarMode m) { return from_int(0, m); }
    static Scalar one(ScalarMode m) { return from_int(1, m); }

    static Scalar from_int(long n, ScalarMode m) {
        if (m == ScalarMode::Rational) return rational(n);
        return real(static_cast<double>(n));
    }

    ScalarMode mode() const {
        return std::holds_alternative<mpq_class>(value_) ? ScalarMode::Rational
                                                         : ScalarMode::Float64;
    }
    bool is_rational() const { return mode() == ScalarMode::Rational; }

    const mpq_class& rat() const {
        if (!is_rational()) throw ModeMismatchError("scalar is not rational");
        return std::get<mpq_class>(value_);
    }

    double flt() const {
        if (is_rational()) throw ModeMismatchError("scalar is not float");
        return std::get<double>(value_);
    }

    // Lossy view, defined for both modes.
    double to_double() const {
        return is_rational() ? rat().get_d() : flt();
    }

    bool is_zero() const {
        return is_rational() ? sgn(rat()) == 0 : flt() == 0.0;
    }

    // True for rationals with denominator 1.
    bool is_integer() const {
        return is_rational() && rat().get_den() == 1;
    }

    int sign() const {
        if (is_rational()) return sgn(rat());
        double d = flt();
        return (d > 0) - (d < 0);
    }

    Scalar operator-() const {
        if (is_rational()) return Scalar(mpq_class(-rat()));
        return Scalar(-flt());
    }

    Scalar abs() const {
        if (is_rational()) return Scalar(mpq_class(::abs(rat())));
        return Scalar(std::fabs(flt()));
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        check_modes(a, b, "+");
        if (a.is_rational()) return Scalar(mpq_class(a.rat() + b.rat()));
        return Scalar(a.flt() + b.flt());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        check_modes(a, b, "-");
        if (a.is_rational()) return Scalar(mpq_class(a.rat() - b.rat()));
        return Scalar(a.flt() - b.flt());
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        check_modes(a, b, "*");
        if (a.is_rational()) return Scalar(mpq_class(a.rat() * b.rat()));
        return Scalar(a.flt() * b.flt());
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        check_modes(a, b, "/");
        if (b.is_zero()) throw Error("scalar division by zero");
        if (a.is_rational()) return Scalar(mpq_class(a.rat() / b.rat()));
        return Scalar(a.flt() / b.flt());
    }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    // Exact comparison; both operands must share a mode.
    friend bool operator==(const Scalar& a, const Scalar& b) {
        check_modes(a, b, "==");
        if (a.is_rational()) return a.rat() == b.rat();
        return a.flt() == b.flt();
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) {
        check_modes(a, b, "<");
        if (a.is_rational()) return a.rat() < b.rat();
        return a.flt() < b.flt();
    }
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

    // Equality up to tol in float mode, exact in rational mode.
    friend bool close(const Scalar& a, const Scalar& b, double tol) {
        if (a.is_rational() && b.is_rational()) return a.rat() == b.rat();
        return std::fabs(a.to_double() - b.to_double()) <= tol;
    }

    // "num/den" (denominator always written) or a 12-significant-digit float.
    std::string str() const {
        if (is_rational())
            return rat().get_num().get_str() + "/" + rat().get_den().get_str();
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", flt());
        return buf;
    }

private:
    explicit Scalar(mpq_class q) : value_(std::move(q)) {}
    explicit Scalar(double d) : value_(d) {}

    static void check_modes(const Scalar& a, const Scalar& b, const char* op) {
        if (a.mode() != b.mode())
            throw ModeMismatchError(std::string("scalar mode mismatch in '") + op +
                                    "': " + to_string(a.mode()) + " vs " +
                                    to_string(b.mode()));
    }

    std::variant<mpq_class, double> value_;
};

}  // namespace afalab
