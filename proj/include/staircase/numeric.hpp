#pragma once

// Exact integer/rational arithmetic and certified high-precision reals.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "staircase/errors.hpp"

namespace staircase {

namespace mp = boost::multiprecision;

// Expression templates off: values behave like plain value types in ?:, std::min and auto.
using BigInt = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

/// Sets the working precision (decimal digits) for Real temporaries until destroyed.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits10) : saved_(Real::default_precision()) {
        Real::default_precision(digits10);
    }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

inline std::string to_string(const BigInt& x) { return x.str(); }

/// "num/den" with the denominator always present.
inline std::string to_string(const Rational& x) {
    return mp::numerator(x).str() + "/" + mp::denominator(x).str();
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    return Rational(num, den);
}

inline BigInt ipow(BigInt base, unsigned long exponent) {
    BigInt result = 1;
    while (exponent) {
        if (exponent & 1u) result *= base;
        exponent >>= 1u;
        if (exponent) base *= base;
    }
    return result;
}

/// Ceiling of a / b for b > 0.
inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (q * b < a) q += 1;
    return q;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (q * b > a) q -= 1;
    return q;
}

/// Least s >= 0 with s^k >= a (a >= 0, k >= 1).
inline BigInt iroot_ceil(const BigInt& a, unsigned long k) {
    if (a <= 0) return 0;
    if (k == 1) return a;
    BigInt s;
    mpz_root(s.backend().data(), a.backend().data(), k);  // floor root
    if (ipow(s, k) < a) s += 1;
    return s;
}

/// Number of bits in |x|.
inline std::size_t bit_length(const BigInt& x) {
    if (x == 0) return 0;
    return mpz_sizeinbase(x.backend().data(), 2);
}

inline std::optional<std::uint64_t> to_u64(const BigInt& x) {
    if (x < 0 || x > BigInt(std::numeric_limits<std::uint64_t>::max())) return std::nullopt;
    return x.convert_to<std::uint64_t>();
}

inline std::uint64_t require_u64(const BigInt& x, std::string_view what) {
    auto v = to_u64(x);
    if (!v) throw ResourceError(std::string(what) + " = " + x.str() + " does not fit in 64 bits");
    return *v;
}

/// Parses "7", "-3", "3/2", "0.25" or "1e-3" into an exact rational.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto fail = [&] { throw ValidationError("not a rational number: '" + s + "'"); };
    if (s.empty()) fail();
    auto digits_only = [](std::string_view v, bool allow_sign) {
        if (v.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (v[0] == '-' || v[0] == '+')) i = 1;
        if (i == v.size()) return false;
        for (; i < v.size(); ++i)
            if (v[i] < '0' || v[i] > '9') return false;
        return true;
    };
    // GMP reads a leading 0 as an octal prefix, so strip leading zeros first.
    auto decimal = [](std::string v) {
        bool neg = false;
        if (v[0] == '-' || v[0] == '+') {
            neg = v[0] == '-';
            v.erase(0, 1);
        }
        const auto nz = v.find_first_not_of('0');
        v = nz == std::string::npos ? "0" : v.substr(nz);
        BigInt x(v);
        return neg ? BigInt(-x) : x;
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        auto num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!digits_only(num, true) || !digits_only(den, false)) fail();
        return make_rational(decimal(num), decimal(den));
    }
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        auto ex = s.substr(e + 1);
        if (!digits_only(ex, true)) fail();
        exp10 = std::stol(ex);
        s = s.substr(0, e);
    }
    std::string mantissa = s;
    if (auto dot = s.find('.'); dot != std::string::npos) {
        auto frac = s.substr(dot + 1);
        mantissa = s.substr(0, dot) + frac;
        exp10 -= static_cast<long>(frac.size());
        if (mantissa == "" || mantissa == "-" || mantissa == "+") fail();
    }
    if (!digits_only(mantissa, true)) fail();
    Rational r{decimal(mantissa)};
    if (exp10 > 0) r *= ipow(BigInt(10), static_cast<unsigned long>(exp10));
    if (exp10 < 0) r /= ipow(BigInt(10), static_cast<unsigned long>(-exp10));
    return r;
}

inline Real to_real(const BigInt& x) { return Real(x); }
inline Real to_real(const Rational& x) { return Real(mp::numerator(x)) / Real(mp::denominator(x)); }

/// Decimal digits used by successive attempts of the certified evaluators.
inline constexpr unsigned kCertifyPrecisions[] = {80, 240, 800, 2400};

/// Ceiling of a real quantity evaluated by `eval` at the ambient precision.
///
/// The value is recomputed at increasing precision until it is separated from
/// the nearest integer by far more than the evaluation error, so the result does
/// not depend on platform rounding. Throws ResourceError when no attempt separates it.
template <class Eval>
BigInt certified_ceil(Eval&& eval) {
    for (unsigned digits : kCertifyPrecisions) {
        PrecisionScope scope(digits);
        Real y = eval();
        Real fl = mp::floor(y);
        Real frac = y - fl;
        Real scale = mp::abs(y) > 1 ? Real(mp::abs(y)) : Real(1);
        Real tol = scale * mp::pow(Real(10), -static_cast<int>(digits - 20));
        if (frac > tol && frac < 1 - tol) return BigInt(fl) + 1;
    }
    throw ResourceError("cannot certify ceiling: value indistinguishable from an integer");
}

/// Sign of a real quantity, or 0 when it cannot be separated from zero at any attempted precision.
template <class Eval>
int certified_sign(Eval&& eval) {
    for (unsigned digits : kCertifyPrecisions) {
        PrecisionScope scope(digits);
        auto [value, magnitude] = eval();
        Real scale = mp::abs(magnitude) > 1 ? Real(mp::abs(magnitude)) : Real(1);
        Real tol = scale * mp::pow(Real(10), -static_cast<int>(digits - 20));
        if (value > tol) return 1;
        if (value < -tol) return -1;
    }
    return 0;
}

/// Rounded decimal rendering with `digits` significant digits.
inline std::string to_decimal(const Rational& x, unsigned digits = 50) {
    PrecisionScope scope(digits + 20);
    return to_real(x).str(digits);
}

inline std::string to_decimal(const Real& x, unsigned digits = 50) { return x.str(digits); }

}  // namespace staircase
