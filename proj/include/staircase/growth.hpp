#pragma once

// Growth-function presets for the theorem1 recipe.
//
// Every preset carries an integral-test upper bound on the tail sum
// sum_{q >= x} 1/f(q), which is what makes the threshold sequence x_t
// computable. Arbitrary user functions cannot be certified and are not accepted;
// explicit value tables must bring their own tail certificates.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "staircase/numeric.hpp"

namespace staircase {

struct TailCertificate {
    BigInt x;        // certificate holds for every start point >= x
    Rational bound;  // sum_{q >= x} 1/f(q) <= bound
};

class GrowthFunction {
public:
    enum class Kind { power, q_log, q_ceil_log, table };

    /// f(q) = q^a, a rational and > 1.
    static GrowthFunction power(Rational a) {
        if (a <= 1) throw ValidationError("power preset needs exponent > 1, got " + to_string(a));
        GrowthFunction f(Kind::power);
        f.param_ = std::move(a);
        return f;
    }

    /// f(q) = q (ln q)^b, b rational and > 1.
    static GrowthFunction q_log(Rational b) {
        if (b <= 1) throw ValidationError("qlog preset needs b > 1, got " + to_string(b));
        GrowthFunction f(Kind::q_log);
        f.param_ = std::move(b);
        return f;
    }

    /// f(q) = q * ceil(ln(q+1))^b, b integer >= 2.
    static GrowthFunction q_ceil_log(unsigned b) {
        if (b < 2) throw ValidationError("qceillog preset needs integer b >= 2");
        GrowthFunction f(Kind::q_ceil_log);
        f.param_ = Rational(b);
        return f;
    }

    /// f(q) given explicitly for q = 1..values.size(), with tail certificates.
    static GrowthFunction table(std::vector<BigInt> values, std::vector<TailCertificate> certificates) {
        if (values.empty()) throw ValidationError("table preset needs at least one value");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] <= 0) throw ValidationError("table preset values must be positive");
            // f(q)/q nondecreasing: f(q+1) * q >= f(q) * (q+1)
            if (i > 0 && values[i] * BigInt(i) < values[i - 1] * BigInt(i + 1))
                throw ValidationError("table preset: f(q)/q must be nondecreasing");
        }
        GrowthFunction f(Kind::table);
        f.values_ = std::move(values);
        f.certificates_ = std::move(certificates);
        return f;
    }

    /// Parses "pow:3/2", "qlog:2", "qceillog:3" (tables are built programmatically).
    static GrowthFunction parse(const std::string& spec) {
        auto colon = spec.find(':');
        if (colon == std::string::npos) throw ValidationError("growth function '" + spec + "': expected kind:param");
        auto kind = spec.substr(0, colon);
        auto arg = spec.substr(colon + 1);
        if (kind == "pow") return power(parse_rational(arg));
        if (kind == "qlog") return q_log(parse_rational(arg));
        if (kind == "qceillog") {
            Rational b = parse_rational(arg);
            if (mp::denominator(b) != 1 || b < 2) throw ValidationError("qceillog needs an integer >= 2");
            return q_ceil_log(mp::numerator(b).convert_to<unsigned>());
        }
        throw UnsupportedError("unknown growth function '" + kind + "' (supported: pow, qlog, qceillog)");
    }

    /// The replacement g(q) = min(f(q), q^{3/2}) used by the theorem1 construction.
    GrowthFunction clamped() const {
        if (kind_ == Kind::power) return param_ <= Rational(3, 2) ? *this : power(Rational(3, 2));
        GrowthFunction g = *this;
        g.clamped_ = true;
        return g;
    }

    Kind kind() const noexcept { return kind_; }
    bool is_clamped() const noexcept { return clamped_; }
    const Rational& parameter() const noexcept { return param_; }

    std::string id() const {
        std::string base;
        switch (kind_) {
            case Kind::power: base = "pow:" + rat_text(param_); break;
            case Kind::q_log: base = "qlog:" + rat_text(param_); break;
            case Kind::q_ceil_log: base = "qceillog:" + rat_text(param_); break;
            case Kind::table: base = "table:" + std::to_string(values_.size()); break;
        }
        return clamped_ ? "min(" + base + ",pow:3/2)" : base;
    }

    /// ceil(f(q) / d) for q >= 1, d >= 1, exact or certified.
    BigInt ceil_ratio(const BigInt& q, const BigInt& d) const {
        BigInt v = raw_ceil_ratio(q, d);
        if (clamped_) v = std::min(v, power_ceil_ratio(Rational(3, 2), q, d));
        return v;
    }

    /// f(q) at the ambient Real precision.
    Real value(const BigInt& q) const {
        Real v = raw_value(q);
        if (clamped_) {
            Real cap = mp::pow(to_real(q), Real(1.5));
            if (cap < v) v = cap;
        }
        return v;
    }

    /// Exact f(q) when f is integer-valued at q.
    std::optional<BigInt> exact_value(const BigInt& q) const {
        if (clamped_) return std::nullopt;
        switch (kind_) {
            case Kind::power:
                if (mp::denominator(param_) == 1) return ipow(q, mp::numerator(param_).convert_to<unsigned long>());
                return std::nullopt;
            case Kind::q_ceil_log: return q * ipow(ceil_log1p(q), exponent_u());
            case Kind::table: return table_at(q);
            case Kind::q_log: return std::nullopt;
        }
        return std::nullopt;
    }

    /// Whether the certified tail bound at x is <= t^{-3} and f(q)/q >= t^2 for all q >= x.
    bool threshold_holds(const BigInt& x, unsigned long t) const {
        return tail_at_most(x, t) && ratio_at_least(x, t);
    }

    /// Smallest x at which the tail bound is defined at all.
    BigInt min_threshold_start() const {
        if (kind_ == Kind::power && !clamped_) return 2;
        if (kind_ == Kind::table && !clamped_) return 1;
        return 3;
    }

    bool has_tail_bound() const { return kind_ != Kind::table || !certificates_.empty(); }

private:
    explicit GrowthFunction(Kind k) : kind_(k) {}

    static std::string rat_text(const Rational& r) {
        return mp::denominator(r) == 1 ? mp::numerator(r).str() : to_string(r);
    }

    unsigned long exponent_u() const { return mp::numerator(param_).convert_to<unsigned long>(); }

    BigInt table_at(const BigInt& q) const {
        if (q < 1 || q > BigInt(values_.size()))
            throw UnsupportedError("table growth function is undefined at q = " + q.str());
        return values_[q.convert_to<std::size_t>() - 1];
    }

    static BigInt ceil_log1p(const BigInt& q) {
        return certified_ceil([&] { return mp::log(to_real(q) + 1); });
    }

    // Least k with (k d)^den >= q^num, i.e. ceil(q^{num/den} / d).
    static BigInt power_ceil_ratio(const Rational& a, const BigInt& q, const BigInt& d) {
        const auto num = mp::numerator(a).convert_to<unsigned long>();
        const auto den = mp::denominator(a).convert_to<unsigned long>();
        return ceil_div(iroot_ceil(ipow(q, num), den), d);
    }

    BigInt raw_ceil_ratio(const BigInt& q, const BigInt& d) const {
        switch (kind_) {
            case Kind::power: return power_ceil_ratio(param_, q, d);
            case Kind::q_log:
                return certified_ceil([&] {
                    return to_real(q) * mp::pow(mp::log(to_real(q)), to_real(param_)) / to_real(d);
                });
            case Kind::q_ceil_log: return ceil_div(q * ipow(ceil_log1p(q), exponent_u()), d);
            case Kind::table: return ceil_div(table_at(q), d);
        }
        return 0;
    }

    Real raw_value(const BigInt& q) const {
        switch (kind_) {
            case Kind::power: return mp::pow(to_real(q), to_real(param_));
            case Kind::q_log: return to_real(q) * mp::pow(mp::log(to_real(q)), to_real(param_));
            case Kind::q_ceil_log: return to_real(q * ipow(ceil_log1p(q), exponent_u()));
            case Kind::table: return to_real(table_at(q));
        }
        return Real(0);
    }

    // Upper bound on sum_{q >= x} 1/f(q) as a real; +inf when no bound is available.
    Real tail_value(const BigInt& x, Kind kind, const Rational& param) const {
        switch (kind) {
            case Kind::power: {
                if (x < 2) return std::numeric_limits<Real>::infinity();
                Real am1 = to_real(param) - 1;
                return mp::pow(to_real(x) - 1, -am1) / am1;
            }
            case Kind::q_log:
            case Kind::q_ceil_log: {
                // q ceil(ln(q+1))^b >= q (ln q)^b, so both share the integral bound.
                if (x < 3) return std::numeric_limits<Real>::infinity();
                Real bm1 = to_real(param) - 1;
                return mp::pow(mp::log(to_real(x) - 1), -bm1) / bm1;
            }
            case Kind::table: {
                std::optional<Rational> best;
                for (const auto& c : certificates_)
                    if (c.x <= x && (!best || c.bound < *best)) best = c.bound;
                if (!best) return std::numeric_limits<Real>::infinity();
                return to_real(*best);
            }
        }
        return std::numeric_limits<Real>::infinity();
    }

    bool tail_at_most(const BigInt& x, unsigned long t) const {
        const BigInt t3 = ipow(BigInt(t), 3);
        if (kind_ == Kind::power && !clamped_) {
            // (x-1)^{1-a}/(a-1) <= t^{-3}  <=>  t^{3Q} Q^Q <= P^Q (x-1)^P with a-1 = P/Q
            if (x < 2) return false;
            Rational am1 = param_ - 1;
            const auto P = mp::numerator(am1).convert_to<unsigned long>();
            const auto Q = mp::denominator(am1).convert_to<unsigned long>();
            return ipow(t3, Q) * ipow(BigInt(Q), Q) <= ipow(BigInt(P), Q) * ipow(x - 1, P);
        }
        if (kind_ == Kind::table && !clamped_) {
            for (const auto& c : certificates_)
                if (c.x <= x && c.bound * Rational(t3) <= 1) return true;
            return false;
        }
        // Generic path: bound = tail(f) [+ tail(q^{-3/2})], certified strictly below t^{-3}.
        int sign = certified_sign([&] {
            Real bound = tail_value(x, kind_, param_);
            if (clamped_) bound += tail_value(x, Kind::power, Rational(3, 2));
            Real limit = 1 / to_real(t3);
            return std::pair<Real, Real>(limit - bound, limit);
        });
        return sign > 0;
    }

    bool ratio_at_least(const BigInt& x, unsigned long t) const {
        // f(q)/q is nondecreasing, so checking q = x suffices.
        const BigInt t2 = BigInt(t) * t;
        if (clamped_) {
            // min(f(x)/x, x^{1/2}) >= t^2
            if (x < t2 * t2) return false;
        }
        switch (kind_) {
            case Kind::power: {
                Rational am1 = param_ - 1;
                const auto P = mp::numerator(am1).convert_to<unsigned long>();
                const auto Q = mp::denominator(am1).convert_to<unsigned long>();
                return ipow(x, P) >= ipow(t2, Q);
            }
            case Kind::q_log: {
                int sign = certified_sign([&] {
                    Real v = mp::pow(mp::log(to_real(x)), to_real(param_));
                    return std::pair<Real, Real>(v - to_real(t2), v);
                });
                return sign > 0;
            }
            case Kind::q_ceil_log: return ipow(ceil_log1p(x), exponent_u()) >= t2;
            case Kind::table: {
                const BigInt last(values_.size());
                if (x <= last) return table_at(x) >= t2 * x;
                if (values_.back() >= t2 * last) return true;
                throw UnsupportedError("table growth function: ratio condition undecidable beyond q = " + last.str());
            }
        }
        return false;
    }

    Kind kind_;
    Rational param_{0};
    bool clamped_ = false;
    std::vector<BigInt> values_;
    std::vector<TailCertificate> certificates_;
};

/// Thresholds x_1 = 1 and, for t >= 2, the least x with a certified tail
/// sum_{q >= x} 1/f(q) <= t^{-3} and f(q)/q >= t^2 for q >= x.
inline std::vector<BigInt> compute_thresholds(const GrowthFunction& f, unsigned long t_max,
                                              std::size_t max_bits = 1u << 20) {
    if (!f.has_tail_bound())
        throw UnsupportedError("growth function " + f.id() + " carries no tail bound");
    std::vector<BigInt> xs;
    if (t_max == 0) return xs;
    xs.push_back(1);
    for (unsigned long t = 2; t <= t_max; ++t) {
        BigInt lo = std::max(xs.back(), f.min_threshold_start());
        if (f.threshold_holds(lo, t)) {
            xs.push_back(lo);
            continue;
        }
        // Exponential search for a satisfying point, then bisection for the least one.
        BigInt step = 1;
        BigInt hi = lo + step;
        while (!f.threshold_holds(hi, t)) {
            lo = hi;
            step *= 2;
            hi = lo + step;
            if (bit_length(hi) > max_bits) {
                if (f.kind() == GrowthFunction::Kind::table)
                    throw UnsupportedError("table growth function: no certificate reaches t^-3 for t = " +
                                           std::to_string(t));
                throw ResourceError("threshold x_" + std::to_string(t) + " exceeds the big-integer budget");
            }
        }
        while (hi - lo > 1) {
            BigInt mid = (lo + hi) / 2;
            if (f.threshold_holds(mid, t))
                hi = mid;
            else
                lo = mid;
        }
        xs.push_back(hi);
    }
    return xs;
}

}  // namespace staircase
