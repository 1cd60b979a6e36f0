#pragma once

// Closed-form word complexity from the per-range increment formulas.

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "staircase/growth.hpp"
#include "staircase/numeric.hpp"
#include "staircase/sequences.hpp"
#include "staircase/table.hpp"

namespace staircase {

struct IncrementRange {
    IncrementTag tag;
    BigInt lo, hi;  // inclusive; empty when lo > hi
    bool empty() const { return lo > hi; }
};

/// The five increment ranges at index n exactly as stated, before any clipping.
inline std::array<IncrementRange, 5> increment_ranges(const ParamTable& p, std::size_t n) {
    const BigInt& c = p.c(n);
    const BigInt& r = p.r(n);
    const BigInt& h = p.h(n);
    const BigInt top = n < p.depth() ? p.c(n + 1) - 1 : BigInt(-1);
    return {{{IncrementTag::cf1, c, c + r - 1},
             {IncrementTag::cf2, c + r, h + 2 * c + 1},
             {IncrementTag::cf3_1, h + 2 * c + 2, h + 2 * c + r - 1},
             {IncrementTag::cf3_2, h + 2 * c + r, h + 2 * c + 2 * r - 3},
             {IncrementTag::cf4, p.m(n), top}}};
}

inline std::string describe_ranges(const ParamTable& p, std::size_t n) {
    std::string s = "n = " + std::to_string(n) + ", [c_n, c_{n+1}) = [" + p.c(n).str() + ", " +
                    (n < p.depth() ? p.c(n + 1).str() : std::string("?")) + ")";
    for (const auto& r : increment_ranges(p, n))
        s += "; " + tag_name(r.tag) + " [" + r.lo.str() + ", " + r.hi.str() + "]";
    return s;
}

/// Checks that the ranges at n (clipped to [c_n, c_{n+1})) are disjoint and
/// cover it, and that c_{n+1} >= m_n so no range is cut short. Throws RangeGapError.
inline void check_tiling(const ParamTable& p, std::size_t n) {
    if (n < 1 || n >= p.depth()) throw RangeError("tiling index " + std::to_string(n) + " outside 1.." + std::to_string(p.depth() - 1));
    const BigInt lo = p.c(n), hi = p.c(n + 1) - 1;
    if (lo > hi) return;  // no length is governed by n
    if (!p.elevation_ok(n))
        throw RangeGapError("increment ranges do not fit below c_{n+1} < m_n = " + p.m(n).str() + ": " + describe_ranges(p, n));
    BigInt next = lo;
    for (const auto& r : increment_ranges(p, n)) {
        BigInt a = std::max(r.lo, lo), b = std::min(r.hi, hi);
        if (a > b) continue;
        if (a != next)
            throw RangeGapError(std::string(a > next ? "gap" : "overlap") + " at length " + (a > next ? next : a).str() +
                                ": " + describe_ranges(p, n));
        next = b + 1;
    }
    if (next != hi + 1) throw RangeGapError("gap at length " + next.str() + ": " + describe_ranges(p, n));
}

struct Increment {
    BigInt delta;
    IncrementTag tag;
    std::size_t n;
};

namespace detail {

// sum_{x=1}^{k} ceil(x/2); zero for k <= 0.
inline BigInt ceil_half_sum(const BigInt& k) {
    if (k <= 0) return 0;
    BigInt j = k / 2;
    return (k % 2 == 0) ? j * (j + 1) : (j + 1) * (j + 1);
}

inline BigInt ceil_half(const BigInt& x) { return (x + 1) / 2; }

inline std::size_t governing_or_throw(const ParamTable& p, const BigInt& l) {
    auto n = p.governing_index(l);
    if (!n)
        throw RangeError("length " + l.str() + " is outside [c_1, c_depth) = [" + p.c(1).str() + ", " +
                         p.c(p.depth()).str() + ")");
    return *n;
}

// Sum of the increments of range rg over lengths a..b (inside the range).
inline BigInt range_sum(const ParamTable& p, std::size_t n, const IncrementRange& rg, const BigInt& a, const BigInt& b) {
    if (a > b) return 0;
    const BigInt cnt = b - a + 1;
    const BigInt& c = p.c(n);
    const BigInt& r = p.r(n);
    const BigInt M = p.h(n) + 2 * c + 1;
    switch (rg.tag) {
        case IncrementTag::cf1: return (a - c + 1 + b - c + 1) * cnt / 2;
        case IncrementTag::cf2: return (r + 1) * cnt;
        case IncrementTag::cf3_1: return (r + 1) * cnt - (ceil_half_sum(b - M) - ceil_half_sum(a - M - 1));
        case IncrementTag::cf3_2: return r * cnt - (ceil_half_sum(b - M) - ceil_half_sum(a - M - 1));
        case IncrementTag::cf4: return cnt;
    }
    return 0;
}

}  // namespace detail

/// p(l+1) - p(l) for c_1 <= l < c_depth, from the range containing l.
inline Increment increment(const ParamTable& p, const BigInt& l) {
    const std::size_t n = detail::governing_or_throw(p, l);
    check_tiling(p, n);
    const BigInt& c = p.c(n);
    const BigInt& r = p.r(n);
    const BigInt M = p.h(n) + 2 * c + 1;
    for (const auto& rg : increment_ranges(p, n)) {
        if (l < rg.lo || l > rg.hi) continue;
        switch (rg.tag) {
            case IncrementTag::cf1: return {l - c + 1, rg.tag, n};
            case IncrementTag::cf2: return {r + 1, rg.tag, n};
            case IncrementTag::cf3_1: return {r - detail::ceil_half(l - M) + 1, rg.tag, n};
            case IncrementTag::cf3_2: return {r - detail::ceil_half(l - M), rg.tag, n};
            case IncrementTag::cf4: return {1, rg.tag, n};
        }
    }
    throw RangeGapError("length " + l.str() + " lies in no range: " + describe_ranges(p, n));
}

/// p(q) in O(depth) operations. p(1) = 2 anchors tables with c_1 = 1; when
/// c_1 > 1 the caller must supply oracle values p(1..c_1).
inline BigInt complexity_closed_form(const ParamTable& p, const BigInt& q, const std::vector<BigInt>& oracle_prefix = {}) {
    if (q < 1) throw RangeError("complexity is defined for q >= 1");
    const BigInt& c1 = p.c(1);
    if (c1 < 1) throw UnsupportedError("closed form needs c_1 >= 1");
    if (c1 > 1 && BigInt(oracle_prefix.size()) < c1)
        throw UnsupportedError("c_1 = " + c1.str() + " > 1: supply oracle values p(1..c_1)");
    if (q > p.c(p.depth()))
        throw RangeError("q = " + q.str() + " exceeds c_depth = " + p.c(p.depth()).str() + "; build a deeper table");
    if (q <= c1) return c1 == 1 ? BigInt(2) : oracle_prefix[q.convert_to<std::size_t>() - 1];
    BigInt value = c1 == 1 ? BigInt(2) : oracle_prefix[c1.convert_to<std::size_t>() - 1];
    const BigInt last = q - 1;  // sum increments for l in [c_1, q-1]
    for (std::size_t n = 1; n < p.depth(); ++n) {
        const BigInt lo = p.c(n), hi = std::min(p.c(n + 1) - 1, last);
        if (lo > hi) {
            if (lo > last) break;
            continue;
        }
        check_tiling(p, n);
        for (const auto& rg : increment_ranges(p, n)) {
            BigInt a = std::max(rg.lo, lo), b = std::min(rg.hi, hi);
            value += detail::range_sum(p, n, rg, a, b);
        }
    }
    return value;
}

/// Closed-form rows for q = 1..q_max with increments and tags.
inline ComplexityTable complexity_table_closed(const ParamTable& p, std::size_t q_max) {
    ComplexityTable t;
    BigInt value = complexity_closed_form(p, 1);
    for (std::size_t q = 1; q <= q_max; ++q) {
        const BigInt Q(static_cast<unsigned long>(q));
        ComplexityEntry e{Q, value, Provenance::closed_form, std::nullopt, std::nullopt};
        if (Q < p.c(p.depth())) {
            Increment inc = increment(p, Q);
            e.delta = inc.delta;
            e.tag = inc.tag;
            value += inc.delta;
        } else if (q < q_max) {
            throw RangeError("q = " + std::to_string(q + 1) + " exceeds c_depth = " + p.c(p.depth()).str());
        }
        t.entries.push_back(std::move(e));
    }
    return t;
}

struct BoundReport {
    BigInt q;
    std::size_t n = 0;               // largest n with c_n <= q
    BigInt value;                    // p(q)
    BigInt upper_anchor;             // p(c_n) + (q - c_n)(r_n + 1)
    BigInt upper_linear;             // q (r_n + 1)
    std::optional<BigInt> lower;     // h_{k+1} when q = m_k
    std::optional<std::size_t> lower_index;
    Rational upper_slack;            // (upper_linear - value) / upper_linear
    std::optional<Rational> lower_slack;  // (value - lower) / lower
};

/// Evaluates the upper bounds at q and the lower bound when q is a post-productive length.
inline BoundReport bound_report(const ParamTable& p, const BigInt& q) {
    BoundReport b;
    b.q = q;
    b.value = complexity_closed_form(p, q);
    for (std::size_t n = 1; n <= p.depth(); ++n)
        if (p.c(n) <= q) b.n = n;
    if (b.n == 0) throw RangeError("q = " + q.str() + " lies below c_1");
    const BigInt& c = p.c(b.n);
    const BigInt& r = p.r(b.n);
    b.upper_anchor = complexity_closed_form(p, c) + (q - c) * (r + 1);
    b.upper_linear = q * (r + 1);
    b.upper_slack = Rational(b.upper_linear - b.value, b.upper_linear);
    for (std::size_t k = 1; k < p.depth(); ++k)
        if (p.m(k) == q) {
            b.lower = p.h(k + 1);
            b.lower_index = k;
            b.lower_slack = Rational(b.value - *b.lower, *b.lower);
        }
    if (b.value > b.upper_anchor || b.upper_anchor > b.upper_linear)
        throw TheoremViolation("upper bound fails at q = " + q.str() + ": p(q) = " + b.value.str() + ", bounds " +
                               b.upper_anchor.str() + " <= " + b.upper_linear.str());
    if (b.lower && b.value < *b.lower)
        throw TheoremViolation("lower bound p(m_n) >= h_{n+1} fails at n = " + std::to_string(*b.lower_index) + ": " +
                               b.value.str() + " < " + b.lower->str());
    return b;
}

/// Per-index recount of the counting identities behind the lower bound.
struct LowerBoundIdentity {
    std::size_t n;
    BigInt r;
    BigInt stated_sum;         // r-2 + sum_{x=0}^{2(r-2)} (r - ceil(x/2))
    BigInt stated_total;       // r^2 - 4
    bool stated_identity_holds;
    std::optional<BigInt> tail_from_first;   // p(m_n) - p(h_n+2c_n+1)
    std::optional<BigInt> tail_from_second;  // p(m_n) - p(h_n+2c_n+2)
    std::optional<BigInt> cf1_total;         // p(c_n+r_n) - p(c_n), expected r(r+1)/2
    std::optional<BigInt> p_m;
    BigInt h_next;
    std::optional<bool> bound_holds;         // p(m_n) >= h_{n+1}
};

inline std::vector<LowerBoundIdentity> lowerbound_identity_report(const ParamTable& p) {
    std::vector<LowerBoundIdentity> out;
    const BigInt limit = p.c(p.depth());
    for (std::size_t n = 1; n < p.depth(); ++n) {
        LowerBoundIdentity row;
        row.n = n;
        row.r = p.r(n);
        const BigInt& r = row.r;
        const BigInt X = 2 * (r - 2);
        row.stated_sum = r - 2 + (X >= 0 ? (X + 1) * r - detail::ceil_half_sum(X) : BigInt(0));
        row.stated_total = r * r - 4;
        row.stated_identity_holds = row.stated_sum == row.stated_total;
        row.h_next = p.h(n + 1);
        const BigInt base = p.h(n) + 2 * p.c(n);
        if (p.m(n) <= limit && p.c(1) == 1 && p.elevation_ok(n)) {
            row.p_m = complexity_closed_form(p, p.m(n));
            row.tail_from_first = *row.p_m - complexity_closed_form(p, base + 1);
            row.tail_from_second = *row.p_m - complexity_closed_form(p, base + 2);
            row.cf1_total = complexity_closed_form(p, p.c(n) + r) - complexity_closed_form(p, p.c(n));
            row.bound_holds = *row.p_m >= row.h_next;
        }
        out.push_back(std::move(row));
    }
    return out;
}

enum class RatioTarget { T1, T2, T3, T4, T5 };

inline RatioTarget parse_ratio_target(const std::string& s) {
    if (s == "T1") return RatioTarget::T1;
    if (s == "T2") return RatioTarget::T2;
    if (s == "T3") return RatioTarget::T3;
    if (s == "T4") return RatioTarget::T4;
    if (s == "T5") return RatioTarget::T5;
    throw ValidationError("unknown ratio target '" + s + "' (expected T1..T5)");
}

struct RatioRow {
    std::size_t n;
    BigInt q;
    std::string numerator;    // exact integer or rational
    std::string denominator;  // exact integer, or a 50-digit decimal when irrational
    std::string decimal;      // 50 significant digits
    bool exact;
};

struct RatioScanOptions {
    std::optional<GrowthFunction> f;       // T1
    std::optional<Rational> epsilon;       // T3
    std::size_t exact_terms = 1000;        // T2: exact rationals up to this many terms
    std::size_t max_terms = 2000000;       // T2: stop summing beyond this many terms
    std::vector<BigInt> dense;             // T5: extra sample points
    unsigned digits = 50;
};

/// Ratio series at the sample points of each target: c_n for T1/T3/T5, m_n for T4,
/// partial sums of 1/p(q) from q = 2 up to each c_n for T2.
inline std::vector<RatioRow> theorem_ratio_scan(const ParamTable& p, RatioTarget target, const RatioScanOptions& opt = {}) {
    std::vector<RatioRow> rows;
    PrecisionScope scope(opt.digits + 30);
    const BigInt limit = p.c(p.depth());
    auto real_row = [&](std::size_t n, const BigInt& q, const BigInt& num, const Real& den) {
        rows.push_back({n, q, num.str(), to_decimal(den, opt.digits), to_decimal(Real(to_real(num) / den), opt.digits), false});
    };
    switch (target) {
        case RatioTarget::T1: {
            if (!opt.f) throw ValidationError("T1 scan needs the growth function");
            for (std::size_t n = 1; n <= p.depth(); ++n) {
                const BigInt& q = p.c(n);
                BigInt v = complexity_closed_form(p, q);
                if (auto fx = opt.f->exact_value(q)) {
                    Rational r(v, *fx);
                    rows.push_back({n, q, v.str(), fx->str(), to_decimal(r, opt.digits), true});
                } else {
                    real_row(n, q, v, opt.f->value(q));
                }
            }
            break;
        }
        case RatioTarget::T2: {
            Rational exact = 0;
            Real approx = 0;
            bool is_exact = true;
            std::size_t terms = 0;
            BigInt value = complexity_closed_form(p, 1);
            BigInt q = 1;
            for (std::size_t n = 1; n <= p.depth(); ++n) {
                const BigInt& target_q = p.c(n);
                if (target_q > 1 && BigInt(terms) + (target_q - q) > BigInt(opt.max_terms)) break;
                while (q < target_q) {
                    value += increment(p, q).delta;
                    q += 1;
                    ++terms;
                    if (is_exact && terms > opt.exact_terms) {
                        is_exact = false;
                        approx = to_real(exact);
                    }
                    if (is_exact)
                        exact += Rational(1, value);
                    else
                        approx += Real(1) / to_real(value);
                }
                if (is_exact)
                    rows.push_back({n, q, mp::numerator(exact).str(), mp::denominator(exact).str(), to_decimal(exact, opt.digits), true});
                else
                    rows.push_back({n, q, to_decimal(approx, opt.digits), "1", to_decimal(approx, opt.digits), false});
            }
            break;
        }
        case RatioTarget::T3: {
            if (!opt.epsilon) throw ValidationError("T3 scan needs epsilon");
            for (std::size_t n = 1; n <= p.depth(); ++n) {
                const BigInt& q = p.c(n);
                if (q < 2) continue;
                BigInt v = complexity_closed_form(p, q);
                real_row(n, q, v, to_real(q) * mp::pow(mp::log(to_real(q)), to_real(*opt.epsilon)));
            }
            break;
        }
        case RatioTarget::T4: {
            for (std::size_t n = 1; n < p.depth(); ++n) {
                const BigInt& q = p.m(n);
                if (q < 2 || q > limit) continue;
                BigInt v = complexity_closed_form(p, q);
                real_row(n, q, v, to_real(q) * mp::log(to_real(q)));
            }
            break;
        }
        case RatioTarget::T5: {
            auto add = [&](std::size_t n, const BigInt& q) {
                BigInt v = complexity_closed_form(p, q);
                Rational r(v, q);
                rows.push_back({n, q, v.str(), q.str(), to_decimal(r, opt.digits), true});
            };
            for (std::size_t n = 2; n <= p.depth(); ++n) add(n, p.c(n));
            for (const auto& q : opt.dense) {
                if (q < 1 || q > limit) throw RangeError("dense sample q = " + q.str() + " outside [1, c_depth]");
                add(0, q);
            }
            break;
        }
    }
    return rows;
}

inline void write_complexity_csv(std::ostream& os, const ParamTable& p, const ComplexityTable& t) {
    os << "q,p,delta,lemma_tag,lower,upper,provenance\n";
    for (const auto& e : t.entries) {
        std::string lower, upper;
        for (std::size_t k = 1; k < p.depth(); ++k)
            if (p.m(k) == e.q) lower = p.h(k + 1).str();
        std::size_t n = 0;
        for (std::size_t k = 1; k <= p.depth(); ++k)
            if (p.c(k) <= e.q) n = k;
        if (n > 0 && p.c(1) == 1) upper = (complexity_closed_form(p, p.c(n)) + (e.q - p.c(n)) * (p.r(n) + 1)).str();
        os << e.q << ',' << e.p << ',' << (e.delta ? e.delta->str() : "") << ',' << (e.tag ? tag_name(*e.tag) : "") << ','
           << lower << ',' << upper << ',' << provenance_name(e.provenance) << '\n';
    }
}

inline void write_ratio_csv(std::ostream& os, const std::vector<RatioRow>& rows) {
    os << "n,q,ratio_numerator,ratio_denominator,decimal\n";
    for (const auto& r : rows) os << r.n << ',' << r.q << ',' << r.numerator << ',' << r.denominator << ',' << r.decimal << '\n';
}

}  // namespace staircase
