#pragma once

// Cut, elevating, height and post-productive sequences for every recipe.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "staircase/growth.hpp"
#include "staircase/numeric.hpp"

namespace staircase {

enum class RecipeKind { demo, theorem1, theorem2, theorem3, classic_staircase, explicit_table };

inline std::string recipe_name(RecipeKind k) {
    switch (k) {
        case RecipeKind::demo: return "demo";
        case RecipeKind::theorem1: return "theorem1";
        case RecipeKind::theorem2: return "theorem2";
        case RecipeKind::theorem3: return "theorem3";
        case RecipeKind::classic_staircase: return "classic-staircase";
        case RecipeKind::explicit_table: return "explicit";
    }
    return "?";
}

inline RecipeKind parse_recipe_kind(const std::string& s) {
    for (auto k : {RecipeKind::demo, RecipeKind::theorem1, RecipeKind::theorem2, RecipeKind::theorem3,
                   RecipeKind::classic_staircase, RecipeKind::explicit_table})
        if (recipe_name(k) == s) return k;
    throw ValidationError("unknown recipe '" + s +
                          "' (expected demo, theorem1, theorem2, theorem3, classic-staircase, explicit)");
}

struct RecipeSpec {
    RecipeKind kind = RecipeKind::demo;
    std::optional<Rational> epsilon;        // theorem2, theorem3
    std::optional<GrowthFunction> f;        // theorem1
    std::vector<BigInt> e;                  // classic-staircase spacer bases; the last entry repeats
    std::vector<BigInt> explicit_r;         // explicit; also overrides r_n = n+1 for classic-staircase
    std::vector<BigInt> explicit_c;         // explicit
    std::size_t exponent_bit_budget = 1u << 22;  // theorem3: largest allowed n^alpha

    std::string describe() const {
        std::string s = recipe_name(kind);
        if (epsilon) s += " epsilon=" + to_string(*epsilon);
        if (f) s += " f=" + f->id();
        return s;
    }
};

struct ParamFlags {
    bool c1_ok = false;                   // c_1 >= 1
    std::vector<bool> elevation_ok;       // [n-1] for n = 1..N-1: c_{n+1} >= m_n
    std::vector<bool> elevated_ok;        // [n-1] for n = 1..N-1: c_{n+1} >= c_n + r_n
    std::vector<bool> cuts_monotone;      // [n-1] for n = 1..N-1: r_{n+1} >= r_n
    std::vector<bool> cuts_positive;      // [n-1] for n = 1..N: r_n >= 1
    std::vector<Rational> cut_square_ratio;  // [n-1] for n = 1..N: r_n^2 / h_n (reported only)

    bool all_elevation_ok() const { return std::all_of(elevation_ok.begin(), elevation_ok.end(), [](bool b) { return b; }); }
};

/// Parameter sequences with 1-based accessors: r, c, m on 1..depth and h on 1..depth+1.
class ParamTable {
public:
    ParamTable() = default;

    std::size_t depth() const noexcept { return r_.size(); }
    RecipeKind recipe() const noexcept { return recipe_; }
    const std::string& recipe_detail() const noexcept { return detail_; }

    const BigInt& r(std::size_t n) const { return at(r_, n, "r"); }
    const BigInt& c(std::size_t n) const { return at(c_, n, "c"); }
    const BigInt& h(std::size_t n) const { return at(h_, n, "h"); }
    const BigInt& m(std::size_t n) const { return at(m_, n, "m"); }

    const std::vector<BigInt>& r_values() const noexcept { return r_; }
    const std::vector<BigInt>& c_values() const noexcept { return c_; }
    const std::vector<BigInt>& h_values() const noexcept { return h_; }
    const std::vector<BigInt>& m_values() const noexcept { return m_; }
    const ParamFlags& flags() const noexcept { return flags_; }

    bool elevation_ok(std::size_t n) const {
        if (n < 1 || n >= depth()) throw RangeError("elevation_ok index " + std::to_string(n) + " outside 1.." + std::to_string(depth() - 1));
        return flags_.elevation_ok[n - 1];
    }

    /// The unique n in 1..depth-1 with c_n <= l < c_{n+1}, if any.
    std::optional<std::size_t> governing_index(const BigInt& l) const {
        for (std::size_t n = 1; n < depth(); ++n)
            if (c(n) <= l && l < c(n + 1)) return n;
        return std::nullopt;
    }

    /// Spacer bases e_n of a classic-staircase table (empty for other recipes).
    const std::vector<BigInt>& spacer_bases() const noexcept { return e_; }

    friend ParamTable make_table(RecipeKind, std::vector<BigInt>, std::vector<BigInt>, std::string, std::vector<BigInt>);

private:
    static const BigInt& at(const std::vector<BigInt>& v, std::size_t n, const char* name) {
        if (n < 1 || n > v.size())
            throw RangeError(std::string(name) + " index " + std::to_string(n) + " outside 1.." + std::to_string(v.size()));
        return v[n - 1];
    }

    RecipeKind recipe_ = RecipeKind::explicit_table;
    std::string detail_;
    std::vector<BigInt> r_, c_, h_, m_, e_;
    ParamFlags flags_;
};

/// Fills h, m and the validity flags from r and c (any depth >= 1). Never rejects on flags.
inline ParamTable make_table(RecipeKind recipe, std::vector<BigInt> r, std::vector<BigInt> c,
                             std::string detail = {}, std::vector<BigInt> e = {}) {
    if (r.empty() || r.size() != c.size())
        throw ValidationError("r and c must be nonempty and of equal length");
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] < 0 || c[i] < 0) throw ValidationError("sequence entries must be nonnegative (index " + std::to_string(i + 1) + ")");
    ParamTable t;
    t.recipe_ = recipe;
    t.detail_ = detail.empty() ? recipe_name(recipe) : std::move(detail);
    const std::size_t N = r.size();
    t.h_.reserve(N + 1);
    t.h_.push_back(1);
    for (std::size_t i = 0; i < N; ++i) {
        const BigInt& rn = r[i];
        const BigInt& hn = t.h_.back();
        t.h_.push_back((rn + 1) * hn + rn * c[i] + rn * (rn - 1) / 2);
        t.m_.push_back(hn + 2 * c[i] + 2 * rn - 2);
    }
    auto& f = t.flags_;
    f.c1_ok = c[0] >= 1;
    for (std::size_t i = 0; i < N; ++i) {
        f.cuts_positive.push_back(r[i] >= 1);
        f.cut_square_ratio.push_back(Rational(r[i] * r[i], t.h_[i]));
        if (i + 1 < N) {
            f.elevation_ok.push_back(c[i + 1] >= t.m_[i]);
            f.elevated_ok.push_back(c[i + 1] >= c[i] + r[i]);
            f.cuts_monotone.push_back(r[i + 1] >= r[i]);
        }
    }
    t.r_ = std::move(r);
    t.c_ = std::move(c);
    t.e_ = std::move(e);
    return t;
}

namespace detail {

// ceil((n+1) * ln(n+1)^{1+eps}) - 1, certified.
inline BigInt theorem2_cut(std::size_t n, const Rational& eps) {
    return certified_ceil([&] {
        Real x = Real(static_cast<unsigned long>(n + 1));
        return x * mp::pow(mp::log(x), 1 + to_real(eps));
    }) - 1;
}

// ceil(h / n^{1+eps}) exactly for rational eps = P/Q: least k with k^Q * n^{Q+P} >= h^Q.
inline BigInt theorem3_elevation(const BigInt& h, std::size_t n, const Rational& eps) {
    const auto P = mp::numerator(eps).convert_to<unsigned long>();
    const auto Q = mp::denominator(eps).convert_to<unsigned long>();
    const BigInt denom = ipow(BigInt(static_cast<unsigned long>(n)), Q + P);
    return iroot_ceil(ceil_div(ipow(h, Q), denom), Q);
}

inline BigInt next_height(const BigInt& h, const BigInt& r, const BigInt& c) {
    return (r + 1) * h + r * c + r * (r - 1) / 2;
}

}  // namespace detail

/// Builds the parameter table of a recipe to the given depth (>= 2).
inline ParamTable build_params(const RecipeSpec& spec, std::size_t depth) {
    if (depth < 2) throw ValidationError("depth must be at least 2, got " + std::to_string(depth));
    std::vector<BigInt> r, c;
    r.reserve(depth);
    c.reserve(depth);
    switch (spec.kind) {
        case RecipeKind::demo: {
            BigInt h = 1;
            for (std::size_t n = 1; n <= depth; ++n) {
                BigInt rn = static_cast<unsigned long>(n + 1);
                BigInt cn = n == 1 ? BigInt(1) : h + 2 * c.back() + 2 * r.back() - 2;
                if (n > 1) h = detail::next_height(h, r.back(), c.back());
                r.push_back(rn);
                c.push_back(cn);
            }
            break;
        }
        case RecipeKind::theorem1: {
            if (!spec.f) throw ValidationError("theorem1 recipe needs a growth function (--f)");
            const GrowthFunction g = spec.f->clamped();
            if (!g.has_tail_bound()) throw UnsupportedError("growth function " + g.id() + " carries no tail bound");
            std::vector<BigInt> xs = compute_thresholds(g, 2);
            BigInt h = 1;
            r.push_back(2);
            c.push_back(1);
            for (std::size_t n = 1; n < depth; ++n) {
                const BigInt& rn = r.back();
                const BigInt& cn = c.back();
                BigInt cnext = h + 2 * cn + 2 * rn - 2;
                // t_n: x_{t_n} <= c_n < x_{t_n + 1}
                while (xs.back() <= cn) xs = compute_thresholds(g, xs.size() + 1);
                unsigned long tn = 0;
                while (tn < xs.size() && xs[tn] <= cn) ++tn;
                BigInt rnext = g.ceil_ratio(cnext, BigInt(tn) * (cnext - cn));
                h = detail::next_height(h, rn, cn);
                r.push_back(rnext);
                c.push_back(cnext);
            }
            break;
        }
        case RecipeKind::theorem2: {
            if (!spec.epsilon) throw ValidationError("theorem2 recipe needs --epsilon");
            const Rational& eps = *spec.epsilon;
            if (eps <= 0 || eps > 1) throw ValidationError("theorem2 needs 0 < epsilon <= 1, got " + to_string(eps));
            BigInt h = 1;
            for (std::size_t n = 1; n <= depth; ++n) {
                BigInt rn = detail::theorem2_cut(n, eps);
                BigInt cn = n == 1 ? BigInt(1) : h + 2 * c.back() + 2 * r.back() - 2;
                if (n > 1) h = detail::next_height(h, r.back(), c.back());
                r.push_back(rn);
                c.push_back(cn);
            }
            break;
        }
        case RecipeKind::theorem3: {
            if (!spec.epsilon) throw ValidationError("theorem3 recipe needs --epsilon");
            const Rational& eps = *spec.epsilon;
            if (eps <= 0) throw ValidationError("theorem3 needs epsilon > 0, got " + to_string(eps));
            const BigInt alpha = ceil_div(mp::numerator(eps) + mp::denominator(eps), mp::numerator(eps));
            const auto a = require_u64(alpha, "alpha");
            BigInt h = 1;
            for (std::size_t n = 1; n <= depth; ++n) {
                BigInt exponent = ipow(BigInt(static_cast<unsigned long>(n)), a);
                if (exponent > BigInt(spec.exponent_bit_budget))
                    throw ResourceError("theorem3: r_" + std::to_string(n) + " = 2^" + exponent.str() +
                                        " - 1 exceeds the big-integer budget of " +
                                        std::to_string(spec.exponent_bit_budget) + " bits");
                BigInt rn = ipow(BigInt(2), exponent.convert_to<unsigned long>()) - 1;
                BigInt cn = n == 1 ? BigInt(1) : detail::theorem3_elevation(h, n, eps);
                r.push_back(rn);
                c.push_back(cn);
                h = detail::next_height(h, rn, cn);
            }
            break;
        }
        case RecipeKind::classic_staircase: {
            if (spec.e.empty()) throw ValidationError("classic-staircase recipe needs the spacer bases e");
            std::vector<BigInt> e;
            for (std::size_t n = 1; n <= depth; ++n) {
                e.push_back(n <= spec.e.size() ? spec.e[n - 1] : spec.e.back());
                if (e.back() < 0) throw ValidationError("spacer bases must be nonnegative");
                if (!spec.explicit_r.empty() && spec.explicit_r.size() < depth)
                    throw ValidationError("classic-staircase: r has fewer than depth entries");
                BigInt rn = spec.explicit_r.empty() ? BigInt(static_cast<unsigned long>(n + 1)) : spec.explicit_r[n - 1];
                BigInt cn = n == 1 ? e[0] : e.back() + c.back() + r.back();
                r.push_back(rn);
                c.push_back(cn);
            }
            return make_table(spec.kind, std::move(r), std::move(c), spec.describe(), std::move(e));
        }
        case RecipeKind::explicit_table: {
            if (spec.explicit_r.size() < depth || spec.explicit_c.size() < depth)
                throw ValidationError("explicit recipe: r and c need at least depth = " + std::to_string(depth) + " entries");
            r.assign(spec.explicit_r.begin(), spec.explicit_r.begin() + static_cast<std::ptrdiff_t>(depth));
            c.assign(spec.explicit_c.begin(), spec.explicit_c.begin() + static_cast<std::ptrdiff_t>(depth));
            break;
        }
    }
    return make_table(spec.kind, std::move(r), std::move(c), spec.describe());
}

struct FiniteMeasureSums {
    std::vector<Rational> spacer_mass;     // S_N = sum_{n<=N} (r_n c_n + r_n(r_n-1)/2) / (r_n h_n)
    std::vector<Rational> growth_mass;     // sum_{n<=N} (c_n + r_n) / h_n
};

/// Partial sums of the two finite-measure series; terms with r_n = 0 add no spacers and contribute 0.
inline FiniteMeasureSums finite_measure_partial_sums(const ParamTable& p, std::optional<std::size_t> upto = {}) {
    const std::size_t N = upto ? std::min(*upto, p.depth()) : p.depth();
    FiniteMeasureSums out;
    Rational s1 = 0, s2 = 0;
    for (std::size_t n = 1; n <= N; ++n) {
        const BigInt& r = p.r(n);
        if (r > 0) s1 += Rational(r * p.c(n) + r * (r - 1) / 2, r * p.h(n));
        s2 += Rational(p.c(n) + r, p.h(n));
        out.spacer_mass.push_back(s1);
        out.growth_mass.push_back(s2);
    }
    return out;
}

struct HrBoundRow {
    std::size_t n;
    BigInt product;  // prod_{j<n} (r_j + 1)
    BigInt height;
    Rational ratio;
    bool holds;
};

/// prod_{j<n}(r_j+1) <= h_n for n = 1..depth, with the exact ratios.
inline std::vector<HrBoundRow> hr_bounds_check(const ParamTable& p) {
    std::vector<HrBoundRow> rows;
    BigInt prod = 1;
    for (std::size_t n = 1; n <= p.depth(); ++n) {
        if (n > 1) prod *= p.r(n - 1) + 1;
        rows.push_back({n, prod, p.h(n), Rational(prod, p.h(n)), prod <= p.h(n)});
    }
    return rows;
}

inline nlohmann::ordered_json bigints_json(const std::vector<BigInt>& v) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

inline nlohmann::ordered_json to_json(const ParamTable& p) {
    using nlohmann::ordered_json;
    const auto& f = p.flags();
    ordered_json flags;
    flags["c1_ok"] = f.c1_ok;
    flags["elevation_ok"] = f.elevation_ok;
    flags["elevated_ok"] = f.elevated_ok;
    flags["cuts_monotone"] = f.cuts_monotone;
    flags["cuts_positive"] = f.cuts_positive;
    auto ratios = ordered_json::array();
    for (const auto& q : f.cut_square_ratio) ratios.push_back(to_string(q));
    flags["cut_square_ratio"] = ratios;
    ordered_json j;
    j["depth"] = p.depth();
    j["recipe"] = recipe_name(p.recipe());
    j["recipe_detail"] = p.recipe_detail();
    j["r"] = bigints_json(p.r_values());
    j["c"] = bigints_json(p.c_values());
    j["h"] = bigints_json(p.h_values());
    j["m"] = bigints_json(p.m_values());
    if (!p.spacer_bases().empty()) j["e"] = bigints_json(p.spacer_bases());
    j["flags"] = flags;
    return j;
}

}  // namespace staircase
