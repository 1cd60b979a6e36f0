#pragma once

// Cylinder frequencies and correlation defects of B_N, counted exactly.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "staircase/bits.hpp"
#include "staircase/numeric.hpp"
#include "staircase/parallel.hpp"
#include "staircase/sequences.hpp"
#include "staircase/words.hpp"

namespace staircase {

inline constexpr std::size_t kDefaultCylinderCap = 64;

struct CylinderStats {
    BitVec u;
    std::size_t level = 0;
    std::uint64_t count = 0;
    std::uint64_t windows = 0;  // h_N - |u| + 1
    Rational freq;
};

struct CorrelationRecord {
    BitVec u, v;
    std::uint64_t t = 0;
    std::size_t level = 0;
    std::uint64_t count_joint = 0;
    std::uint64_t windows = 0;  // h_N - max(|u|, t + |v|) + 1
    Rational freq_u, freq_v, joint_freq, product, defect;
    Rational slack;             // (|u| + |v| + t) / h_N
};

/// Sorted disjoint inclusive intervals of start positions.
using Occurrences = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

inline std::uint64_t occurrence_count(const Occurrences& occ) {
    std::uint64_t n = 0;
    for (const auto& [a, b] : occ) n += b - a + 1;
    return n;
}

/// |{i : i in A and i + t in B}| by a merge over interval lists.
inline std::uint64_t shifted_intersection(const Occurrences& a, const Occurrences& b, std::uint64_t t) {
    std::uint64_t total = 0;
    std::size_t j = 0;
    for (const auto& [lo, hi] : a) {
        while (j < b.size() && b[j].second < lo + t) ++j;
        for (std::size_t k = j; k < b.size() && b[k].first <= hi + t; ++k) {
            const std::uint64_t x = std::max(lo + t, b[k].first);
            const std::uint64_t y = std::min(hi + t, b[k].second);
            if (x <= y) total += y - x + 1;
        }
    }
    return total;
}

/// B_N held once with cached occurrence sets; safe for concurrent readers.
class MeasureContext {
public:
    MeasureContext(const ParamTable& p, std::size_t level, std::uint64_t budget = kDefaultMaterializationBudget,
                   std::size_t cylinder_cap = kDefaultCylinderCap)
        : level_(level), cap_(cylinder_cap), word_(build_word(p, level, budget)), bits_(word_.to_bits(budget)) {}

    std::size_t level() const noexcept { return level_; }
    std::uint64_t height() const noexcept { return word_.length(); }
    const RleWord& word() const noexcept { return word_; }

    /// Start positions of u in B_N. All-ones words occupy intervals inside 1-runs;
    /// words with a 0 are anchored at their first 0 and checked around each 0 of B_N.
    std::shared_ptr<const Occurrences> occurrences(const BitVec& u) const {
        if (u.size() > cap_) throw RangeError("cylinder word longer than the cap " + std::to_string(cap_));
        {
            std::lock_guard<std::mutex> lock(mutex_);
            if (auto it = cache_.find(u); it != cache_.end()) return it->second;
        }
        auto occ = std::make_shared<Occurrences>();
        const std::uint64_t H = word_.length(), len = u.size();
        if (len == 0) {
            occ->push_back({0, H});
        } else if (len <= H) {
            std::size_t first_zero = 0;
            while (first_zero < len && u[first_zero]) ++first_zero;
            for (std::size_t r = 0; r < word_.runs().size(); ++r) {
                const Run& run = word_.runs()[r];
                const std::uint64_t start = word_.run_start(r);
                if (first_zero == len) {
                    if (run.bit && run.length >= len) occ->push_back({start, start + run.length - len});
                    continue;
                }
                if (run.bit) continue;
                for (std::uint64_t z = start; z < start + run.length; ++z) {
                    if (z < first_zero) continue;
                    const std::uint64_t s = z - first_zero;
                    if (s + len > H) break;
                    if (bits_.slice(s, len) == u) occ->push_back({s, s});
                }
            }
        }
        std::lock_guard<std::mutex> lock(mutex_);
        return cache_.emplace(u, std::move(occ)).first->second;
    }

    CylinderStats cylinder(const BitVec& u) const {
        CylinderStats s;
        s.u = u;
        s.level = level_;
        s.count = occurrence_count(*occurrences(u));
        s.windows = u.size() <= height() ? height() - u.size() + 1 : 0;
        s.freq = s.windows ? Rational(BigInt(s.count), BigInt(s.windows)) : Rational(0);
        return s;
    }

    CorrelationRecord correlation(const BitVec& u, const BitVec& v, std::uint64_t t) const {
        const std::uint64_t H = height();
        if (t + u.size() + v.size() > H)
            throw RangeError("t + |u| + |v| = " + std::to_string(t + u.size() + v.size()) + " exceeds h_N = " + std::to_string(H));
        CorrelationRecord rec;
        rec.u = u;
        rec.v = v;
        rec.t = t;
        rec.level = level_;
        auto ou = occurrences(u), ov = occurrences(v);
        rec.count_joint = shifted_intersection(*ou, *ov, t);
        rec.windows = H - std::max<std::uint64_t>(u.size(), t + v.size()) + 1;
        rec.freq_u = cylinder(u).freq;
        rec.freq_v = cylinder(v).freq;
        rec.joint_freq = Rational(BigInt(rec.count_joint), BigInt(rec.windows));
        rec.product = rec.freq_u * rec.freq_v;
        rec.defect = mp::abs(rec.joint_freq - rec.product);
        rec.slack = Rational(BigInt(u.size() + v.size() + t), BigInt(H));
        return rec;
    }

private:
    std::size_t level_;
    std::size_t cap_;
    RleWord word_;
    BitVec bits_;
    mutable std::mutex mutex_;
    mutable std::map<BitVec, std::shared_ptr<const Occurrences>> cache_;
};

inline CylinderStats cylinder_freq(const ParamTable& p, const BitVec& u, std::size_t level) {
    return MeasureContext(p, level).cylinder(u);
}

inline CorrelationRecord correlation(const ParamTable& p, const BitVec& u, const BitVec& v, std::uint64_t t, std::size_t level) {
    return MeasureContext(p, level).correlation(u, v, t);
}

/// A time grid: k(h_n + c_n) over k and n, explicit times, or a dense sweep.
struct TimeSpec {
    enum class Kind { structured, list, dense } kind = Kind::list;
    std::vector<std::uint64_t> multipliers{1};  // structured
    std::size_t n_first = 1, n_last = 1;         // structured
    std::vector<std::uint64_t> times;            // list
    std::uint64_t first = 1, last = 1, step = 1; // dense

    /// Parses "seq:K" or "seq:K1,K2" (with n_first..n_last set separately),
    /// "list:T1,T2,..." and "dense:A..B" or "dense:A..B:S".
    static TimeSpec parse(const std::string& text, std::size_t n_first = 1, std::size_t n_last = 1) {
        auto colon = text.find(':');
        if (colon == std::string::npos) throw ValidationError("time spec '" + text + "': expected seq:, list: or dense:");
        const std::string kind = text.substr(0, colon), body = text.substr(colon + 1);
        auto numbers = [&](const std::string& s) {
            std::vector<std::uint64_t> out;
            std::size_t pos = 0;
            while (pos <= s.size()) {
                auto comma = s.find(',', pos);
                std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
                if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
                    throw ValidationError("time spec '" + text + "': bad number '" + item + "'");
                out.push_back(std::stoull(item));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            return out;
        };
        TimeSpec spec;
        if (kind == "seq") {
            spec.kind = Kind::structured;
            std::string k = body;
            for (const char* suffix : {"*(h+c)", "(h+c)"})
                if (k.size() > std::char_traits<char>::length(suffix) && k.ends_with(suffix)) k.erase(k.size() - std::char_traits<char>::length(suffix));
            spec.multipliers = numbers(k);
            spec.n_first = n_first;
            spec.n_last = n_last;
            if (n_first < 1 || n_first > n_last) throw ValidationError("structured times need 1 <= n_first <= n_last");
        } else if (kind == "list") {
            spec.kind = Kind::list;
            if (!body.empty()) spec.times = numbers(body);
        } else if (kind == "dense") {
            spec.kind = Kind::dense;
            auto dots = body.find("..");
            if (dots == std::string::npos) throw ValidationError("dense time spec needs A..B");
            auto rest = body.substr(dots + 2);
            auto colon2 = rest.find(':');
            spec.first = numbers(body.substr(0, dots)).at(0);
            spec.last = numbers(rest.substr(0, colon2)).at(0);
            if (colon2 != std::string::npos) spec.step = numbers(rest.substr(colon2 + 1)).at(0);
            if (spec.step == 0 || spec.first > spec.last) throw ValidationError("dense time spec needs A <= B and step >= 1");
        } else {
            throw ValidationError("unknown time spec kind '" + kind + "'");
        }
        return spec;
    }

    std::vector<std::uint64_t> expand(const ParamTable& p) const {
        std::vector<std::uint64_t> out;
        switch (kind) {
            case Kind::structured:
                for (std::size_t n = n_first; n <= n_last; ++n)
                    for (auto k : multipliers) out.push_back(require_u64(BigInt(k) * (p.h(n) + p.c(n)), "time"));
                break;
            case Kind::list: out = times; break;
            case Kind::dense:
                for (std::uint64_t t = first; t <= last; t += step) out.push_back(t);
                break;
        }
        return out;
    }
};

/// Correlation records for every pair at every time, in pair-major order.
inline std::vector<CorrelationRecord> mixing_scan(const MeasureContext& ctx, const ParamTable& p,
                                                  const std::vector<std::pair<BitVec, BitVec>>& pairs,
                                                  const TimeSpec& times, unsigned threads = 1) {
    const auto ts = times.expand(p);
    std::vector<CorrelationRecord> out(pairs.size() * ts.size());
    parallel_for(out.size(), threads, [&](std::size_t i) {
        const auto& [u, v] = pairs[i / ts.size()];
        out[i] = ctx.correlation(u, v, ts[i % ts.size()]);
    });
    return out;
}

inline std::vector<CorrelationRecord> mixing_scan(const ParamTable& p, const std::vector<std::pair<BitVec, BitVec>>& pairs,
                                                  const TimeSpec& times, std::size_t level, unsigned threads = 1) {
    if (pairs.empty()) return {};
    MeasureContext ctx(p, level);
    return mixing_scan(ctx, p, pairs, times, threads);
}

struct DensityRow {
    std::size_t n;
    Rational zero_density;     // zeros of B_n / h_n
    Rational product_ratio;    // prod_{j<n}(r_j+1) / h_n
    Rational one_density;
    Rational one_density_bound;  // sum_{j<n} (c_j + r_j) / h_j
    bool bound_holds;
};

/// Zero density of each B_n against the product ratio; throws if they ever differ.
inline std::vector<DensityRow> zero_density_vs_levels(const ParamTable& p, std::size_t n_max,
                                                      std::uint64_t budget = kDefaultMaterializationBudget) {
    if (n_max > p.depth() + 1) throw RangeError("level " + std::to_string(n_max) + " beyond depth + 1");
    std::vector<DensityRow> rows;
    const WordModel model = WordModel::elevated(p);
    BigInt prod = 1;
    Rational bound = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        if (n > 1) {
            prod *= p.r(n - 1) + 1;
            bound += Rational(p.c(n - 1) + p.r(n - 1), p.h(n - 1));
        }
        RleWord w = build_word(model, n, budget);
        DensityRow row{n, Rational(BigInt(w.zero_count()), p.h(n)), Rational(prod, p.h(n)),
                       Rational(BigInt(w.one_count()), p.h(n)), bound, false};
        row.bound_holds = n == 1 || row.one_density <= row.one_density_bound;
        if (row.zero_density != row.product_ratio)
            throw TheoremViolation("zero density of B_" + std::to_string(n) + " is " + to_string(row.zero_density) +
                                   " but the product ratio is " + to_string(row.product_ratio));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string decimal15(const Rational& q) { return to_decimal(q, 15); }

inline void write_correlation_csv(std::ostream& os, const std::vector<CorrelationRecord>& recs) {
    os << "u,v,t,N,count_joint,windows,freq_u,freq_u_decimal,freq_v,freq_v_decimal,joint,joint_decimal,product,"
          "product_decimal,defect,defect_decimal\n";
    for (const auto& r : recs) {
        os << r.u.to_string() << ',' << r.v.to_string() << ',' << r.t << ',' << r.level << ',' << r.count_joint << ','
           << r.windows;
        for (const Rational* q : {&r.freq_u, &r.freq_v, &r.joint_freq, &r.product, &r.defect})
            os << ',' << to_string(*q) << ',' << decimal15(*q);
        os << '\n';
    }
}

}  // namespace staircase
