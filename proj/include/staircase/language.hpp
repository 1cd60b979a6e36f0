#pragma once

// Brute-force language oracle: distinct factors, complexity, right-special words.

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "staircase/bits.hpp"
#include "staircase/numeric.hpp"
#include "staircase/parallel.hpp"
#include "staircase/sequences.hpp"
#include "staircase/table.hpp"
#include "staircase/words.hpp"

namespace staircase {

using FactorSet = std::unordered_set<BitVec, BitVecHash>;

/// Distinct length-l factors of B_1, B_2, ... computed level by level without
/// ever expanding a long word.
///
/// While |B_k| is small the word is kept exactly. Once it is long, only its
/// first and last l-1 symbols are kept: every new factor of B_{k+1} straddles a
/// junction suffix(B_k) 1^s prefix(B_k), and a spacer longer than l can be cut
/// to l without changing which length-l windows occur.
class FactorEngine {
public:
    FactorEngine(WordModel model, std::size_t length)
        : model_(std::move(model)), length_(length), threshold_(2 * length + 64) {
        if (length == 0) throw ValidationError("factor length must be positive");
        full_.push_back(false);
        add_windows(full_);
        sizes_.push_back(set_.size());
    }

    std::size_t length() const noexcept { return length_; }
    std::size_t level() const noexcept { return level_; }
    const FactorSet& factors() const noexcept { return set_; }

    /// Number of distinct factors of B_k for an already computed level k.
    std::size_t size_at(std::size_t k) const { return sizes_.at(k - 1); }

    void advance_to(std::size_t target) {
        model_.check_level(target);
        while (level_ < target) step();
    }

    std::vector<BitVec> sorted() const {
        std::vector<BitVec> v(set_.begin(), set_.end());
        std::sort(v.begin(), v.end());
        return v;
    }

private:
    void add_windows(const BitVec& text) {
        if (text.size() < length_) return;
        for (std::size_t s = 0; s + length_ <= text.size(); ++s) set_.insert(text.slice(s, length_));
    }

    std::uint64_t capped(const BigInt& s) const {
        return s < BigInt(length_) ? s.convert_to<std::uint64_t>() : length_;
    }

    // B_{k+1} from the exact B_k with spacers capped at l and runs of identical
    // capped segments (each longer than l) shortened to two copies.
    BitVec expand(const LevelRule& rule, bool cap) const {
        BitVec out;
        auto segment = [&](const BigInt& s) {
            out.append(full_);
            out.append_run(true, cap ? capped(s) : s.convert_to<std::uint64_t>());
        };
        BigInt i = 0;
        for (; i < rule.count && (!cap || rule.spacer(i) < BigInt(length_)); ++i) segment(rule.spacer(i));
        if (i < rule.count) {
            BigInt remaining = rule.count - i;
            segment(rule.spacer(i));
            if (remaining > 1) segment(rule.spacer(i + 1));
        }
        out.append(full_);
        out.append_run(true, cap ? capped(rule.final_spacer) : rule.final_spacer.convert_to<std::uint64_t>());
        return out;
    }

    void step() {
        const LevelRule& rule = model_.rule(level_);
        const BigInt& next_len = model_.length(level_ + 1);
        if (!ends_mode_) {
            if (next_len <= BigInt(threshold_)) {
                full_ = expand(rule, false);
                add_windows(full_);
            } else {
                BitVec word = expand(rule, true);
                add_windows(word);
                const std::size_t keep = length_ - 1;
                prefix_ = word.slice(0, keep);
                suffix_ = word.slice(word.size() - keep, keep);
                full_ = BitVec();
                ends_mode_ = true;
            }
        } else {
            // Distinct capped spacer values: base .. min(base+count-1, l-1), then l once if reached.
            auto junction = [&](std::uint64_t s, bool with_prefix) {
                BitVec x = suffix_;
                x.append_run(true, s);
                if (with_prefix) x.append(prefix_);
                add_windows(x);
            };
            if (rule.count > 0) {
                const BigInt last = rule.spacer(rule.count - 1);
                for (BigInt s = rule.base; s <= last && s < BigInt(length_); ++s) junction(s.convert_to<std::uint64_t>(), true);
                if (last >= BigInt(length_)) junction(length_, true);
            }
            const std::uint64_t f = capped(rule.final_spacer);
            junction(f, false);
            if (f > 0) {
                BitVec tail = suffix_;
                tail.append_run(true, f);
                suffix_ = tail.slice(tail.size() - (length_ - 1), length_ - 1);
            }
        }
        ++level_;
        sizes_.push_back(set_.size());
    }

    WordModel model_;
    std::size_t length_;
    std::size_t threshold_;
    std::size_t level_ = 1;
    bool ends_mode_ = false;
    BitVec full_, prefix_, suffix_;
    FactorSet set_;
    std::vector<std::size_t> sizes_;
};

/// Independent route: every window of a materialized word that contains a 0 is
/// enumerated once (keyed by its first 0); all-ones windows come from the run lengths.
inline FactorSet scan_factors(const RleWord& w, std::size_t length, std::uint64_t budget = kDefaultMaterializationBudget) {
    if (length == 0) throw ValidationError("factor length must be positive");
    FactorSet set;
    if (w.length() < length) return set;
    const BitVec bits = w.to_bits(budget);
    const std::uint64_t last_start = w.length() - length;
    std::uint64_t prev_zero_end = 0;  // one past the previous zero
    bool long_ones = false;
    for (std::size_t r = 0; r < w.runs().size(); ++r) {
        const Run& run = w.runs()[r];
        const std::uint64_t start = w.run_start(r);
        if (run.bit) {
            long_ones = long_ones || run.length >= length;
            continue;
        }
        for (std::uint64_t z = start; z < start + run.length; ++z) {
            std::uint64_t lo = z + 1 >= length ? z + 1 - length : 0;
            lo = std::max(lo, prev_zero_end);
            const std::uint64_t hi = std::min(z, last_start);
            for (std::uint64_t s = lo; s <= hi && lo <= hi; ++s) set.insert(bits.slice(s, length));
            prev_zero_end = z + 1;
        }
    }
    if (long_ones) set.insert(BitVec::ones(length));
    return set;
}

struct OracleConfig {
    std::size_t length_cap = kDefaultWindowCap;
    unsigned threads = 1;
};

/// Factor set of one length together with where it was read off.
struct SaturatedFactors {
    std::size_t length = 0;
    std::size_t level = 0;          // B_level was enumerated
    std::size_t compare_level = 0;  // the level it was compared against
    bool stabilized = false;
    std::vector<BitVec> factors;    // sorted
};

struct LanguageSlice {
    std::size_t length = 0;
    std::vector<BitVec> factors;        // sorted
    std::vector<BitVec> right_special;  // sorted
    std::size_t source_level = 0;
    bool stabilized = false;

    std::size_t p() const noexcept { return factors.size(); }
};

/// Saturated factor sets of a word model. The saturation level for length l is
/// N(l) + 2 where N(l) is the least N with c_N >= l, capped at the last level.
class LanguageOracle {
public:
    explicit LanguageOracle(const ParamTable& p, OracleConfig config = {})
        : LanguageOracle(WordModel::elevated(p), p.c_values(), config) {}

    LanguageOracle(WordModel model, std::vector<BigInt> saturation_c, OracleConfig config = {})
        : model_(std::move(model)), c_(std::move(saturation_c)), config_(config) {}

    const WordModel& model() const noexcept { return model_; }
    const OracleConfig& config() const noexcept { return config_; }

    /// Least N with c_N >= l, or depth + 1 when the table never reaches l.
    std::size_t saturation_index(std::size_t l) const {
        for (std::size_t n = 1; n <= c_.size(); ++n)
            if (c_[n - 1] >= BigInt(l)) return n;
        return c_.size() + 1;
    }

    std::size_t target_level(std::size_t l) const {
        return std::min(saturation_index(l) + 2, model_.max_level());
    }

    /// Factors of length l read off at the saturation level; throws
    /// OracleInconclusive unless the next (or previous) level has the same set.
    SaturatedFactors saturated(std::size_t l) const {
        if (l == 0 || l > config_.length_cap)
            throw RangeError("factor length " + std::to_string(l) + " outside 1.." + std::to_string(config_.length_cap));
        const std::size_t target = target_level(l);
        FactorEngine engine(model_, l);
        SaturatedFactors out;
        out.length = l;
        out.level = target;
        if (target + 1 <= model_.max_level()) {
            engine.advance_to(target + 1);
            out.compare_level = target + 1;
            out.stabilized = engine.size_at(target) == engine.size_at(target + 1);
        } else {
            engine.advance_to(target);
            out.compare_level = target - 1;
            out.stabilized = target > 1 && engine.size_at(target - 1) == engine.size_at(target);
        }
        // Two levels both shorter than l agree trivially; that is no evidence.
        if (out.stabilized && engine.size_at(std::min(target, out.compare_level)) == 0) out.stabilized = false;
        if (!out.stabilized)
            throw OracleInconclusive("length-" + std::to_string(l) + " factors of B_" + std::to_string(target) +
                                     " differ from B_" + std::to_string(out.compare_level) +
                                     "; build a deeper table");
        // Factor sets only grow with the level, so equal sizes mean equal sets.
        // When the comparison level is the deeper one the engine holds its set, which is the same.
        out.factors = engine.sorted();
        return out;
    }

    /// Cached saturated factor count.
    std::size_t complexity(std::size_t l) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            if (auto it = counts_.find(l); it != counts_.end()) return it->second;
        }
        std::size_t v = saturated(l).factors.size();
        std::lock_guard<std::mutex> lock(mutex_);
        counts_[l] = v;
        return v;
    }

    LanguageSlice enumerate(std::size_t l) const {
        if (l + 1 > config_.length_cap)
            throw RangeError("right-special analysis at length " + std::to_string(l) + " needs length " +
                             std::to_string(l + 1) + " within the cap");
        SaturatedFactors base = saturated(l);
        SaturatedFactors longer = saturated(l + 1);
        FactorSet ext(longer.factors.begin(), longer.factors.end());
        LanguageSlice slice;
        slice.length = l;
        slice.source_level = base.level;
        slice.stabilized = base.stabilized && longer.stabilized;
        for (const auto& w : base.factors) {
            BitVec w0 = w, w1 = w;
            w0.push_back(false);
            w1.push_back(true);
            if (ext.count(w0) && ext.count(w1)) slice.right_special.push_back(w);
        }
        slice.factors = std::move(base.factors);
        return slice;
    }

private:
    WordModel model_;
    std::vector<BigInt> c_;
    OracleConfig config_;
    std::mutex mutex_;
    std::map<std::size_t, std::size_t> counts_;
};

inline LanguageSlice enumerate(const ParamTable& p, std::size_t l, OracleConfig config = {}) {
    return LanguageOracle(p, config).enumerate(l);
}

/// p(q) for 1 <= q <= q_max from saturated factor sets.
inline ComplexityTable complexity_profile_bruteforce(const ParamTable& p, std::size_t q_max, OracleConfig config = {}) {
    if (q_max == 0) throw ValidationError("q_max must be positive");
    if (q_max > config.length_cap) throw RangeError("q_max " + std::to_string(q_max) + " exceeds the enumeration cap");
    LanguageOracle oracle(p, config);
    std::vector<std::size_t> counts(q_max);
    parallel_for(q_max, config.threads, [&](std::size_t i) { counts[i] = oracle.saturated(i + 1).factors.size(); });
    ComplexityTable t;
    for (std::size_t q = 1; q <= q_max; ++q)
        t.entries.push_back({BigInt(static_cast<unsigned long>(q)), BigInt(static_cast<unsigned long>(counts[q - 1])),
                             Provenance::oracle, std::nullopt, std::nullopt});
    t.fill_deltas();
    return t;
}

enum class RsForm { all_ones, form_ii, form_iii, unclassified };

inline std::string form_name(RsForm f) {
    switch (f) {
        case RsForm::all_ones: return "all_ones";
        case RsForm::form_ii: return "form_ii";
        case RsForm::form_iii: return "form_iii";
        case RsForm::unclassified: return "unclassified";
    }
    return "?";
}

struct RsClassification {
    BitVec word;
    RsForm form = RsForm::unclassified;
    std::size_t n = 0;              // 0 when no index applies
    std::optional<BigInt> i;        // form_ii only
    std::size_t matches = 0;        // how many forms matched (1 when classified)
};

namespace detail {

// Whether w (with its trailing 1^t already removed, length k) is a suffix of 1^a B_n,
// given the last min(k, h_n) symbols of B_n.
inline bool suffix_of_ones_then(const BitVec& w, std::size_t k, const BigInt& a, const BitVec& tail_bn, const BigInt& hn) {
    if (BigInt(k) <= hn) return w.slice(0, k) == tail_bn.slice(tail_bn.size() - k, k);
    const BigInt lead = BigInt(k) - hn;
    if (lead > a) return false;
    const auto lead_n = lead.convert_to<std::size_t>();
    for (std::size_t j = 0; j < lead_n; ++j)
        if (!w[j]) return false;
    return w.slice(lead_n, k - lead_n) == tail_bn;
}

}  // namespace detail

/// Matches each right-special word against the three forms at the index n
/// for which w contains 1^{c_n} but not 1^{c_{n+1}}.
///
/// Below length c_2 the forms degenerate, so mismatches there are reported as
/// unclassified; from c_2 on a word matching zero or several forms throws.
inline std::vector<RsClassification> classify_right_special(const ParamTable& p, const LanguageSlice& slice) {
    if (!slice.stabilized) throw ValidationError("classification needs a stabilized slice");
    const WordModel model = WordModel::elevated(p);
    const std::size_t l = slice.length;
    const BigInt L(static_cast<unsigned long>(l));
    const bool enforce = p.depth() >= 2 && L >= p.c(2);
    std::map<std::size_t, BitVec> tails;
    auto tail_of = [&](std::size_t n) -> const BitVec& {
        auto it = tails.find(n);
        if (it == tails.end()) it = tails.emplace(n, word_suffix(model, n, l)).first;
        return it->second;
    };
    std::vector<RsClassification> out;
    for (const auto& w : slice.right_special) {
        RsClassification rc;
        rc.word = w;
        const BigInt run(static_cast<unsigned long>(w.longest_ones_run()));
        std::size_t n = 0;
        for (std::size_t k = 1; k <= p.depth(); ++k)
            if (p.c(k) <= run && (k == p.depth() || run < p.c(k + 1))) n = k;
        if (n != 0) {
            rc.n = n;
            const BigInt& c = p.c(n);
            const BigInt& r = p.r(n);
            const BigInt& h = p.h(n);
            const bool upper_ok = n == p.depth() || L < p.c(n + 1);
            if (w.all_ones() && c <= L && upper_ok) {
                rc.form = RsForm::all_ones;
                ++rc.matches;
            }
            const BigInt t(static_cast<unsigned long>(w.trailing_ones()));
            if (!w.all_ones() && t < L) {
                const std::size_t k = l - t.convert_to<std::size_t>();
                const BitVec& tail = tail_of(n);
                // form ii: trailing ones c+i, l > c+i, prefix a suffix of 1^{c+i-1} B_n
                const BigInt i = t - c;
                if (i >= 0 && i < r && L > c + i &&
                    detail::suffix_of_ones_then(w, k, c + i > 0 ? c + i - 1 : BigInt(0), tail, h)) {
                    rc.form = RsForm::form_ii;
                    rc.i = i;
                    ++rc.matches;
                }
                // form iii: trailing ones c, l >= h+2c, prefix a suffix of 1^{c+r-1} B_n
                if (t == c && L >= h + 2 * c && detail::suffix_of_ones_then(w, k, c + r - 1, tail, h)) {
                    rc.form = RsForm::form_iii;
                    rc.i.reset();
                    ++rc.matches;
                }
            }
        }
        if (rc.matches != 1) {
            if (enforce)
                throw TheoremViolation("right-special word " + w.to_string() + " of length " + std::to_string(l) +
                                       " matches " + std::to_string(rc.matches) + " forms (n = " + std::to_string(rc.n) + ")");
            rc.form = RsForm::unclassified;
            rc.i.reset();
        }
        out.push_back(std::move(rc));
    }
    return out;
}

struct CassaigneResult {
    bool holds = false;
    std::size_t p_m = 0, p_n = 0;
    std::vector<std::size_t> rs_counts;  // |RS(l)| for l = m..n-1
};

/// p(n) = p(m) + sum_{l=m}^{n-1} |RS(l)| on oracle data.
inline CassaigneResult cassaigne_check(const ParamTable& p, std::size_t m, std::size_t n, OracleConfig config = {}) {
    if (m == 0 || m >= n) throw ValidationError("cassaigne_check needs 1 <= m < n");
    LanguageOracle oracle(p, config);
    CassaigneResult res;
    std::size_t sum = 0;
    for (std::size_t l = m; l < n; ++l) {
        LanguageSlice s = oracle.enumerate(l);
        if (l == m) res.p_m = s.p();
        res.rs_counts.push_back(s.right_special.size());
        sum += s.right_special.size();
    }
    res.p_n = oracle.saturated(n).factors.size();
    res.holds = res.p_n == res.p_m + sum;
    return res;
}

inline void write_slice_csv(std::ostream& os, const std::vector<LanguageSlice>& slices) {
    os << "length,p,rs_count\n";
    for (const auto& s : slices) os << s.length << ',' << s.p() << ',' << s.right_special.size() << '\n';
}

inline void write_classification_csv(std::ostream& os, std::size_t length, const std::vector<RsClassification>& rows) {
    for (const auto& r : rows)
        os << length << ',' << r.word.to_string() << ',' << form_name(r.form) << ',' << r.n << ','
           << (r.i ? r.i->str() : std::string()) << '\n';
}

/// Sorted factors as 0/1 lines, for golden comparisons.
inline void write_factor_dump(std::ostream& os, const std::vector<BitVec>& sorted_factors) {
    for (const auto& w : sorted_factors) os << w.to_string() << '\n';
}

}  // namespace staircase
