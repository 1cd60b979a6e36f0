#pragma once

// Run-length encoded generating words B_n and the un-elevated variant.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "staircase/bits.hpp"
#include "staircase/numeric.hpp"
#include "staircase/sequences.hpp"

namespace staircase {

inline constexpr std::uint64_t kDefaultMaterializationBudget = std::uint64_t{1} << 31;
inline constexpr std::size_t kDefaultWindowCap = 4096;

struct Run {
    bool bit;
    std::uint64_t length;
    friend bool operator==(const Run&, const Run&) = default;
};

/// Binary word stored as maximal runs; adjacent runs always differ in symbol.
class RleWord {
public:
    RleWord() = default;

    static RleWord from_bits(const BitVec& bits) {
        RleWord w;
        for (std::size_t i = 0; i < bits.size(); ++i) w.append_run(bits[i], 1);
        return w;
    }

    static RleWord from_string(std::string_view s) { return from_bits(BitVec::from_string(s)); }

    void append_run(bool bit, std::uint64_t length) {
        if (length == 0) return;
        if (!runs_.empty() && runs_.back().bit == bit) {
            runs_.back().length += length;
        } else {
            offsets_.push_back(total_);
            runs_.push_back({bit, length});
        }
        total_ += length;
        if (!bit) zeros_ += length;
    }

    void append(const RleWord& other) {
        for (const auto& r : other.runs_) append_run(r.bit, r.length);
    }

    const std::vector<Run>& runs() const noexcept { return runs_; }
    std::uint64_t length() const noexcept { return total_; }
    std::uint64_t zero_count() const noexcept { return zeros_; }
    std::uint64_t one_count() const noexcept { return total_ - zeros_; }
    std::uint64_t run_start(std::size_t i) const { return offsets_.at(i); }

    /// Index of the run containing position pos (< length()).
    std::size_t run_index(std::uint64_t pos) const {
        if (pos >= total_) throw RangeError("position " + std::to_string(pos) + " outside word of length " + std::to_string(total_));
        auto it = std::upper_bound(offsets_.begin(), offsets_.end(), pos);
        return static_cast<std::size_t>(it - offsets_.begin()) - 1;
    }

    bool operator[](std::uint64_t pos) const { return runs_[run_index(pos)].bit; }

    /// Full expansion; refuses words longer than the budget.
    BitVec to_bits(std::uint64_t budget = kDefaultMaterializationBudget) const {
        if (total_ > budget) throw ResourceError("word of length " + std::to_string(total_) + " exceeds the materialization budget");
        BitVec v;
        v.reserve(total_);
        for (const auto& r : runs_) v.append_run(r.bit, r.length);
        return v;
    }

    std::string to_string(std::uint64_t budget = kDefaultMaterializationBudget) const { return to_bits(budget).to_string(); }

    friend bool operator==(const RleWord& a, const RleWord& b) { return a.runs_ == b.runs_; }

private:
    std::vector<Run> runs_;
    std::vector<std::uint64_t> offsets_;
    std::uint64_t total_ = 0;
    std::uint64_t zeros_ = 0;
};

/// Sequential reader over an RleWord with O(1) stepping.
class WordCursor {
public:
    WordCursor(const RleWord& w, std::uint64_t position = 0) : word_(&w) { seek(position); }

    void seek(std::uint64_t position) {
        if (position > word_->length()) throw RangeError("cursor position beyond end of word");
        position_ = position;
        if (position == word_->length()) {
            run_ = word_->runs().size();
            offset_ = 0;
        } else {
            run_ = word_->run_index(position);
            offset_ = position - word_->run_start(run_);
        }
    }

    std::uint64_t position() const noexcept { return position_; }
    std::size_t run_index() const noexcept { return run_; }
    std::uint64_t offset_in_run() const noexcept { return offset_; }
    bool at_end() const noexcept { return position_ == word_->length(); }
    bool bit() const { return word_->runs()[run_].bit; }
    std::uint64_t remaining_in_run() const { return word_->runs()[run_].length - offset_; }

    /// Moves forward by k symbols (k may cross many runs).
    void advance(std::uint64_t k) {
        if (k > word_->length() - position_) throw RangeError("cursor advanced past end of word");
        position_ += k;
        while (k > 0) {
            std::uint64_t step = std::min(k, remaining_in_run());
            k -= step;
            offset_ += step;
            if (offset_ == word_->runs()[run_].length) {
                ++run_;
                offset_ = 0;
            }
        }
    }

private:
    const RleWord* word_;
    std::uint64_t position_ = 0;
    std::size_t run_ = 0;
    std::uint64_t offset_ = 0;
};

/// Exact factor w[start, start+length) as packed bits.
inline BitVec window(const RleWord& w, std::uint64_t start, std::uint64_t length, std::size_t cap = kDefaultWindowCap) {
    if (length > cap) throw RangeError("window length " + std::to_string(length) + " exceeds the cap " + std::to_string(cap));
    if (start > w.length() || length > w.length() - start)
        throw RangeError("window [" + std::to_string(start) + ", +" + std::to_string(length) + ") outside word of length " +
                         std::to_string(w.length()));
    BitVec out;
    out.reserve(length);
    if (length == 0) return out;
    WordCursor cur(w, start);
    std::uint64_t left = length;
    while (left > 0) {
        std::uint64_t take = std::min(left, cur.remaining_in_run());
        out.append_run(cur.bit(), take);
        left -= take;
        cur.advance(take);
    }
    return out;
}

/// One concatenation step: B_{k+1} = (prod_{i<count} B_k 1^{base+i}) B_k 1^{final}.
struct LevelRule {
    BigInt base;
    BigInt count;
    BigInt final_spacer;

    BigInt spacer(const BigInt& i) const { return base + i; }
};

/// The generating words of a rank-one model given by per-level rules, with B_1 = 0.
///
/// The elevated form has final spacer 0; the un-elevated form puts e_k + r_k
/// spacers on its last subcolumn.
class WordModel {
public:
    static WordModel elevated(const ParamTable& p) {
        WordModel w;
        for (std::size_t k = 1; k <= p.depth(); ++k) w.push({p.c(k), p.r(k), 0});
        return w;
    }

    static WordModel tilde(const std::vector<BigInt>& e, const std::vector<BigInt>& r) {
        if (e.size() != r.size()) throw ValidationError("spacer bases and cuts must have equal length");
        WordModel w;
        for (std::size_t k = 0; k < e.size(); ++k) w.push({e[k], r[k], e[k] + r[k]});
        return w;
    }

    std::size_t max_level() const noexcept { return rules_.size() + 1; }
    const LevelRule& rule(std::size_t k) const { return rules_.at(k - 1); }

    const BigInt& length(std::size_t n) const {
        check_level(n);
        return lengths_[n - 1];
    }

    void check_level(std::size_t n) const {
        if (n < 1 || n > max_level())
            throw RangeError("level " + std::to_string(n) + " outside 1.." + std::to_string(max_level()));
    }

private:
    WordModel() : lengths_{BigInt(1)} {}

    void push(LevelRule rule) {
        const BigInt& h = lengths_.back();
        const BigInt& r = rule.count;
        lengths_.push_back((r + 1) * h + r * rule.base + r * (r - 1) / 2 + rule.final_spacer);
        rules_.push_back(std::move(rule));
    }

    std::vector<LevelRule> rules_;
    std::vector<BigInt> lengths_;
};

/// Materializes B_n of a model as runs.
inline RleWord build_word(const WordModel& model, std::size_t n, std::uint64_t budget = kDefaultMaterializationBudget) {
    model.check_level(n);
    const BigInt max_run(std::numeric_limits<std::int64_t>::max());
    for (std::size_t k = 1; k < n; ++k) {
        const auto& rule = model.rule(k);
        const BigInt widest = std::max(rule.count > 0 ? rule.spacer(rule.count - 1) : BigInt(0), rule.final_spacer);
        if (widest > max_run)
            throw ResourceError("spacer run 1^" + widest.str() + " at level " + std::to_string(k) +
                                " exceeds 2^63 - 1; words cannot be materialized");
    }
    if (model.length(n) > BigInt(budget))
        throw ResourceError("h[" + std::to_string(n) + "] = " + model.length(n).str() +
                            " exceeds the materialization budget " + std::to_string(budget));
    RleWord w;
    w.append_run(false, 1);
    for (std::size_t k = 1; k < n; ++k) {
        const auto& rule = model.rule(k);
        const auto count = rule.count.convert_to<std::uint64_t>();
        const auto base = rule.base.convert_to<std::uint64_t>();
        RleWord next;
        for (std::uint64_t i = 0; i < count; ++i) {
            next.append(w);
            next.append_run(true, base + i);
        }
        next.append(w);
        next.append_run(true, rule.final_spacer.convert_to<std::uint64_t>());
        w = std::move(next);
    }
    return w;
}

inline RleWord build_word(const ParamTable& p, std::size_t n, std::uint64_t budget = kDefaultMaterializationBudget) {
    if (n < 1 || n > p.depth() + 1)
        throw RangeError("word index " + std::to_string(n) + " outside 1.." + std::to_string(p.depth() + 1));
    return build_word(WordModel::elevated(p), n, budget);
}

/// The un-elevated word with spacers e_k + i on all r_k + 1 subcolumns.
inline RleWord build_word_tilde(const std::vector<BigInt>& e, const std::vector<BigInt>& r, std::size_t n,
                                std::uint64_t budget = kDefaultMaterializationBudget) {
    return build_word(WordModel::tilde(e, r), n, budget);
}

namespace detail {

// Appends the bits of B_n, or only its first/last `limit` symbols, to `out`
// (reversed when from_end is set), without expanding more than `limit` symbols.
inline void emit_end(const WordModel& model, std::size_t n, std::uint64_t limit, bool from_end, std::vector<bool>& out) {
    if (limit == 0) return;
    if (n == 1) {
        out.push_back(false);
        return;
    }
    const auto& rule = model.rule(n - 1);
    const BigInt& inner = model.length(n - 1);
    std::uint64_t left = limit;
    auto spacer = [&](const BigInt& s) {
        std::uint64_t take = s < BigInt(left) ? s.convert_to<std::uint64_t>() : left;
        out.insert(out.end(), take, true);
        left -= take;
    };
    auto block = [&] {
        std::uint64_t take = inner < BigInt(left) ? inner.convert_to<std::uint64_t>() : left;
        emit_end(model, n - 1, take, from_end, out);
        left -= take;
    };
    // Segment order: B 1^{base} B 1^{base+1} ... B 1^{base+count-1} B 1^{final}
    if (!from_end) {
        for (BigInt i = 0; i < rule.count && left > 0; ++i) {
            block();
            if (left > 0) spacer(rule.spacer(i));
        }
        if (left > 0) block();
        if (left > 0) spacer(rule.final_spacer);
    } else {
        spacer(rule.final_spacer);
        if (left > 0) block();
        for (BigInt i = rule.count; i > 0 && left > 0; --i) {
            spacer(rule.spacer(i - 1));
            if (left > 0) block();
        }
    }
}

inline BitVec to_bitvec(const std::vector<bool>& bits, bool reversed) {
    BitVec v;
    v.reserve(bits.size());
    if (reversed)
        for (auto it = bits.rbegin(); it != bits.rend(); ++it) v.push_back(*it);
    else
        for (bool b : bits) v.push_back(b);
    return v;
}

}  // namespace detail

/// First min(length, |B_n|) symbols of B_n, computed without materializing B_n.
inline BitVec word_prefix(const WordModel& model, std::size_t n, std::uint64_t length) {
    model.check_level(n);
    std::vector<bool> bits;
    detail::emit_end(model, n, length, false, bits);
    return detail::to_bitvec(bits, false);
}

/// Last min(length, |B_n|) symbols of B_n, computed without materializing B_n.
inline BitVec word_suffix(const WordModel& model, std::size_t n, std::uint64_t length) {
    model.check_level(n);
    std::vector<bool> bits;
    detail::emit_end(model, n, length, true, bits);
    return detail::to_bitvec(bits, true);
}

/// Counts that remain available when B_n is far too long to materialize.
struct RleStatistics {
    BigInt length;
    BigInt zeros;
    BigInt ones;
    std::map<BigInt, BigInt> one_runs;  // spacer length -> number of maximal 1-runs
};

/// Exact length, symbol counts and 1-run histogram of B_n for an elevated table.
/// Every spacer sits between two zeros, so spacers are exactly the maximal 1-runs.
inline RleStatistics rle_statistics(const ParamTable& p, std::size_t n) {
    if (n < 1 || n > p.depth() + 1)
        throw RangeError("word index " + std::to_string(n) + " outside 1.." + std::to_string(p.depth() + 1));
    RleStatistics s;
    s.length = p.h(n);
    s.zeros = 1;
    for (std::size_t k = 1; k < n; ++k) s.zeros *= p.r(k) + 1;
    s.ones = s.length - s.zeros;
    BigInt multiplicity = 1;  // copies of B_{k+1} inside B_n
    for (std::size_t k = n - 1; k >= 1; --k) {
        for (BigInt i = 0; i < p.r(k); ++i) {
            BigInt len = p.c(k) + i;
            if (len > 0) s.one_runs[len] += multiplicity;
        }
        multiplicity *= p.r(k) + 1;
    }
    return s;
}

/// Raw 0/1 text export, refused beyond the budget.
inline std::string to_ascii(const RleWord& w, std::uint64_t budget = kDefaultMaterializationBudget) { return w.to_string(budget); }

inline nlohmann::ordered_json to_rle_json(const RleWord& w) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& r : w.runs()) a.push_back({{"bit", r.bit ? 1 : 0}, {"len", r.length}});
    return a;
}

}  // namespace staircase
