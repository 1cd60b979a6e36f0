#pragma once

// Complexity values with provenance and increment tags.

#include <optional>
#include <string>
#include <vector>

#include "staircase/numeric.hpp"

namespace staircase {

enum class Provenance { closed_form, oracle, both_agree };

inline std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::closed_form: return "closed-form";
        case Provenance::oracle: return "oracle";
        case Provenance::both_agree: return "both-agree";
    }
    return "?";
}

/// Which increment range produced p(l+1) - p(l).
enum class IncrementTag { cf1, cf2, cf3_1, cf3_2, cf4 };

inline std::string tag_name(IncrementTag t) {
    switch (t) {
        case IncrementTag::cf1: return "cf1";
        case IncrementTag::cf2: return "cf2";
        case IncrementTag::cf3_1: return "cf3.1";
        case IncrementTag::cf3_2: return "cf3.2";
        case IncrementTag::cf4: return "cf4";
    }
    return "?";
}

struct ComplexityEntry {
    BigInt q;
    BigInt p;
    Provenance provenance;
    std::optional<BigInt> delta;            // p(q+1) - p(q) when known
    std::optional<IncrementTag> tag;        // set when the closed form produced delta
};

/// Rows ordered by q.
struct ComplexityTable {
    std::vector<ComplexityEntry> entries;

    const ComplexityEntry* find(const BigInt& q) const {
        for (const auto& e : entries)
            if (e.q == q) return &e;
        return nullptr;
    }

    /// Fills delta from consecutive rows where it is missing.
    void fill_deltas() {
        for (std::size_t i = 0; i + 1 < entries.size(); ++i)
            if (!entries[i].delta && entries[i + 1].q == entries[i].q + 1)
                entries[i].delta = entries[i + 1].p - entries[i].p;
    }
};

}  // namespace staircase
