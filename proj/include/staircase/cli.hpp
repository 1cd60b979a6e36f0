#pragma once

// Command-line front end: build, complexity, verify, mixing, export.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "staircase/complexity.hpp"
#include "staircase/language.hpp"
#include "staircase/measure.hpp"
#include "staircase/sequences.hpp"
#include "staircase/words.hpp"

namespace staircase {

inline constexpr const char* kToolName = "staircase";
inline constexpr const char* kToolVersion = "0.1.0";

/// Parses "480", "10^7" or "1e6" as a nonnegative integer.
inline BigInt parse_count(const std::string& text) {
    if (auto caret = text.find('^'); caret != std::string::npos) {
        Rational b = parse_rational(text.substr(0, caret)), e = parse_rational(text.substr(caret + 1));
        if (mp::denominator(b) != 1 || mp::denominator(e) != 1 || e < 0 || e > 100000)
            throw ValidationError("bad count '" + text + "'");
        return ipow(mp::numerator(b), mp::numerator(e).convert_to<unsigned long>());
    }
    Rational q = parse_rational(text);
    if (mp::denominator(q) != 1 || q < 0) throw ValidationError("expected a nonnegative integer, got '" + text + "'");
    return mp::numerator(q);
}

struct RunConfig {
    std::string command;
    std::string recipe = "demo";
    std::size_t depth = 6;
    std::string epsilon;
    std::string f;
    std::vector<std::string> e, r, c;
    std::string q_max;
    std::string method = "closed";
    std::size_t level = 0;
    std::size_t length_cap = kDefaultWindowCap;
    std::uint64_t budget = kDefaultMaterializationBudget;
    std::size_t row_cap = 100000;
    std::size_t samples = 100;
    std::string out;
    std::string format;
    std::uint64_t seed = 1;
    unsigned parallel = 1;
    int verbosity = 0;
    std::string pairs = "0:0";
    std::string times = "seq:1";
    std::string n_range = "2..5";
    std::string target = "T5";
    std::string what = "params";
    std::size_t n = 1;
    std::size_t length = 1;

    /// Everything that affects results; the output path is deliberately left out.
    nlohmann::ordered_json canonical() const {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["recipe"] = recipe;
        j["depth"] = depth;
        j["epsilon"] = epsilon;
        j["f"] = f;
        j["e"] = e;
        j["r"] = r;
        j["c"] = c;
        // Equivalent spellings such as 10^7 and 1e7 hash alike.
        try {
            j["q-max"] = q_max.empty() ? q_max : parse_count(q_max).str();
        } catch (const ValidationError&) {
            j["q-max"] = q_max;
        }
        j["method"] = method;
        j["level"] = level;
        j["length-cap"] = length_cap;
        j["budget"] = budget;
        j["row-cap"] = row_cap;
        j["samples"] = samples;
        j["format"] = format;
        j["seed"] = seed;
        j["pairs"] = pairs;
        j["times"] = times;
        j["n-range"] = n_range;
        j["target"] = target;
        j["what"] = what;
        j["n"] = n;
        j["length"] = length;
        return j;
    }
};

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << v;
    return os.str();
}

inline std::vector<BigInt> parse_bigint_list(const std::vector<std::string>& items) {
    std::vector<BigInt> out;
    for (const auto& s : items) out.push_back(parse_count(s));
    return out;
}

inline RecipeSpec recipe_from_config(const RunConfig& cfg) {
    RecipeSpec spec;
    spec.kind = parse_recipe_kind(cfg.recipe);
    if (!cfg.epsilon.empty()) spec.epsilon = parse_rational(cfg.epsilon);
    if (!cfg.f.empty()) spec.f = GrowthFunction::parse(cfg.f);
    spec.e = parse_bigint_list(cfg.e);
    spec.explicit_r = parse_bigint_list(cfg.r);
    spec.explicit_c = parse_bigint_list(cfg.c);
    return spec;
}

/// Output sink that prefixes every artifact with the provenance header.
class Output {
public:
    Output(const RunConfig& cfg, std::ostream& fallback) : cfg_(cfg), fallback_(fallback) {
        if (!cfg.out.empty()) {
            file_.open(cfg.out, std::ios::binary);
            if (!file_) throw ValidationError("cannot write output file '" + cfg.out + "'");
        }
    }

    std::ostream& stream() { return cfg_.out.empty() ? fallback_ : file_; }

    std::string config_hash() const { return hex64(fnv1a(cfg_.canonical().dump())); }

    void header_lines() {
        auto& os = stream();
        os << "# " << kToolName << ' ' << kToolVersion << '\n'
           << "# command: " << cfg_.command << '\n'
           << "# recipe: " << cfg_.recipe << '\n'
           << "# config-hash: " << config_hash() << '\n'
           << "# seed: " << cfg_.seed << '\n';
    }

    nlohmann::ordered_json header_json() const {
        return {{"tool", kToolName}, {"version", kToolVersion}, {"command", cfg_.command},
                {"recipe", cfg_.recipe}, {"config_hash", config_hash()}, {"seed", cfg_.seed}};
    }

    void json(nlohmann::ordered_json body) {
        nlohmann::ordered_json doc;
        doc["header"] = header_json();
        for (auto& [k, v] : body.items()) doc[k] = v;
        stream() << doc.dump(2) << '\n';
    }

private:
    const RunConfig& cfg_;
    std::ostream& fallback_;
    std::ofstream file_;
};

namespace cli_detail {

inline std::string format_or(const RunConfig& cfg, const char* fallback) { return cfg.format.empty() ? fallback : cfg.format; }

inline OracleConfig oracle_config(const RunConfig& cfg) { return {cfg.length_cap, cfg.parallel}; }

inline std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) throw ValidationError("range '" + text + "': expected A..B");
    auto a = parse_count(text.substr(0, dots)), b = parse_count(text.substr(dots + 2));
    return {a.convert_to<std::size_t>(), b.convert_to<std::size_t>()};
}

inline std::vector<std::pair<BitVec, BitVec>> parse_pairs(const std::string& text) {
    std::vector<std::pair<BitVec, BitVec>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto colon = item.find(':');
        if (colon == std::string::npos) throw ValidationError("pair '" + item + "': expected u:v");
        out.emplace_back(BitVec::from_string(item.substr(0, colon)), BitVec::from_string(item.substr(colon + 1)));
    }
    return out;
}

// Structural q values (c_n, m_n, boundaries of each range) inside [1, limit], plus seeded samples.
inline std::set<BigInt> sparse_points(const ParamTable& p, const BigInt& limit, std::size_t samples, std::uint64_t seed) {
    std::set<BigInt> qs{BigInt(1), limit};
    for (std::size_t n = 1; n <= p.depth(); ++n) {
        for (const BigInt& q : {p.c(n), p.m(n), p.c(n) + p.r(n), p.h(n) + 2 * p.c(n) + 1, p.h(n) + 2 * p.c(n) + 2})
            if (q >= 1 && q <= limit) qs.insert(q);
    }
    std::mt19937_64 rng(seed);
    const BigInt span = limit;
    for (std::size_t i = 0; i < samples; ++i) {
        // Uniform in [1, limit] from enough 64-bit draws.
        BigInt x = 0;
        for (std::size_t b = 0; b < bit_length(span) / 64 + 2; ++b) x = (x << 64) + BigInt(rng());
        qs.insert(x % span + 1);
    }
    return qs;
}

inline ComplexityEntry closed_entry(const ParamTable& p, const BigInt& q) {
    ComplexityEntry e{q, complexity_closed_form(p, q), Provenance::closed_form, std::nullopt, std::nullopt};
    if (q < p.c(p.depth())) {
        Increment inc = increment(p, q);
        e.delta = inc.delta;
        e.tag = inc.tag;
    }
    return e;
}

inline nlohmann::ordered_json complexity_json(const ComplexityTable& t) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& e : t.entries) {
        nlohmann::ordered_json row;
        row["q"] = e.q.str();
        row["p"] = e.p.str();
        row["delta"] = e.delta ? e.delta->str() : "";
        row["lemma_tag"] = e.tag ? tag_name(*e.tag) : "";
        row["provenance"] = provenance_name(e.provenance);
        rows.push_back(row);
    }
    return rows;
}

struct CheckResult {
    std::string name;
    std::string status;  // pass | fail | skip | inconclusive
    std::string detail;
};

// Runs one check, turning library errors into a failed or inconclusive row.
inline CheckResult run_check(const std::string& name, const std::function<std::string()>& body) {
    try {
        return {name, "pass", body()};
    } catch (const OracleInconclusive& e) {
        return {name, "inconclusive", e.what()};
    } catch (const TheoremViolation& e) {
        return {name, "fail", e.what()};
    } catch (const ResourceError& e) {
        return {name, "skip", e.what()};
    }
}

inline ParamTable deepened_classic(const RecipeSpec& spec, std::size_t depth, std::size_t max_length) {
    std::size_t d = std::max<std::size_t>(depth, 2);
    for (;;) {
        ParamTable t = build_params(spec, d);
        std::size_t N = 0;
        for (std::size_t n = 1; n <= t.depth(); ++n)
            if (t.c(n) >= BigInt(static_cast<unsigned long>(max_length))) {
                N = n;
                break;
            }
        if (N != 0 && t.depth() >= N + 2) return t;
        if (d > 4096) throw ResourceError("classic-staircase table never reaches length " + std::to_string(max_length));
        d = N != 0 ? N + 2 : d * 2;
    }
}

}  // namespace cli_detail

inline int cmd_build(const RunConfig& cfg, std::ostream& os) {
    using namespace cli_detail;
    ParamTable p = build_params(recipe_from_config(cfg), cfg.depth);
    Output out(cfg, os);
    auto fm = finite_measure_partial_sums(p);
    auto hr = hr_bounds_check(p);
    nlohmann::ordered_json report;
    auto spacer = nlohmann::ordered_json::array(), growth = nlohmann::ordered_json::array(), ratios = nlohmann::ordered_json::array();
    for (const auto& q : fm.spacer_mass) spacer.push_back(to_string(q));
    for (const auto& q : fm.growth_mass) growth.push_back(to_string(q));
    bool hr_ok = true;
    for (const auto& row : hr) {
        ratios.push_back(to_string(row.ratio));
        hr_ok = hr_ok && row.holds;
    }
    report["spacer_mass_partial_sums"] = spacer;
    report["growth_mass_partial_sums"] = growth;
    report["product_height_ratios"] = ratios;
    report["product_bound_holds"] = hr_ok;
    if (format_or(cfg, "json") == "csv") {
        out.header_lines();
        auto& s = out.stream();
        s << "n,r,c,h,m,elevation_ok,cuts_monotone,cut_square_ratio\n";
        for (std::size_t n = 1; n <= p.depth(); ++n) {
            s << n << ',' << p.r(n) << ',' << p.c(n) << ',' << p.h(n) << ',' << p.m(n) << ',';
            if (n < p.depth()) s << (p.flags().elevation_ok[n - 1] ? "true" : "false") << ',' << (p.flags().cuts_monotone[n - 1] ? "true" : "false");
            else s << ',';
            s << ',' << to_string(p.flags().cut_square_ratio[n - 1]) << '\n';
        }
        s << "h[" << p.depth() + 1 << "]," << p.h(p.depth() + 1) << '\n';
    } else {
        out.json({{"params", to_json(p)}, {"validity", report}});
    }
    return 0;
}

inline int cmd_complexity(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
    using namespace cli_detail;
    ParamTable p = build_params(recipe_from_config(cfg), cfg.depth);
    if (cfg.q_max.empty()) throw ValidationError("complexity needs --q-max");
    const BigInt q_max = parse_count(cfg.q_max);
    if (q_max < 1) throw ValidationError("--q-max must be at least 1");
    ComplexityTable t;
    int code = 0;
    if (cfg.method == "closed") {
        if (q_max <= BigInt(cfg.row_cap)) {
            t = complexity_table_closed(p, q_max.convert_to<std::size_t>());
        } else {
            for (const auto& q : sparse_points(p, q_max, cfg.samples, cfg.seed)) t.entries.push_back(closed_entry(p, q));
        }
    } else if (cfg.method == "oracle" || cfg.method == "both") {
        if (q_max > BigInt(cfg.length_cap)) throw RangeError("oracle q-max exceeds the enumeration cap " + std::to_string(cfg.length_cap));
        const auto qm = q_max.convert_to<std::size_t>();
        t = complexity_profile_bruteforce(p, qm, oracle_config(cfg));
        if (cfg.method == "both") {
            ComplexityTable closed = complexity_table_closed(p, qm);
            for (std::size_t i = 0; i < qm; ++i) {
                auto& e = t.entries[i];
                const auto& c = closed.entries[i];
                if (e.p != c.p) {
                    err << "disagreement at q = " << e.q << ": oracle " << e.p << ", closed form " << c.p << '\n';
                    code = static_cast<int>(ExitCode::theorem_violation);
                    break;
                }
                e.provenance = Provenance::both_agree;
                if (e.delta) e.tag = c.tag;
                if (c.delta && e.delta && *c.delta != *e.delta) {
                    err << "increment disagreement at l = " << e.q << '\n';
                    code = static_cast<int>(ExitCode::theorem_violation);
                    break;
                }
            }
        }
    } else {
        throw ValidationError("--method must be closed, oracle or both");
    }
    Output out(cfg, os);
    if (format_or(cfg, "csv") == "json") {
        out.json({{"complexity", complexity_json(t)}});
    } else {
        out.header_lines();
        write_complexity_csv(out.stream(), p, t);
    }
    return code;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& os) {
    using namespace cli_detail;
    const RecipeSpec spec = recipe_from_config(cfg);
    ParamTable p = build_params(spec, cfg.depth);
    std::vector<CheckResult> checks;
    const bool closed_ok = p.c(1) == 1;
    std::size_t q_max = cfg.q_max.empty() ? 200 : parse_count(cfg.q_max).convert_to<std::size_t>();
    q_max = std::min(q_max, cfg.length_cap - 1);
    const auto skip = [&](const std::string& name, const std::string& why) { checks.push_back({name, "skip", why}); };

    bool tiling_ok = true;
    if (closed_ok) {
        checks.push_back(run_check("increment ranges partition each [c_n, c_{n+1})", [&] {
            for (std::size_t n = 1; n < p.depth(); ++n) check_tiling(p, n);
            return "n = 1.." + std::to_string(p.depth() - 1);
        }));
        tiling_ok = checks.back().status == "pass";
    } else {
        skip("increment ranges partition each [c_n, c_{n+1})", "c_1 = " + p.c(1).str() + " is not 1");
    }

    const std::size_t oracle_max = closed_ok ? std::min<BigInt>(BigInt(q_max), p.c(p.depth())).convert_to<std::size_t>() : q_max;
    if (closed_ok && tiling_ok) {
        checks.push_back(run_check("oracle complexity equals the closed form", [&] {
            auto oracle = complexity_profile_bruteforce(p, oracle_max, oracle_config(cfg));
            for (const auto& e : oracle.entries) {
                BigInt v = complexity_closed_form(p, e.q);
                if (v != e.p) throw TheoremViolation("p(" + e.q.str() + "): oracle " + e.p.str() + ", closed form " + v.str());
                if (e.p <= e.q) throw TheoremViolation("p(q) > q fails at q = " + e.q.str());
            }
            return "q = 1.." + std::to_string(oracle_max);
        }));
    } else {
        skip("oracle complexity equals the closed form", closed_ok ? "range tiling failed" : "c_1 is not 1");
    }

    if (p.flags().c1_ok && p.depth() >= 2) {
        checks.push_back(run_check("right-special words match exactly one form; sum of counts rebuilds p", [&] {
            LanguageOracle oracle(p, oracle_config(cfg));
            const std::size_t top = std::max<std::size_t>(1, oracle_max - 1);
            std::vector<LanguageSlice> slices(top);
            parallel_for(top, cfg.parallel, [&](std::size_t i) { slices[i] = oracle.enumerate(i + 1); });
            std::size_t classified = 0, unclassified = 0;
            for (const auto& s : slices) {
                if (s.right_special.empty()) throw TheoremViolation("no right-special word of length " + std::to_string(s.length));
                for (const auto& rc : classify_right_special(p, s)) (rc.form == RsForm::unclassified ? unclassified : classified)++;
            }
            for (std::size_t i = 0; i + 1 < slices.size(); ++i)
                if (slices[i + 1].p() != slices[i].p() + slices[i].right_special.size())
                    throw TheoremViolation("p(" + std::to_string(i + 2) + ") != p(" + std::to_string(i + 1) + ") + |RS|");
            return std::to_string(classified) + " classified, " + std::to_string(unclassified) +
                   " below c_2 reported unclassified, lengths 1.." + std::to_string(top);
        }));
    } else {
        skip("right-special words match exactly one form; sum of counts rebuilds p", "c_1 < 1");
    }

    if (closed_ok && tiling_ok) {
        checks.push_back(run_check("upper bound p(q) <= p(c_n) + (q - c_n)(r_n + 1) <= q(r_n + 1)", [&] {
            auto qs = sparse_points(p, p.c(p.depth()), cfg.samples, cfg.seed);
            for (const auto& q : qs) bound_report(p, q);
            return std::to_string(qs.size()) + " q values (seed " + std::to_string(cfg.seed) + ")";
        }));
        checks.push_back(run_check("lower bound p(m_n) >= h_{n+1}", [&] {
            std::string detail;
            for (const auto& row : lowerbound_identity_report(p)) {
                if (row.bound_holds && !*row.bound_holds)
                    throw TheoremViolation("p(m_" + std::to_string(row.n) + ") = " + row.p_m->str() + " < " + row.h_next.str());
                if (!row.stated_identity_holds)
                    detail += "n=" + std::to_string(row.n) + ": stated count " + row.stated_sum.str() + " vs r^2-4 = " +
                              row.stated_total.str() + (row.tail_from_second ? ", p(m)-p(h+2c+2) = " + row.tail_from_second->str() : "") + "; ";
            }
            return detail.empty() ? std::string("all n") : detail;
        }));
    } else {
        skip("upper bound p(q) <= p(c_n) + (q - c_n)(r_n + 1) <= q(r_n + 1)", "closed form unavailable");
        skip("lower bound p(m_n) >= h_{n+1}", "closed form unavailable");
    }

    checks.push_back(run_check("product bound prod_{j<n}(r_j+1) <= h_n", [&] {
        for (const auto& row : hr_bounds_check(p))
            if (!row.holds) throw TheoremViolation("fails at n = " + std::to_string(row.n));
        return "n = 1.." + std::to_string(p.depth());
    }));

    checks.push_back(run_check("finite-measure partial sums are nondecreasing", [&] {
        auto fm = finite_measure_partial_sums(p);
        for (std::size_t i = 1; i < fm.spacer_mass.size(); ++i)
            if (fm.spacer_mass[i] < fm.spacer_mass[i - 1] || fm.growth_mass[i] < fm.growth_mass[i - 1])
                throw TheoremViolation("decrease at N = " + std::to_string(i + 1));
        return "S_N = " + to_decimal(fm.spacer_mass.back(), 15) + ", growth sum = " + to_decimal(fm.growth_mass.back(), 15);
    }));

    checks.push_back(run_check("zero density of B_n equals prod_{j<n}(r_j+1)/h_n", [&] {
        std::size_t top = 1;
        while (top < p.depth() + 1 && p.h(top + 1) <= BigInt(cfg.budget)) ++top;
        auto rows = zero_density_vs_levels(p, top, cfg.budget);
        for (const auto& row : rows)
            if (!row.bound_holds) throw TheoremViolation("one density exceeds the spacer-mass sum at n = " + std::to_string(row.n));
        return "n = 1.." + std::to_string(top);
    }));

    if (spec.kind == RecipeKind::classic_staircase) {
        checks.push_back(run_check("un-elevated word equals B_n followed by 1^{sum(e_j + r_j)}; languages coincide", [&] {
            const std::size_t lang_max = cfg.q_max.empty() ? 100 : q_max;
            ParamTable deep = deepened_classic(spec, cfg.depth, lang_max);
            const auto& e = deep.spacer_bases();
            const WordModel tilde = WordModel::tilde(e, deep.r_values());
            std::size_t words_checked = 0;
            BigInt tail = 0;
            for (std::size_t n = 1; n <= p.depth() + 1; ++n) {
                if (n > 1) tail += e[n - 2] + deep.r(n - 1);
                if (tilde.length(n) > BigInt(cfg.budget)) break;
                RleWord lhs = build_word(tilde, n, cfg.budget);
                RleWord rhs = build_word(deep, n, cfg.budget);
                rhs.append_run(true, tail.convert_to<std::uint64_t>());
                if (!(lhs == rhs)) throw TheoremViolation("word identity fails at n = " + std::to_string(n));
                ++words_checked;
            }
            LanguageOracle elevated(deep, oracle_config(cfg));
            LanguageOracle untilted(tilde, deep.c_values(), oracle_config(cfg));
            std::vector<char> same(lang_max, 0);
            parallel_for(lang_max, cfg.parallel, [&](std::size_t i) {
                same[i] = elevated.saturated(i + 1).factors == untilted.saturated(i + 1).factors;
            });
            for (std::size_t i = 0; i < lang_max; ++i)
                if (!same[i]) throw TheoremViolation("factor sets differ at length " + std::to_string(i + 1));
            return "words n = 1.." + std::to_string(words_checked) + ", languages l = 1.." + std::to_string(lang_max) +
                   " (table deepened to " + std::to_string(deep.depth()) + ")";
        }));
    }

    int code = 0;
    for (const auto& c : checks) {
        if (c.status == "fail") code = static_cast<int>(ExitCode::theorem_violation);
        else if (c.status == "inconclusive" && code == 0) code = static_cast<int>(ExitCode::oracle_inconclusive);
    }
    Output out(cfg, os);
    if (format_or(cfg, "csv") == "json") {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& c : checks) arr.push_back({{"check", c.name}, {"status", c.status}, {"detail", c.detail}});
        out.json({{"params", to_json(p)}, {"checks", arr}});
    } else {
        out.header_lines();
        auto& s = out.stream();
        s << "status,check,detail\n";
        for (const auto& c : checks) s << c.status << ",\"" << c.name << "\",\"" << c.detail << "\"\n";
    }
    return code;
}

inline int cmd_mixing(const RunConfig& cfg, std::ostream& os) {
    using namespace cli_detail;
    ParamTable p = build_params(recipe_from_config(cfg), cfg.depth);
    const auto pairs = parse_pairs(cfg.pairs);
    auto [n1, n2] = parse_range(cfg.n_range);
    const TimeSpec times = TimeSpec::parse(cfg.times, n1, n2);
    const std::size_t level = cfg.level ? cfg.level : p.depth() + 1;
    std::vector<CorrelationRecord> recs;
    if (!pairs.empty()) {
        MeasureContext ctx(p, level, cfg.budget);
        recs = mixing_scan(ctx, p, pairs, times, cfg.parallel);
    }
    Output out(cfg, os);
    out.header_lines();
    write_correlation_csv(out.stream(), recs);
    return 0;
}

inline int cmd_export(const RunConfig& cfg, std::ostream& os) {
    using namespace cli_detail;
    const RecipeSpec spec = recipe_from_config(cfg);
    ParamTable p = build_params(spec, cfg.depth);
    Output out(cfg, os);
    if (cfg.what == "params") {
        out.json({{"params", to_json(p)}});
    } else if (cfg.what == "word") {
        RleWord w = build_word(p, cfg.n, cfg.budget);
        out.header_lines();
        out.stream() << to_ascii(w, cfg.budget) << '\n';
    } else if (cfg.what == "rle") {
        out.json({{"n", cfg.n}, {"length", p.h(cfg.n).str()}, {"runs", to_rle_json(build_word(p, cfg.n, cfg.budget))}});
    } else if (cfg.what == "factors") {
        LanguageSlice s = LanguageOracle(p, oracle_config(cfg)).enumerate(cfg.length);
        out.header_lines();
        write_factor_dump(out.stream(), s.factors);
    } else if (cfg.what == "slices") {
        LanguageOracle oracle(p, oracle_config(cfg));
        const std::size_t top = cfg.q_max.empty() ? cfg.length : parse_count(cfg.q_max).convert_to<std::size_t>();
        std::vector<LanguageSlice> slices;
        std::ostringstream rows;
        for (std::size_t l = 1; l <= top; ++l) {
            slices.push_back(oracle.enumerate(l));
            write_classification_csv(rows, l, classify_right_special(p, slices.back()));
        }
        out.header_lines();
        write_slice_csv(out.stream(), slices);
        out.stream() << "length,word,form,n,i\n" << rows.str();
    } else if (cfg.what == "ratios") {
        RatioScanOptions opt;
        if (!cfg.f.empty()) opt.f = GrowthFunction::parse(cfg.f);
        if (!cfg.epsilon.empty()) opt.epsilon = parse_rational(cfg.epsilon);
        out.header_lines();
        write_ratio_csv(out.stream(), theorem_ratio_scan(p, parse_ratio_target(cfg.target), opt));
    } else if (cfg.what == "density") {
        out.header_lines();
        auto& s = out.stream();
        s << "n,zero_density,product_ratio,one_density,one_density_bound\n";
        for (const auto& r : zero_density_vs_levels(p, cfg.n, cfg.budget))
            s << r.n << ',' << to_string(r.zero_density) << ',' << to_string(r.product_ratio) << ','
              << to_string(r.one_density) << ',' << to_string(r.one_density_bound) << '\n';
    } else if (cfg.what == "lowerbound") {
        out.header_lines();
        auto& s = out.stream();
        s << "n,r,stated_count,r2_minus_4,stated_identity_holds,p_m_minus_p_first,p_m_minus_p_second,cf1_total,p_m,h_next\n";
        auto opt = [](const std::optional<BigInt>& v) { return v ? v->str() : std::string(); };
        for (const auto& r : lowerbound_identity_report(p))
            s << r.n << ',' << r.r << ',' << r.stated_sum << ',' << r.stated_total << ',' << (r.stated_identity_holds ? "true" : "false")
              << ',' << opt(r.tail_from_first) << ',' << opt(r.tail_from_second) << ',' << opt(r.cf1_total) << ','
              << opt(r.p_m) << ',' << r.h_next << '\n';
    } else {
        throw ValidationError("--what must be params, word, rle, factors, slices, ratios, density or lowerbound");
    }
    return 0;
}

namespace cli_detail {

// Copies config-file values into fields whose flags were not given.
inline void apply_config_file(const std::string& path, RunConfig& cfg, const CLI::App& app) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config file '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw ValidationError("config file must hold a JSON object");
    auto given = [&](const std::string& name) {
        for (const auto* opt : app.get_options())
            if (opt->check_lname(name) && opt->count() > 0) return true;
        for (const auto* sub : app.get_subcommands())
            for (const auto* opt : sub->get_options())
                if (opt->check_lname(name) && opt->count() > 0) return true;
        return false;
    };
    auto text = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    auto list = [&](const nlohmann::json& v) {
        std::vector<std::string> out;
        if (v.is_array())
            for (const auto& x : v) out.push_back(text(x));
        else
            out.push_back(text(v));
        return out;
    };
    for (auto& [key, v] : j.items()) {
        if (given(key)) continue;
        try {
            if (key == "recipe") cfg.recipe = text(v);
            else if (key == "depth") cfg.depth = v.get<std::size_t>();
            else if (key == "epsilon") cfg.epsilon = text(v);
            else if (key == "f") cfg.f = text(v);
            else if (key == "e") cfg.e = list(v);
            else if (key == "r") cfg.r = list(v);
            else if (key == "c") cfg.c = list(v);
            else if (key == "q-max") cfg.q_max = text(v);
            else if (key == "method") cfg.method = text(v);
            else if (key == "level") cfg.level = v.get<std::size_t>();
            else if (key == "length-cap") cfg.length_cap = v.get<std::size_t>();
            else if (key == "budget") cfg.budget = v.get<std::uint64_t>();
            else if (key == "row-cap") cfg.row_cap = v.get<std::size_t>();
            else if (key == "samples") cfg.samples = v.get<std::size_t>();
            else if (key == "out") cfg.out = text(v);
            else if (key == "format") cfg.format = text(v);
            else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
            else if (key == "parallel") cfg.parallel = v.get<unsigned>();
            else if (key == "verbose") cfg.verbosity = v.get<int>();
            else if (key == "pairs") cfg.pairs = text(v);
            else if (key == "times") cfg.times = text(v);
            else if (key == "n-range") cfg.n_range = text(v);
            else if (key == "target") cfg.target = text(v);
            else if (key == "what") cfg.what = text(v);
            else if (key == "n") cfg.n = v.get<std::size_t>();
            else if (key == "length") cfg.length = v.get<std::size_t>();
            else throw ValidationError("config file: unknown key '" + key + "'");
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("config file: bad value for '" + key + "': " + e.what());
        }
    }
}

}  // namespace cli_detail

/// Parses arguments (without the program name) and runs one command; returns the exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& os = std::cout, std::ostream& err = std::cerr) {
    RunConfig cfg;
    std::string config_path;
    CLI::App app{"Extremely elevated staircase subshifts: parameters, complexity, verification, mixing."};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1, 1);
    app.add_option("--config", config_path, "JSON file with option values; flags take precedence");
    app.add_option("--recipe", cfg.recipe, "demo | theorem1 | theorem2 | theorem3 | classic-staircase | explicit");
    app.add_option("--depth", cfg.depth, "number of levels (>= 2)");
    app.add_option("--epsilon", cfg.epsilon, "rational epsilon for theorem2/theorem3");
    app.add_option("--f", cfg.f, "growth function for theorem1: pow:A, qlog:B, qceillog:B");
    app.add_option("--e", cfg.e, "spacer bases for classic-staircase (last value repeats)")->delimiter(',');
    app.add_option("--r", cfg.r, "explicit cut sequence")->delimiter(',');
    app.add_option("--c", cfg.c, "explicit elevating sequence")->delimiter(',');
    app.add_option("--q-max", cfg.q_max, "largest q (accepts 10^7)");
    app.add_option("--method", cfg.method, "closed | oracle | both");
    app.add_option("--level", cfg.level, "word level N for measure statistics (default depth + 1)");
    app.add_option("--length-cap", cfg.length_cap, "largest factor length the oracle enumerates");
    app.add_option("--budget", cfg.budget, "largest word length that may be materialized");
    app.add_option("--row-cap", cfg.row_cap, "closed-form tables beyond this many rows switch to sampled rows");
    app.add_option("--samples", cfg.samples, "seeded random q values for sampled checks");
    app.add_option("--out", cfg.out, "output file (default stdout)");
    app.add_option("--format", cfg.format, "csv | json");
    app.add_option("--seed", cfg.seed, "random seed, recorded in every header");
    app.add_option("--parallel", cfg.parallel, "worker threads for enumeration and counting");
    app.add_flag("-v,--verbose", cfg.verbosity, "more diagnostics on stderr");
    app.add_option("--pairs", cfg.pairs, "cylinder pairs u:v separated by commas");
    app.add_option("--times", cfg.times, "seq:K[,K..] | list:T,.. | dense:A..B[:S]");
    app.add_option("--n-range", cfg.n_range, "n range A..B for seq: times");
    app.add_option("--target", cfg.target, "ratio scan target T1..T5");
    app.add_option("--what", cfg.what, "export: params | word | rle | factors | slices | ratios | density | lowerbound");
    app.add_option("--n", cfg.n, "word index for export");
    app.add_option("--length", cfg.length, "factor length for export");
    for (const char* name : {"build", "complexity", "verify", "mixing", "export"}) {
        auto* sub = app.add_subcommand(name);
        sub->fallthrough();
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        os << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        os << kToolName << ' ' << kToolVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    }
    try {
        cfg.command = app.get_subcommands().front()->get_name();
        if (!config_path.empty()) cli_detail::apply_config_file(config_path, cfg, app);
        if (cfg.length_cap == 0 || cfg.budget == 0 || cfg.parallel == 0)
            throw ValidationError("caps, budget and --parallel must be positive");
        if (cfg.command == "build") return cmd_build(cfg, os);
        if (cfg.command == "complexity") return cmd_complexity(cfg, os, err);
        if (cfg.command == "verify") return cmd_verify(cfg, os);
        if (cfg.command == "mixing") return cmd_mixing(cfg, os);
        return cmd_export(cfg, os);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(e.code());
    }
}

}  // namespace staircase
