// Acceptance suite: one PASS/FAIL line per criterion on stdout, details on
// stderr. Exit status is nonzero when any criterion fails.

#include "polar/design.hpp"
#include "polar/golay.hpp"
#include "polar/lattice.hpp"
#include "polar/quadrature.hpp"
#include "polar/snf.hpp"
#include "polar/verify.hpp"

#include "sharp_tables.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace polar;

namespace {

Rational q(long a, long b = 1) { return Rational(BigInt(a), BigInt(b)); }

struct Outcome {
    bool pass = true;
    std::string summary;
};

class Detail {
public:
    explicit Detail(int criterion) : criterion_(criterion) {}
    bool check(bool ok, const std::string& what) {
        if (!ok) ++failures_;
        std::cerr << "  [" << criterion_ << "] " << (ok ? "ok   " : "FAIL ") << what << "\n";
        return ok;
    }
    int failures() const { return failures_; }

private:
    int criterion_;
    int failures_ = 0;
};

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
}

template <class T>
std::string join_numbers(const std::vector<T>& v) {
    std::vector<std::string> s;
    for (const auto& x : v) s.push_back(std::to_string(x));
    return join(s);
}

// ---------------------------------------------------------------- shared scans

const PairCodes& pair_codes(const std::string& id) {
    static std::map<std::string, PairCodes> cache;
    auto it = cache.find(id);
    if (it == cache.end()) it = cache.emplace(id, build_pair(id)).first;
    return it->second;
}

const SphericalCode& leech2() {
    static const SphericalCode c = leech_layer(2);
    return c;
}

// Directions for the constancy probes: six second-shell points and six
// small integer vectors in general position.
const std::vector<Direction>& shell_probe_directions() {
    static const std::vector<Direction> dirs = [] {
        std::vector<Direction> out;
        std::mt19937_64 rng(20240601);
        for (int i = 0; i < 6; ++i) {
            auto p = leech2().point(rng() % leech2().size());
            out.push_back(Direction{std::vector<long>(p.begin(), p.end())});
        }
        std::uniform_int_distribution<int> coord(-3, 3);
        while (out.size() < 12) {
            Direction d;
            d.vec.resize(24);
            for (auto& x : d.vec) x = coord(rng);
            if (d.norm2() > 0) out.push_back(d);
        }
        return out;
    }();
    return dirs;
}

// One streamed pass over the third Leech shell, shared by criteria 2 and 4.
struct ThirdShellScan {
    long total = 0;
    long bad = 0;
    std::vector<long> per_shape = std::vector<long>(4, 0);
    std::vector<std::map<long, long>> histograms;
};

const ThirdShellScan& third_shell() {
    static const ThirdShellScan scan = [] {
        ThirdShellScan s;
        const auto& dirs = shell_probe_directions();
        std::vector<std::map<long, long>> hist(dirs.size());
        leech_layer_stream(3, [&](std::span<const std::int8_t> batch, int shape) {
            for (std::size_t p = 0; p < batch.size(); p += 24) {
                const std::int8_t* x = batch.data() + p;
                long n2 = 0;
                for (int i = 0; i < 24; ++i) n2 += x[i] * x[i];
                if (n2 != 48 || !leech_contains_raw(x)) ++s.bad;
                ++s.per_shape[static_cast<std::size_t>(shape)];
                ++s.total;
                for (std::size_t d = 0; d < dirs.size(); ++d) {
                    long dot = 0;
                    for (int i = 0; i < 24; ++i) dot += x[i] * dirs[d].vec[static_cast<std::size_t>(i)];
                    ++hist[d][dot];
                }
            }
        });
        s.histograms = std::move(hist);
        return s;
    }();
    return scan;
}

const std::vector<std::string>& table_pairs() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& r : pair_registry())
            if (r.group == "e8" || r.group == "leech") out.push_back(r.id);
        return out;
    }();
    return ids;
}

const std::map<std::string, VerificationReport>& pair_reports() {
    static const std::map<std::string, VerificationReport> reports = [] {
        std::map<std::string, VerificationReport> out;
        for (const auto& id : table_pairs()) out.emplace(id, verify_pair(id));
        return out;
    }();
    return reports;
}

// ---------------------------------------------------------------- 1 Golay

Outcome golay_suite() {
    Detail d(1);
    const auto& g = mog_golay();
    auto h = g.weight_histogram();
    d.check((std::vector<int>{h[0], h[8], h[12], h[16], h[24]}) == std::vector<int>{1, 759, 2576, 759, 1},
            "weight distribution (1, 759, 2576, 759, 1)");
    long sets = 0, once = 0;
    std::vector<int> s(5);
    for (s[0] = 1; s[0] <= 20; ++s[0])
        for (s[1] = s[0] + 1; s[1] <= 21; ++s[1])
            for (s[2] = s[1] + 1; s[2] <= 22; ++s[2])
                for (s[3] = s[2] + 1; s[3] <= 23; ++s[3])
                    for (s[4] = s[3] + 1; s[4] <= 24; ++s[4]) {
                        ++sets;
                        once += steiner_cover_count(g, s) == 1;
                    }
    d.check(sets == 42504 && once == sets, "every 5-set in exactly one octad (" + std::to_string(once) + "/42504)");
    std::vector<int> counts = {
        octad_pattern_count(g, {{1, true}}),
        octad_pattern_count(g, {{1, true}, {2, true}}),
        octad_pattern_count(g, {{1, true}, {2, true}, {3, true}}),
        octad_pattern_count(g, {{1, true}, {2, true}, {3, true}, {4, true}}),
        octad_pattern_count(g, {{1, true}, {2, false}}),
        octad_pattern_count(g, {{1, true}, {2, true}, {3, false}}),
    };
    d.check(counts == std::vector<int>{253, 77, 21, 5, 176, 56}, "pattern counts " + join_numbers(counts));
    std::vector<Word> subset;
    for (auto w : g.octads())
        if (((w & 1U) != 0) != ((w & 2U) != 0)) subset.push_back(w);
    d.check(subset.size() == 352 && span_check(g, subset), "octads with pattern 10 or 01 span the code");
    return {d.failures() == 0, "weights, S(5,8,24), patterns, span"};
}

// ---------------------------------------------------------------- 2 shells

std::map<std::vector<int>, long> shapes(const SphericalCode& c) {
    std::map<std::vector<int>, long> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::vector<int> key;
        for (auto x : c.point(i)) key.push_back(std::abs(static_cast<int>(x)));
        std::sort(key.rbegin(), key.rend());
        ++out[key];
    }
    return out;
}

std::vector<long> sorted_counts(const std::map<std::vector<int>, long>& m) {
    std::vector<long> v;
    for (const auto& [k, n] : m) v.push_back(n);
    std::sort(v.begin(), v.end());
    return v;
}

Outcome shell_counts() {
    Detail d(2);
    auto e1 = e8_layer(1), e2 = e8_layer(2);
    bool member = true;
    for (std::size_t i = 0; i < e1.size(); ++i) member = member && e8_contains(e1.lattice_point(i));
    for (std::size_t i = 0; i < e2.size(); ++i) member = member && e8_contains(e2.lattice_point(i));
    d.check(e1.size() == 240 && sorted_counts(shapes(e1)) == std::vector<long>{112, 128}, "E8 layer 1: 240 = 128 + 112");
    d.check(e2.size() == 2160 && sorted_counts(shapes(e2)) == std::vector<long>{16, 1024, 1120},
            "E8 layer 2: 2160 = 16 + 1120 + 1024");
    d.check(member, "every E8 point passes membership");
    const auto& l2 = leech2();
    bool l2_member = true;
    for (std::size_t i = 0; i < l2.size(); ++i) l2_member = l2_member && leech_contains_raw(l2.point(i).data());
    d.check(l2.size() == 196560 && sorted_counts(shapes(l2)) == std::vector<long>{1104, 97152, 98304} && l2_member,
            "Leech shell 2: 196560 = 97152 + 98304 + 1104, all members");
    const auto& s3 = third_shell();
    std::vector<long> want3 = {2048L * 2576, 2024L * 4096, 256L * 759 * 16, 24L * 4096};
    d.check(s3.total == 16773120 && s3.per_shape == want3 && s3.per_shape == leech_shape_counts(3),
            "Leech shell 3 streamed: " + std::to_string(s3.total) + " = " + join_numbers(s3.per_shape));
    d.check(s3.bad == 0, "every third-shell point has norm 48 and passes membership");
    return {d.failures() == 0, "240, 2160, 196560, 16773120 with shape counts"};
}

// ---------------------------------------------------------------- 3 golden rules

Outcome golden_rules() {
    Detail d(3);
    int rows = 0;
    for (const auto& row : golden::polarization_rows()) {
        auto c = golden::check_polarization_row(row);
        if (!c.pass || row.dim >= 21) d.check(c.pass, "polarization " + row.name + ": " + c.detail);
        ++rows;
    }
    for (const auto& row : golden::energy_rows()) {
        auto c = golden::check_energy_row(row);
        if (!c.pass || row.dim >= 21) d.check(c.pass, "energy " + row.name + ": " + c.detail);
        ++rows;
    }
    return {d.failures() == 0, std::to_string(rows) + " rows"};
}

// ---------------------------------------------------------------- 4 strengths

struct StrengthCase {
    std::string name;
    std::string pair;
    std::string which;  // "C", "D", an extras key, or "D:<part>"
    int tau;
    std::vector<int> extras;  // required extra vanishing moments
};

CenteredCode select_code(const StrengthCase& c) {
    const auto& p = pair_codes(c.pair);
    if (c.which == "C") return p.c.centered();
    if (c.which == "D") return p.d.centered();
    if (c.which.rfind("D:", 0) == 0) return p.d.part(c.which.substr(2));
    return p.extras.at(c.which).centered();
}

Outcome design_strengths() {
    Detail d(4);
    const std::vector<StrengthCase> cases = {
        {"C240", "e8-240-2160", "C", 7, {9, 10}},     {"C2160", "e8-240-2160", "D", 7, {9, 10}},
        {"C56", "e8-56-126", "C", 5, {}},             {"C126", "e8-56-126", "D", 5, {}},
        {"C54", "e8-54-72", "C", 5, {}},              {"C72", "e8-54-72", "D", 5, {}},
        {"C552", "leech-552-22356", "C", 5, {}},      {"C4600", "leech-4600-94208", "C", 7, {}},
        {"C891", "leech-1782-8448", "A1", 5, {}},     {"C2816", "leech-1782-8448", "A2", 5, {}},
        {"C100", "leech-200-704", "F1", 3, {}},       {"C352", "leech-200-704", "D:F2", 3, {}},
        {"C112", "leech-224-648", "C112", 3, {}},     {"C162", "leech-224-648", "C162", 3, {}},
    };
    MomentOptions full;
    full.mode = MomentMode::Full;
    for (const auto& c : cases) {
        CenteredCode code = select_code(c);
        const int n = affine_dimension(code);
        auto s = design_strength(code, n, c.tau + 4, full);
        bool ok = s.strength == c.tau;
        for (int e : c.extras)
            ok = ok && std::find(s.extra_zero_moments.begin(), s.extra_zero_moments.end(), e) != s.extra_zero_moments.end();
        std::string what = c.name + ": size " + std::to_string(code.size()) + ", dim " + std::to_string(n) +
                           ", strength " + std::to_string(s.strength) + " + {" + join_numbers(s.extra_zero_moments) + "}";
        if (c.name == "C552") {
            bool tight = dgs_bound(n, 5) == BigInt(static_cast<long>(code.size()));
            ok = ok && tight;
            what += tight ? ", tight" : ", not tight";
        }
        d.check(ok, what);
    }
    {
        CenteredCode c7128 = pair_codes("leech-550-14256").d.part("C7128");
        const int n = affine_dimension(c7128);
        auto prof = moment_profile(c7128, n, 6, full);
        bool zero = true;
        for (int ell = 1; ell <= 5; ++ell) zero = zero && prof.moments[static_cast<std::size_t>(ell)].is_zero();
        auto dist = ip_distribution(c7128.direction_of(0), c7128);
        std::map<Rational, long> got;
        for (const auto& [cos, count] : dist.entries) got[cos.as_rational()] = count;
        std::map<Rational, long> want = {{q(1), 1}, {q(2, 5), 750}, {q(1, 10), 3500}, {q(-1, 5), 2625}, {q(-1, 2), 252}};
        d.check(c7128.size() == 7128 && zero && got == want, "C7128: M1..M5 = 0, distribution " + dist.str());
    }
    {
        std::vector<int> degrees = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 14};
        const auto& dirs = shell_probe_directions();
        CenteredCode l2(leech2());
        auto r2 = design_constancy_probe(l2, 24, dirs, degrees);
        auto r2_twelve = design_constancy_probe(l2, 24, dirs, {12});
        d.check(r2.all_zero && !r2_twelve.all_zero,
                "Leech shell 2: constancy zero for 1..11, 13, 14 at " + std::to_string(dirs.size()) +
                    " directions; degree 12 nonzero");
        const auto& s3 = third_shell();
        auto r3 = constancy_from_histograms(s3.histograms, dirs, 48, 24, degrees);
        auto r3_twelve = constancy_from_histograms(s3.histograms, dirs, 48, 24, {12});
        d.check(r3.all_zero && !r3_twelve.all_zero,
                "Leech shell 3: constancy zero for 1..11, 13, 14 at " + std::to_string(dirs.size()) +
                    " directions; degree 12 nonzero");
    }
    return {d.failures() == 0, "14 codes, C7128 moments, shell constancy"};
}

// ---------------------------------------------------------------- 5 pairs

bool has_split(const VerificationReport& r, const std::string& split) {
    for (const auto& c : r.clauses)
        if (const std::string* s = c.fact("split"); s && *s == split) return true;
    return false;
}

Outcome pair_verifications() {
    Detail d(5);
    const std::map<std::string, long> minima = {
        {"e8-240-2160", 2160},     {"e8-56-126", 126},           {"e8-54-72", 72},
        {"e8-12-20", 20},          {"e8-32-10", 10},             {"leech-196560-16773120", 16773120},
        {"leech-4600-94208", 94208}, {"leech-1782-8448", 8448},  {"leech-552-22356", 22356},
        {"leech-550-14256", 14256}, {"leech-200-704", 704},      {"leech-224-648", 648},
    };
    for (const auto& [id, rep] : pair_reports()) {
        std::vector<std::string> failed;
        for (const auto& c : rep.clauses)
            if (!c.pass) failed.push_back(c.id);
        std::string what = id + " [" + rep.mode + "] " + std::to_string(rep.clauses.size()) + " clauses";
        if (!failed.empty()) what += "; failing: " + join(failed);
        d.check(rep.pass, what);
        if (auto it = minima.find(id); it != minima.end()) {
            long got = rep.counts.count("minima_of_C") ? rep.counts.at("minima_of_C") : -1;
            d.check(got == it->second, id + " minima of C: " + std::to_string(got));
        }
    }
    d.check(pair_reports().size() >= 13, std::to_string(pair_reports().size()) + " lattice pairs verified");
    d.check(has_split(pair_reports().at("e8-240-2160"), "(14, 64, 84, 64, 14)"), "C240 split (14, 64, 84, 64, 14)");
    d.check(has_split(pair_reports().at("e8-240-2160"), "(126, 576, 756, 576, 126)"),
            "C2160 split (126, 576, 756, 576, 126)");
    d.check(has_split(pair_reports().at("leech-4600-94208"), "(2816, 20736, 20736, 2816)"),
            "K2 split (2816, 20736, 20736, 2816)");
    d.check(has_split(pair_reports().at("leech-552-22356"), "(2025, 7128, 2025)"), "C11178 split (2025, 7128, 2025)");
    return {d.failures() == 0, std::to_string(pair_reports().size()) + " pairs"};
}

// ---------------------------------------------------------------- 6 ledgers

Outcome snf_ledgers() {
    Detail d(6);
    std::vector<SnfOutcome> all;
    std::vector<GridOutcome> grids;
    for (const auto& id : table_pairs()) {
        for (auto& o : snf_ledger_check(id)) {
            d.check(o.pass, id + " " + o.label + ": " + (o.diagonal.empty() ? "-" : o.diagonal) + " index " +
                                o.index.get_str() + " (expected " + o.expected_index.get_str() + ")");
            all.push_back(std::move(o));
        }
        for (auto& g : grid_ledger_check(id)) {
            std::vector<std::string> tuples;
            for (const auto& t : g.admissible) tuples.push_back("(" + join_numbers(t) + ")");
            d.check(g.pass, id + " grid " + g.label + ": admissible " + join(tuples));
            grids.push_back(std::move(g));
        }
    }
    // Quoted diagonals, each found among the computed entries.
    const std::vector<std::pair<std::string, long>> quoted = {
        {"1, 2^6, 12", 3},         {"1, 2^5, 4, 12", 6},     {"1, 2^6, 4", 1},          {"1, 2^6, 8", 2},
        {"1, 2^9, 4^13, 8", 4},    {"1, 2^10, 4^12, 24", 6}, {"1, 2^11, 4^11, 24", 3},  {"1, 2^11, 4^11, 40", 5},
        {"1, 2^11, 4^11, 80", 10}, {"1, 2^11, 4^10, 12, 24", 9},
    };
    for (const auto& [diag, index] : quoted) {
        bool found = std::any_of(all.begin(), all.end(), [&](const SnfOutcome& o) {
            return o.pass && o.diagonal == diag && o.index == BigInt(index);
        });
        d.check(found, "quoted diag(" + diag + ") index " + std::to_string(index));
    }
    auto index_of = [&](const std::string& label) -> std::string {
        for (const auto& o : all)
            if (o.label == label) return o.pass ? o.index.get_str() : "fail";
        return "missing";
    };
    d.check(index_of("ispan(A,K1)") == "2", "K1 span index 2");
    bool m_found = std::any_of(all.begin(), all.end(), [](const SnfOutcome& o) {
        return o.label.find('M') != std::string::npos && o.label.find("ispan") == std::string::npos && o.pass &&
               o.index == 2;
    });
    d.check(m_found, "M matrix index 2");
    std::set<std::string> grid_labels;
    for (const auto& g : grids) grid_labels.insert(g.label);
    d.check(grid_labels.size() >= 7, std::to_string(grid_labels.size()) + " coset parity grids");
    return {d.failures() == 0, std::to_string(all.size()) + " SNF entries, " + std::to_string(grids.size()) + " grids"};
}

// ---------------------------------------------------------------- 7 derived codes

Outcome derived_property() {
    Detail d(7);
    struct Case {
        std::string name;
        CenteredCode code;
        int tau;
        std::optional<CenteredCode> partner;
    };
    std::vector<Case> cases;
    for (const auto& id : table_pairs()) {
        const auto& r = find_recipe(id);
        if (r.lambda_pair) continue;
        const auto& p = pair_codes(id);
        if (p.c.size() <= 5000) cases.push_back({id + ".C", p.c.centered(), r.tau_c, p.d.centered()});
        if (p.d.size() <= 5000) cases.push_back({id + ".D", p.d.centered(), r.tau_d, p.c.centered()});
    }
    std::mt19937_64 rng(7);
    long fibers = 0, probes = 0;
    bool bound_ok = true;
    for (auto& cs : cases) {
        const int n = affine_dimension(cs.code);
        for (int trial = 0; trial < 6; ++trial) {
            Direction x;
            if (trial < 2 && cs.partner) {
                x = cs.partner->direction_of(rng() % cs.partner->size());
            } else if (trial < 4) {
                x = cs.code.direction_of(rng() % cs.code.size());
            } else {
                Direction a = cs.code.direction_of(rng() % cs.code.size());
                Direction b = cs.code.direction_of(rng() % cs.code.size());
                for (std::size_t i = 0; i < a.vec.size(); ++i) a.vec[i] += b.vec[i];
                x = a;
            }
            if (x.norm2() == 0) continue;
            auto dist = ip_distribution(x, cs.code);
            int k = 0;
            for (const auto& [c, cnt] : dist.entries)
                if (c.square() < Rational(1)) ++k;
            if (k > cs.tau) continue;
            ++probes;
            for (const auto& [c, cnt] : dist.entries) {
                if (c.square() >= Rational(1)) continue;
                auto g = derived_gram(cs.code, n, x, c.square(), c.sign());
                int s = derived_design_strength(g, cs.tau + 2);
                ++fibers;
                if (s < cs.tau + 1 - k) {
                    bound_ok = false;
                    d.check(false, cs.name + " fiber at " + c.str() + ": strength " + std::to_string(s) + " < " +
                                       std::to_string(cs.tau + 1 - k));
                }
            }
        }
    }
    d.check(bound_ok && fibers > 50,
            "derived strength >= tau + 1 - k on " + std::to_string(fibers) + " fibers from " + std::to_string(probes) +
                " probes");

    // Distance-regular shortcut vs full pairwise moments, on every code up to 5000 points.
    int compared = 0, skipped = 0;
    for (const auto& cs : cases) {
        const CenteredCode& code = cs.code;
        auto reference = dot_histogram(code.direction_of(0), code);
        bool regular = true;
        for (std::size_t i = 1; i < code.size() && regular; ++i) regular = dot_histogram(code.direction_of(i), code) == reference;
        if (!regular) {
            ++skipped;
            continue;
        }
        const int n = affine_dimension(code);
        MomentOptions full, shortcut;
        full.mode = MomentMode::Full;
        shortcut.mode = MomentMode::DistanceRegular;
        shortcut.distance_regular_asserted = true;
        bool same = moment_profile(code, n, 14, full).moments == moment_profile(code, n, 14, shortcut).moments;
        d.check(same, cs.name + ": shortcut moments equal full moments (" + std::to_string(code.size()) + " points)");
        ++compared;
    }
    d.check(compared >= 10, std::to_string(compared) + " distance-regular codes compared, " + std::to_string(skipped) +
                                " not distance regular");
    return {d.failures() == 0, std::to_string(fibers) + " fibers, " + std::to_string(compared) + " shortcut comparisons"};
}

// ---------------------------------------------------------------- 8 B1408

Outcome projective_lines() {
    Detail d(8);
    auto out = b1408_check(pair_codes("leech-1782-8448").extras.at("A2").centered());
    d.check(out.cosines == std::vector<std::string>{"-1", "-1/3", "0", "1/3", "1"}, "cosines {" + join(out.cosines) + "}");
    d.check(out.antipodal && out.lines == 1408, std::to_string(out.lines) + " antipodal lines");
    d.check(out.sigmas == std::vector<std::string>{"-1", "-7/9"}, "sigma {" + join(out.sigmas) + "}");
    for (const auto& r : out.rules) std::cerr << "  [8]       rule '" << r.name << "': " << r.srg.str() << "\n";
    d.check(out.chosen == SrgParameters{1408, 567, 246, 216, true}, "graph " + out.chosen.str());
    d.check(out.pass, "b1408_check pass");
    return {d.failures() == 0, out.chosen.str()};
}

// ---------------------------------------------------------------- 9 probes

Outcome local_probes() {
    Detail d(9);
    const ProbeOptions defaults;
    d.check(defaults.trials == 200 && defaults.delta == 0.01, "200 trials at delta 0.01");
    int probes = 0;
    for (const auto& [id, rep] : pair_reports()) {
        for (const std::string key : {"probe.gauss", "probe.riesz"}) {
            const Clause* c = rep.clause(key);
            if (!d.check(c != nullptr, id + " " + key + " present")) continue;
            const std::string* margin = c->fact("min_margin");
            bool positive = margin && !margin->empty() && margin->front() != '-' && *margin != "0";
            bool ok = c->pass && *c->fact("trials") == "200" && *c->fact("increased") == "200" && positive;
            d.check(ok, id + " " + key + ": increased " + *c->fact("increased") + "/200, min margin " +
                            (margin ? *margin : "-"));
            ++probes;
        }
    }
    return {d.failures() == 0, std::to_string(probes) + " probes"};
}

}  // namespace

int main() {
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, golay_suite},      {2, shell_counts},    {3, golden_rules},     {4, design_strengths}, {5, pair_verifications},
        {6, snf_ledgers},      {7, derived_property}, {8, projective_lines}, {9, local_probes},
    };
    int failed = 0;
    for (const auto& [number, run] : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(1);
        line << "criterion " << number << ": " << (out.pass ? "PASS" : "FAIL") << " (" << out.summary << ", " << seconds
             << " s)";
        std::cout << line.str() << std::endl;
        failed += !out.pass;
    }
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
