// polar: command-line front end for the Golay, lattice, SNF, design,
// quadrature and pair-verification modules.
//
// Exit codes: 0 success / pass, 1 verification failure, 2 usage error.

#include "polar/design.hpp"
#include "polar/golay.hpp"
#include "polar/lattice.hpp"
#include "polar/quadrature.hpp"
#include "polar/snf.hpp"
#include "polar/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace {

using polar::BigInt;
using polar::Rational;
using polar::RationalVector;
using Json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Input that parses but cannot be used (bad file, unknown recipe part).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void emit(const Json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw UsageError("cannot write " + out_path);
    os << text;
}

std::vector<std::string> strings_of(const std::vector<BigInt>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
}

// ---------------------------------------------------------------- golay

struct GolayArgs {
    std::string basis = "mog";
    std::string out;
    bool octads = false;
    bool steiner = false, patterns = false, span = false;
};

polar::GolayBasis parse_basis(const std::string& b) { return b == "b12" ? polar::GolayBasis::B12 : polar::GolayBasis::MOG; }

int golay_build(const GolayArgs& a) {
    auto g = polar::build_golay(parse_basis(a.basis));
    const auto& words = a.octads ? g.octads() : g.codewords();
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!a.out.empty()) {
        file.open(a.out);
        if (!file) throw UsageError("cannot write " + a.out);
        os = &file;
    }
    for (auto w : words) *os << polar::word_string(w) << '\n';
    if (!a.out.empty()) std::cerr << words.size() << " words written to " << a.out << '\n';
    return kExitPass;
}

int golay_check(const GolayArgs& a) {
    auto g = polar::build_golay(parse_basis(a.basis));
    Json j;
    bool ok = true;
    auto hist = g.weight_histogram();
    std::vector<int> dist = {hist[0], hist[8], hist[12], hist[16], hist[24]};
    bool weights_ok = dist == std::vector<int>{1, 759, 2576, 759, 1} && g.codewords().size() == 4096;
    j["weights"] = {{"distribution", dist}, {"pass", weights_ok}};
    ok = ok && weights_ok;

    if (a.steiner) {
        long sets = 0, good = 0;
        std::vector<int> s(5);
        for (s[0] = 1; s[0] <= 20; ++s[0])
            for (s[1] = s[0] + 1; s[1] <= 21; ++s[1])
                for (s[2] = s[1] + 1; s[2] <= 22; ++s[2])
                    for (s[3] = s[2] + 1; s[3] <= 23; ++s[3])
                        for (s[4] = s[3] + 1; s[4] <= 24; ++s[4]) {
                            ++sets;
                            if (polar::steiner_cover_count(g, s) == 1) ++good;
                        }
        bool pass = sets == 42504 && good == sets;
        j["steiner"] = {{"five_sets", sets}, {"covered_once", good}, {"pass", pass}};
        ok = ok && pass;
    }
    if (a.patterns) {
        struct Named {
            const char* name;
            std::vector<polar::PatternBit> bits;
            int expected;
        };
        const std::vector<Named> rows = {
            {"1", {{1, true}}, 253},
            {"11", {{1, true}, {2, true}}, 77},
            {"111", {{1, true}, {2, true}, {3, true}}, 21},
            {"1111", {{1, true}, {2, true}, {3, true}, {4, true}}, 5},
            {"10", {{1, true}, {2, false}}, 176},
            {"110", {{1, true}, {2, true}, {3, false}}, 56},
        };
        Json pj = Json::array();
        bool pass = true;
        for (const auto& r : rows) {
            int got = polar::octad_pattern_count(g, r.bits);
            pj.push_back({{"pattern", r.name}, {"count", got}, {"expected", r.expected}});
            pass = pass && got == r.expected;
        }
        j["patterns"] = {{"rows", pj}, {"pass", pass}};
        ok = ok && pass;
    }
    if (a.span) {
        std::vector<polar::Word> subset;
        for (auto w : g.octads()) {
            bool p1 = w & 1U, p2 = w & 2U;
            if (p1 != p2) subset.push_back(w);
        }
        bool pass = subset.size() == 352 && polar::span_check(g, subset);
        j["span"] = {{"octads_10_01", subset.size()}, {"rank", polar::gf2_rank(subset)}, {"pass", pass}};
        ok = ok && pass;
    }
    j["status"] = ok ? "pass" : "fail";
    emit(j, "");
    return ok ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- lattice

struct LatticeArgs {
    std::string lattice = "e8";
    int layer = 1;
    std::string out;
    std::string recipe;
};

int lattice_gen(const LatticeArgs& a) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!a.out.empty()) {
        file.open(a.out);
        if (!file) throw UsageError("cannot write " + a.out);
        os = &file;
    }
    if (a.lattice == "e8") {
        if (a.layer != 1 && a.layer != 2) throw UsageError("--layer must be 1 or 2 for e8");
        polar::write_code(*os, polar::e8_layer(a.layer));
        return kExitPass;
    }
    if (a.layer != 2 && a.layer != 3) throw UsageError("--layer must be 2 or 3 for leech");
    auto counts = polar::leech_shape_counts(a.layer);
    long total = std::accumulate(counts.begin(), counts.end(), 0L);
    // Streamed, so the third layer never sits in memory.
    *os << "# dim=24 scale2=" << polar::kLeechScale2 << " count=" << total << " center=";
    for (int i = 0; i < 24; ++i) *os << (i ? "," : "") << 0;
    *os << " radius2=" << 2 * a.layer * polar::kLeechScale2 << '\n';
    std::string line;
    polar::leech_layer_stream(a.layer, [&](std::span<const std::int8_t> batch, int) {
        for (std::size_t p = 0; p < batch.size(); p += 24) {
            line.clear();
            for (std::size_t j = 0; j < 24; ++j) {
                if (j) line += ' ';
                line += std::to_string(static_cast<int>(batch[p + j]));
            }
            line += '\n';
            *os << line;
        }
    });
    return kExitPass;
}

// Carved codes are written as integer directions about their center, so
// the file's center is the origin and only cosines are meaningful.
int lattice_carve(const LatticeArgs& a) {
    auto dot = a.recipe.rfind('.');
    if (dot == std::string::npos) throw UsageError("--recipe must look like <pair-id>.<code-id>");
    std::string pair = a.recipe.substr(0, dot), part = a.recipe.substr(dot + 1);
    const auto& recipe = polar::find_recipe(pair);
    if (recipe.lambda_pair) throw UsageError("the Leech layer-2/layer-3 pair is streamed; use lattice gen");
    auto codes = polar::build_pair(pair);
    const polar::AssembledCode* chosen = nullptr;
    if (part == "C") chosen = &codes.c;
    else if (part == "D") chosen = &codes.d;
    else if (auto it = codes.extras.find(part); it != codes.extras.end()) chosen = &it->second;
    if (!chosen) {
        std::string names = "C, D";
        for (const auto& [k, v] : codes.extras) names += ", " + k;
        throw UsageError("unknown code id '" + part + "' (available: " + names + ")");
    }
    const auto& cc = chosen->centered();
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!a.out.empty()) {
        file.open(a.out);
        if (!file) throw UsageError("cannot write " + a.out);
        os = &file;
    }
    *os << "# dim=" << cc.dim() << " scale2=1 count=" << cc.size() << " center=";
    for (int i = 0; i < cc.dim(); ++i) *os << (i ? "," : "") << 0;
    *os << " radius2=" << cc.norm2() << '\n';
    for (std::size_t i = 0; i < cc.size(); ++i) {
        const long* v = cc.vec(i);
        for (int j = 0; j < cc.dim(); ++j) *os << (j ? " " : "") << v[j];
        *os << '\n';
    }
    return kExitPass;
}

// ---------------------------------------------------------------- code files

// Reads the code-file format with 64-bit coordinates (carved files exceed int8).
struct LoadedCode {
    int dim = 0;
    int scale2 = 1;
    RationalVector center;
    std::vector<polar::Direction> directions;
};

LoadedCode load_code(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot read " + path);
    std::string header;
    if (!std::getline(is, header) || header.rfind("# ", 0) != 0) throw UsageError(path + ": missing header");
    std::istringstream hs(header.substr(2));
    LoadedCode out;
    long count = -1;
    std::string field;
    while (hs >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos) throw UsageError(path + ": bad header field " + field);
        std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "dim") out.dim = std::stoi(val);
        else if (key == "scale2") out.scale2 = std::stoi(val);
        else if (key == "count") count = std::stol(val);
        else if (key == "center") {
            std::istringstream cs(val);
            std::string item;
            while (std::getline(cs, item, ',')) out.center.push_back(Rational::parse(item));
        }
    }
    if (out.dim <= 0 || count < 0 || out.center.size() != static_cast<std::size_t>(out.dim))
        throw UsageError(path + ": incomplete header");
    BigInt den = 1;
    for (const auto& c : out.center) den = lcm(den, c.den());
    if (!den.fits_slong_p()) throw UsageError(path + ": center denominator too large");
    const long d = den.get_si();
    std::vector<long> shift;
    for (const auto& c : out.center) shift.push_back(BigInt(c.num() * (den / c.den())).get_si());
    std::vector<long> row(static_cast<std::size_t>(out.dim));
    long v;
    std::size_t j = 0;
    while (is >> v) {
        row[j] = d * v - shift[j];
        if (++j == row.size()) {
            out.directions.push_back({row});
            j = 0;
        }
    }
    if (j != 0 || static_cast<long>(out.directions.size()) != count) throw UsageError(path + ": point count mismatch");
    if (out.directions.empty()) throw UsageError(path + ": empty code");
    return out;
}

polar::Direction anchor_direction(const std::string& text, const LoadedCode& code) {
    RationalVector x;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) x.push_back(Rational::parse(item));
    if (x.size() != static_cast<std::size_t>(code.dim))
        throw UsageError("--from needs " + std::to_string(code.dim) + " comma-separated coordinates");
    return polar::direction(x, code.center);
}

// ---------------------------------------------------------------- design

struct DesignArgs {
    std::string code;
    int lmax = 14;
    bool full_pairs = false;
    bool distance_regular = false;
    std::string from;
    std::string alpha2;
    int sign = 1;
};

int design_strength_cmd(const DesignArgs& a) {
    auto loaded = load_code(a.code);
    polar::CenteredCode cc(loaded.dim, loaded.directions);
    int gdim = polar::affine_dimension(cc);
    polar::MomentOptions opt;
    opt.mode = a.full_pairs ? polar::MomentMode::Full : polar::MomentMode::Auto;
    opt.distance_regular_asserted = a.distance_regular;
    auto ds = polar::design_strength(cc, gdim, a.lmax, opt);
    Json moments = Json::array();
    for (const auto& m : ds.profile.moments) moments.push_back(m.str());
    Json j;
    j["size"] = cc.size();
    j["gegenbauer_dim"] = gdim;
    j["mode"] = ds.profile.used == polar::MomentMode::Full ? "full" : "distance_regular";
    j["moments"] = moments;
    j["strength"] = ds.strength;
    j["extra_zero_moments"] = ds.extra_zero_moments;
    j["half_step"] = ds.is_half_step();
    j["dgs_bound"] = polar::dgs_bound(gdim, ds.strength).get_str();
    emit(j, "");
    return kExitPass;
}

int design_distribution_cmd(const DesignArgs& a) {
    auto loaded = load_code(a.code);
    polar::CenteredCode cc(loaded.dim, loaded.directions);
    auto x = anchor_direction(a.from, loaded);
    auto dist = polar::ip_distribution(x, cc);
    Json entries = Json::array();
    for (const auto& [c, n] : dist.entries) entries.push_back({{"cosine", c.str()}, {"count", n}});
    emit({{"total", dist.total}, {"distribution", entries}}, "");
    return kExitPass;
}

int design_derived_cmd(const DesignArgs& a) {
    auto loaded = load_code(a.code);
    polar::CenteredCode cc(loaded.dim, loaded.directions);
    auto x = anchor_direction(a.from, loaded);
    int parent = polar::affine_dimension(cc);
    auto g = polar::derived_gram(cc, parent, x, Rational::parse(a.alpha2), a.sign);
    Json entries = Json::array();
    for (const auto& [v, n] : g.entries) entries.push_back({{"value", v.str()}, {"count", n}});
    Json j;
    j["size"] = g.size;
    j["gegenbauer_dim"] = g.dim;
    j["gram_entries"] = entries;
    j["strength"] = polar::derived_design_strength(g, a.lmax);
    if (g.has_dense() && g.size <= polar::GramView::kPsdLimit) j["psd_rank_ok"] = g.psd_with_rank_at_most_dim();
    emit(j, "");
    return kExitPass;
}

// ---------------------------------------------------------------- snf

struct SnfArgs {
    std::string in;
    std::string ambient;
};

int snf_cmd(const SnfArgs& a) {
    std::ifstream is(a.in);
    if (!is) throw UsageError("cannot read " + a.in);
    polar::IntMatrix rows;
    std::string line;
    while (std::getline(is, line)) {
        // Code-file headers are skipped, so `lattice gen` output feeds straight in.
        if (line.rfind('#', 0) == 0) continue;
        std::istringstream ls(line);
        std::vector<BigInt> row;
        std::string tok;
        while (ls >> tok) {
            BigInt v;
            if (v.set_str(tok, 10) != 0) throw UsageError(a.in + ": not an integer: " + tok);
            row.push_back(v);
        }
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows.front().size()) throw UsageError(a.in + ": ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw UsageError(a.in + ": empty matrix");
    Json j;
    if (a.ambient.empty()) {
        auto r = polar::smith_normal_form(rows);
        bool reconstructed = polar::multiply(polar::multiply(r.S, r.D), r.T) == rows;
        j["diagonal"] = strings_of(r.diagonal);
        j["compressed"] = polar::compress_diagonal(r.diagonal);
        j["reconstruction"] = reconstructed;
        emit(j, "");
        return reconstructed ? kExitPass : kExitFail;
    }
    // Rows are generators in the ambient lattice's integer coordinates.
    polar::Ambient amb = a.ambient == "leech" ? polar::Ambient::Leech : polar::Ambient::E8;
    std::vector<polar::LatticePoint> gens;
    for (const auto& row : rows) {
        std::vector<int> coords;
        for (const auto& v : row) {
            if (!v.fits_sint_p()) throw UsageError(a.in + ": coordinate out of range");
            coords.push_back(static_cast<int>(v.get_si()));
        }
        gens.push_back(amb == polar::Ambient::Leech ? polar::leech_point(coords) : polar::e8_point(coords));
    }
    auto r = polar::sublattice_index_detail(gens, amb);
    j["ambient"] = a.ambient;
    j["diagonal"] = strings_of(r.diagonal);
    j["compressed"] = polar::compress_diagonal(r.diagonal);
    j["index"] = r.index.get_str();
    emit(j, "");
    return kExitPass;
}

// ---------------------------------------------------------------- quadrature

struct QuadArgs {
    int dim = 0;
    int strength = 0;
    int k = 0;
    std::string s;
    long N = 0;
    long scale = 0;
};

Json rule_json(const polar::QuadratureRule& r, long scale) {
    Json nodes = Json::array(), weights = Json::array();
    for (const auto& n : r.nodes) nodes.push_back(n.str());
    auto weight_text = [&](const polar::Rational& w) {
        return r.weights_approximate ? "~" + polar::float_str(polar::to_float(w)) : w.str();
    };
    for (const auto& w : r.weights) weights.push_back(weight_text(w));
    Json j;
    j["kind"] = r.kind == polar::RuleKind::PULB ? "PULB" : (r.kind == polar::RuleKind::PULB2 ? "PULB2" : "LEV");
    j["label"] = r.label();
    j["dim"] = r.dim;
    j["strength"] = r.strength;
    j["nodes"] = nodes;
    j["weights"] = weights;
    j["weights_approximate"] = r.weights_approximate;
    if (r.weight_at_one) j["weight_at_one"] = r.weight_at_one->str();
    if (scale > 0) {
        Json scaled = Json::array();
        for (const auto& w : r.scaled_weights(scale)) scaled.push_back(weight_text(w));
        j["scaled_weights"] = {{"N", scale}, {"values", scaled}};
    }
    j["exactness"] = r.exactness;
    j["non_exact"] = r.non_exact;
    return j;
}

// ---------------------------------------------------------------- pair

struct PairArgs {
    std::string id;
    bool full = false;
    std::string report;
    std::uint64_t seed = polar::VerifyOptions{}.seed;
    bool no_probes = false;
    bool timings = false;
};

polar::VerifyOptions verify_options(const PairArgs& a) {
    polar::VerifyOptions opt;
    opt.full = a.full;
    opt.seed = a.seed;
    opt.probes = !a.no_probes;
    return opt;
}

void print_summary(const polar::VerificationReport& r) {
    std::cout << r.pair << " [" << r.mode << "] " << (r.pass ? "PASS" : "FAIL") << '\n';
    for (const auto& c : r.clauses)
        if (!c.pass) std::cout << "  failed: " << c.id << '\n';
}

int pair_list() {
    for (const auto& r : polar::pair_registry()) {
        std::cout << r.id;
        for (const auto& al : r.aliases) std::cout << " (" << al << ")";
        std::cout << "  " << r.c_name << " / " << r.d_name << "  dim " << r.dim << "  |C|=" << r.size_c
                  << " tau=" << r.tau_c << "  |D|=" << r.size_d << " tau=" << r.tau_d << '\n';
    }
    return kExitPass;
}

int pair_verify(const PairArgs& a) {
    polar::find_recipe(a.id);  // UnknownPair before any work
    auto rep = polar::verify_pair(a.id, verify_options(a));
    print_summary(rep);
    if (!a.report.empty()) {
        std::ofstream os(a.report);
        if (!os) throw UsageError("cannot write " + a.report);
        os << polar::report_json(rep, a.timings) << '\n';
    }
    return rep.pass ? kExitPass : kExitFail;
}

int pair_verify_all(const PairArgs& a) {
    bool all = true;
    Json reports = Json::array();
    for (const auto& r : polar::pair_registry()) {
        auto rep = polar::verify_pair(r.id, verify_options(a));
        print_summary(rep);
        all = all && rep.pass;
        if (!a.report.empty()) reports.push_back(Json::parse(polar::report_json(rep, a.timings)));
    }
    std::cout << "verify-all " << (all ? "PASS" : "FAIL") << '\n';
    if (!a.report.empty()) {
        Json j;
        j["version"] = polar::kReportVersion;
        j["status"] = all ? "pass" : "fail";
        j["reports"] = reports;
        emit(j, a.report);
    }
    return all ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polar: exact checks for universal polarization and energy minima of lattice codes"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", polar::kReportVersion);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: POLAR_THREADS or hardware)")->check(CLI::PositiveNumber);

    std::function<int()> action;

    // golay
    GolayArgs ga;
    auto* golay = app.add_subcommand("golay", "extended binary Golay code");
    golay->require_subcommand(1);
    auto* gbuild = golay->add_subcommand("build", "write codewords (or octads) as 0/1 strings");
    gbuild->add_option("--basis", ga.basis)->check(CLI::IsMember({"mog", "b12"}));
    gbuild->add_option("--out", ga.out);
    gbuild->add_flag("--octads", ga.octads);
    gbuild->callback([&] { action = [&] { return golay_build(ga); }; });
    auto* gcheck = golay->add_subcommand("check", "weight distribution plus optional structural checks");
    gcheck->add_option("--basis", ga.basis)->check(CLI::IsMember({"mog", "b12"}));
    gcheck->add_flag("--steiner", ga.steiner, "every 5-set lies in exactly one octad");
    gcheck->add_flag("--patterns", ga.patterns, "octad pattern counts on the first positions");
    gcheck->add_flag("--span", ga.span, "octads with pattern 10 or 01 span the code");
    gcheck->callback([&] { action = [&] { return golay_check(ga); }; });

    // lattice
    LatticeArgs la;
    auto* lattice = app.add_subcommand("lattice", "E8 / Leech shells and recipe codes");
    lattice->require_subcommand(1);
    auto* lgen = lattice->add_subcommand("gen", "write a shell as a code file");
    lgen->add_option("--lattice", la.lattice)->required()->check(CLI::IsMember({"e8", "leech"}));
    lgen->add_option("--layer", la.layer)->required();
    lgen->add_option("--out", la.out);
    lgen->callback([&] { action = [&] { return lattice_gen(la); }; });
    auto* lcarve = lattice->add_subcommand("carve", "write a recipe code (<pair-id>.<code-id>) as directions");
    lcarve->add_option("--recipe", la.recipe)->required();
    lcarve->add_option("--out", la.out);
    lcarve->callback([&] { action = [&] { return lattice_carve(la); }; });

    // snf
    SnfArgs sa;
    auto* snf = app.add_subcommand("snf", "Smith normal form, or sublattice index with --ambient");
    snf->add_option("--in", sa.in)->required();
    snf->add_option("--ambient", sa.ambient)->check(CLI::IsMember({"e8", "leech"}));
    snf->callback([&] { action = [&] { return snf_cmd(sa); }; });

    // design
    DesignArgs da;
    auto* design = app.add_subcommand("design", "moments, distributions and derived codes");
    design->require_subcommand(1);
    auto* dstr = design->add_subcommand("strength", "exact moments and design strength");
    dstr->add_option("--code", da.code)->required();
    dstr->add_option("--lmax", da.lmax)->check(CLI::Range(1, 40));
    dstr->add_flag("--full-pairs", da.full_pairs, "force the O(N^2) pairwise moments");
    dstr->add_flag("--distance-regular", da.distance_regular, "allow the single-point shortcut");
    dstr->callback([&] { action = [&] { return design_strength_cmd(da); }; });
    auto* ddist = design->add_subcommand("distribution", "cosine distribution from an anchor point");
    ddist->add_option("--code", da.code)->required();
    ddist->add_option("--from", da.from, "comma-separated rational coordinates")->required();
    ddist->callback([&] { action = [&] { return design_distribution_cmd(da); }; });
    auto* dder = design->add_subcommand("derived", "derived code at cosine^2 alpha2 from an anchor");
    dder->add_option("--code", da.code)->required();
    dder->add_option("--from", da.from)->required();
    dder->add_option("--alpha2", da.alpha2, "p/q")->required();
    dder->add_option("--sign", da.sign)->check(CLI::IsMember({-1, 1}));
    dder->add_option("--lmax", da.lmax)->check(CLI::Range(1, 40));
    dder->callback([&] { action = [&] { return design_derived_cmd(da); }; });

    // quadrature
    QuadArgs qa;
    auto* quad = app.add_subcommand("quadrature", "PULB / PULB2 / LEV rules as JSON");
    quad->require_subcommand(1);
    auto* qp = quad->add_subcommand("pulb", "rule of strength tau");
    qp->add_option("--dim", qa.dim)->required()->check(CLI::Range(2, 64));
    qp->add_option("--strength", qa.strength)->required()->check(CLI::Range(1, 40));
    qp->add_option("--scale", qa.scale, "also print N * weights for this N");
    qp->callback([&] { action = [&] { emit(rule_json(polar::pulb_rule(qa.dim, qa.strength), qa.scale), ""); return kExitPass; }; });
    auto* qp2 = quad->add_subcommand("pulb2", "skip rule with k + 1 nodes");
    qp2->add_option("--dim", qa.dim)->required()->check(CLI::Range(2, 64));
    qp2->add_option("--k", qa.k)->required()->check(CLI::Range(1, 20));
    qp2->add_option("--scale", qa.scale);
    qp2->callback([&] { action = [&] { emit(rule_json(polar::pulb2_rule(qa.dim, qa.k), qa.scale), ""); return kExitPass; }; });
    auto* ql = quad->add_subcommand("lev", "Radau/Lobatto rule from its largest inner node");
    ql->add_option("--dim", qa.dim)->required()->check(CLI::Range(2, 64));
    ql->add_option("--strength", qa.strength)->required()->check(CLI::Range(1, 40));
    ql->add_option("--s", qa.s, "p/q")->required();
    ql->add_option("--N", qa.N)->required()->check(CLI::PositiveNumber);
    ql->callback([&] {
        action = [&] {
            auto r = polar::lev_rule_from_s(qa.dim, qa.strength, polar::SqrtScalar(Rational::parse(qa.s)), qa.N);
            emit(rule_json(r, qa.N), "");
            return kExitPass;
        };
    });

    // pair
    PairArgs pa;
    auto* pair = app.add_subcommand("pair", "pair verification");
    pair->require_subcommand(1);
    pair->add_subcommand("list", "registered pairs")->callback([&] { action = [] { return pair_list(); }; });
    auto add_verify_flags = [&](CLI::App* sub) {
        sub->add_flag("--full", pa.full, "stream every witness of the Leech layer pair");
        sub->add_option("--report", pa.report, "write the JSON report here");
        sub->add_option("--seed", pa.seed, "seed for sampled witnesses and probes");
        sub->add_flag("--no-probes", pa.no_probes, "skip the local-minimum probes");
        sub->add_flag("--timings", pa.timings, "include clause timings in the report");
    };
    auto* pv = pair->add_subcommand("verify", "verify one pair");
    pv->add_option("id", pa.id)->required();
    add_verify_flags(pv);
    pv->callback([&] { action = [&] { return pair_verify(pa); }; });
    auto* pall = pair->add_subcommand("verify-all", "verify every registered pair");
    add_verify_flags(pall);
    pall->callback([&] { action = [&] { return pair_verify_all(pa); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    if (threads > 0) setenv("POLAR_THREADS", std::to_string(threads).c_str(), 1);
    if (!action) return kExitUsage;
    try {
        return action();
    } catch (const polar::UnknownPair& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
}
