#pragma once

// Pair verification: code assembly from lattice layers, PULB witness
// checks in both directions, rule identity, minima-set counts, sharp-code
// energy checks, SNF / coset ledgers, the 1408-line graph and local probes.
//
// Codes are kept as integer directions about their centers. The cosine
// between a point of C and a point of D is the cosine of their directions,
// which is the geodesic projection of one code onto the other's sphere when
// both sit in parallel affine subspaces (checked as a rank condition).

#include "polar/design.hpp"
#include "polar/lattice.hpp"
#include "polar/quadrature.hpp"
#include "polar/snf.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polar {

class UnknownPair : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class WitnessFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- points

// Rational points stored as integers over one common denominator.
class PointCloud {
public:
    PointCloud() = default;
    PointCloud(int dim, long den);
    static PointCloud from_code(const SphericalCode& code);
    static PointCloud from_rows(const std::vector<std::vector<long>>& rows, long den = 1);

    int dim() const { return dim_; }
    long den() const { return den_; }
    std::size_t size() const { return dim_ ? flat_.size() / static_cast<std::size_t>(dim_) : 0; }
    const long* point(std::size_t i) const { return flat_.data() + i * static_cast<std::size_t>(dim_); }
    RationalVector rational_point(std::size_t i) const;

    // sign * x + shift for every point.
    PointCloud transformed(int sign, const RationalVector& shift) const;
    void append(const PointCloud& other);
    RationalVector centroid() const;

private:
    void rescale(long new_den);
    int dim_ = 0;
    long den_ = 1;
    std::vector<long> flat_;
};

struct CodePart {
    std::string label;
    std::size_t begin = 0, end = 0;  // direction index range
};

// A code as directions about its center, with the parts it was built from.
struct AssembledCode {
    std::string label;
    int ambient_dim = 0;
    RationalVector center;  // in the source coordinates
    std::vector<CodePart> parts;
    bool symmetrized = false;
    std::shared_ptr<const CenteredCode> code;

    std::size_t size() const { return code ? code->size() : 0; }
    const CenteredCode& centered() const { return *code; }
    CenteredCode part(const std::string& label) const;
};

// Unions translated copies, then optionally adds the antipodes about the
// union's center. Directions are divided by the gcd of all their entries.
class CodeBuilder {
public:
    explicit CodeBuilder(std::string label) : label_(std::move(label)) {}
    CodeBuilder& add(std::string part_label, PointCloud points);
    CodeBuilder& symmetrize();
    AssembledCode build() const;

private:
    std::string label_;
    std::vector<std::pair<std::string, PointCloud>> parts_;
    bool symmetrize_ = false;
};

// Distinct directions, up to a positive common scale.
bool all_distinct(const CenteredCode& code);
bool antipodal(const CenteredCode& code);
// Rank of the union of both direction sets.
int joint_rank(const CenteredCode& a, const CenteredCode& b);

// ---------------------------------------------------------------- witnesses

struct WitnessClass {
    std::size_t witnesses = 0;  // count of witnesses with this distribution
    std::size_t first = 0;      // index of the first one
    CosineDistribution distribution;
    bool nodes_ok = false;        // every cosine is a rule node
    bool multiplicities_ok = false;  // counts equal N * rho_i
    std::vector<long> multiplicities;  // aligned with the rule's nodes
};

struct WitnessCheck {
    std::string rule_label;
    std::size_t witness_count = 0;
    std::vector<WitnessClass> classes;
    bool pass = false;
    std::optional<std::size_t> offending;  // first failing witness
    std::string split() const;  // "(14, 64, 84, 64, 14)" when all classes agree
};

// I(x, code) subset of the nodes, and counts exactly |code| * rho_i.
bool attains_pulb(const CenteredCode& code, const QuadratureRule& rule, const Direction& witness);
WitnessClass classify_witness(const std::map<long, long>& dots, long witness_norm2, long code_norm2, long code_size,
                              const QuadratureRule& rule);
WitnessCheck check_witnesses(const CenteredCode& witnesses, const CenteredCode& code, const QuadratureRule& rule);

// Same node multiset and same weights.
bool same_rule(const QuadratureRule& a, const QuadratureRule& b);

// ---------------------------------------------------------------- graphs

struct SrgParameters {
    long v = 0, k = 0, lambda = 0, mu = 0;
    bool regular = false;  // constant degree, lambda and mu
    std::string str() const;
    friend bool operator==(const SrgParameters&, const SrgParameters&) = default;
};

// Graph on the directions with i ~ j iff X_i . X_j == adjacency_dot.
SrgParameters srg_parameters(const CenteredCode& code, long adjacency_dot);
// Same, from an explicit adjacency predicate on index pairs.
SrgParameters srg_parameters(std::size_t vertices, const std::function<bool(std::size_t, std::size_t)>& adjacent);

// ---------------------------------------------------------------- ledgers

struct SnfOutcome {
    std::string label;
    std::string diagonal;          // computed, compressed
    std::string expected_diagonal; // empty when the claim is only an index
    BigInt index;
    BigInt expected_index;
    bool side_conditions = true;
    std::string note;
    bool pass = false;
};

struct GridOutcome {
    std::string label;
    std::vector<std::vector<long>> admissible;  // coefficient tuples with an even integer norm
    std::vector<std::vector<long>> expected;
    bool formula_ok = false;  // every value matched the closed form
    bool pass = false;
    std::vector<std::string> values;  // "(j,k): value"
};

// ---------------------------------------------------------------- sharp codes

struct SharpExpectation {
    std::string label;
    int tau = 0;
    std::vector<Rational> cosines;   // inner products below 1, ascending
    std::vector<long> multiplicities;
};

struct SharpOutcome {
    std::string label;
    int dim = 0;
    long size = 0;
    bool every_point = false;  // all points checked (else spot checks)
    bool distance_regular = false;
    std::string distribution;
    bool table_match = false;
    bool lev_match = false;
    std::string lev_label;
    bool pass = false;
};

SharpOutcome energy_sharp_check(const CenteredCode& code, const SharpExpectation& expected, int spot_limit = 6000);

// ---------------------------------------------------------------- probes

struct ProbeOptions {
    double delta = 0.01;
    int trials = 200;
    std::uint64_t seed = 20240601;
};

struct ProbeOutcome {
    std::string potential;
    bool applicable = false;  // the direction attains the bound
    int trials = 0;
    int increased = 0;
    std::string min_margin;  // smallest U(x') - U(x), decimal
    bool pass = false;
};

ProbeOutcome local_min_probe(const Direction& witness, const CenteredCode& code, const QuadratureRule& rule,
                             const PotentialSpec& h, const ProbeOptions& opt = {});

// ---------------------------------------------------------------- 1408 lines

struct LineGraphRule {
    std::string name;
    long degree = 0;
    SrgParameters srg;
};

struct B1408Outcome {
    std::vector<std::string> cosines;  // within-code spectrum
    long lines = 0;
    bool antipodal = false;
    std::vector<std::string> sigmas;   // 2 t^2 - 1 over distinct lines
    std::vector<LineGraphRule> rules;  // every candidate adjacency rule
    std::vector<std::string> rules_with_degree_567;
    SrgParameters chosen;
    bool pass = false;
};

// radius2 is the actual squared radius of the code about its center; the
// named rule joins two lines when some pair of representatives has actual
// centered inner product -1.
B1408Outcome b1408_check(const CenteredCode& a2, const Rational& radius2 = Rational(3));

// ---------------------------------------------------------------- recipes

struct RuleChoice {
    RuleKind kind = RuleKind::PULB;
    int strength = 0;  // tau for PULB, k for PULB2
    QuadratureRule make(int dim) const;
    std::string str() const;
};

struct PairCodes {
    AssembledCode c, d;
    std::map<std::string, AssembledCode> extras;  // named sub-codes (sharp parts, A2, ...)
};

class LayerCache;

struct PartSplit {
    std::string side;  // "C" or "D": the code whose part is split
    std::string part;
    std::vector<long> multiplicities;
};

struct SnfComputation {
    IndexResult result;
    bool side_conditions = true;  // extra claims attached to the entry (membership, row identities)
    std::string note;
};

struct SnfSpec {
    std::string label;
    std::function<SnfComputation(LayerCache&)> compute;
    std::string diagonal;  // expected, compressed; empty if only the index is quoted
    long index = 1;
};

struct GridSpec {
    std::string label;
    int scale2 = 1;
    std::function<RationalVector(LayerCache&)> witness;
    std::vector<RationalVector> reps;
    std::vector<std::pair<long, long>> ranges;  // inclusive coefficient range per representative
    std::function<Rational(const std::vector<long>&)> closed_form;
    std::vector<std::vector<long>> expected;
};

struct SharpSpec {
    std::string code;  // key in PairCodes::extras, or "C" / "D"
    SharpExpectation expected;
};

struct SrgSpec {
    std::string code;  // key in PairCodes::extras
    Rational adjacency_cosine;
    SrgParameters expected;
};

struct PairRecipe {
    std::string id;
    std::vector<std::string> aliases;
    std::string group;  // "e8", "leech", "other"
    std::string c_name, d_name;
    int dim = 0;
    long size_c = 0, size_d = 0;
    int tau_c = 0, tau_d = 0;
    RuleChoice rule_c, rule_d;
    std::vector<long> c_split, d_split;  // quoted multiplicities (empty if not quoted)
    std::vector<PartSplit> part_splits;
    std::vector<SharpSpec> sharp;
    std::vector<SrgSpec> graphs;
    std::vector<SnfSpec> snf;
    std::vector<GridSpec> grids;
    bool lambda_pair = false;  // first and second Leech layers: streamed, sampled by default
    bool higman_sims_split = false;
    bool projective_lines = false;  // run b1408_check on extras["A2"]
    std::function<PairCodes(LayerCache&)> build;
};

// Lazily materialized layers shared by the recipes.
class LayerCache {
public:
    const SphericalCode& e8(int k);
    const SphericalCode& leech2();
    PointCloud e8_carve(int k, const std::vector<Constraint>& constraints);
    PointCloud leech_carve(int k, const std::vector<Constraint>& constraints);

private:
    std::map<int, SphericalCode> e8_;
    std::optional<SphericalCode> leech2_;
};

const std::vector<PairRecipe>& pair_registry();
const PairRecipe& find_recipe(const std::string& id);  // throws UnknownPair

// ---------------------------------------------------------------- reports

struct Clause {
    std::string id;
    bool pass = false;
    std::vector<std::pair<std::string, std::string>> facts;  // ordered, exact strings
    double seconds = 0;  // not serialized

    const std::string* fact(const std::string& key) const;
};

struct VerificationReport {
    std::string pair;
    std::string mode;  // "exact", "sampled" or "full"
    std::vector<Clause> clauses;
    std::map<std::string, long> counts;
    bool pass = false;  // every clause passed

    const Clause* clause(const std::string& id) const;
};

struct VerifyOptions {
    bool full = false;             // stream every witness of the Leech layer pair
    int samples = 10;              // witnesses per direction in sampled mode
    std::uint64_t seed = 20240601; // sampled witness choice and probes
    bool probes = true;
    ProbeOptions probe;
};

inline constexpr const char* kReportVersion = "polar-verify 1.0";

VerificationReport verify_pair(const std::string& id, const VerifyOptions& opt = {});

// Individual clause families, also used by the acceptance suite.
std::vector<SnfOutcome> snf_ledger_check(const std::string& id);
std::vector<GridOutcome> grid_ledger_check(const std::string& id);
PairCodes build_pair(const std::string& id);

std::string report_json(const VerificationReport& r, bool with_timings = false);

}  // namespace polar
