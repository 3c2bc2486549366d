#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wzforge/constants.hpp"
#include "wzforge/gosper.hpp"
#include "wzforge/harmonic.hpp"
#include "wzforge/series.hpp"

namespace wzforge {

struct UnknownIdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// one candidate reading of a flagged right-hand side
struct RhsCandidate {
    std::string label;
    ConstantExpr rhs;
    std::string rhs_text;
    std::optional<int> derivative_order;  // overrides the entry's order
};

// Sum_k base(k) lhs_weight(k) against Re Sum_n (combination . d/dparams) g(n)
struct BoundaryCheck {
    std::map<std::string, long> combination;  // empty: g itself
    Weight lhs_weight;                        // empty: the entry's own weighted summand
};

struct TheoremEntry {
    std::string id;
    std::string group;
    HyperTerm summand;
    int derivative_order = 0;
    long start = 0;
    ConstantExpr rhs;
    std::string rhs_text;
    std::string provenance;
    std::optional<std::string> pair;
    std::optional<HyperTerm> wz_term;
    Weight weight;
    bool flagged = false;
    std::vector<RhsCandidate> candidates;
    std::optional<BoundaryCheck> boundary;
};

struct BoundaryTerm {
    HyperTerm term;
    ConstantExpr scalar;
    Var variable = Var::n;
    long start = 0;
    std::string provenance;
};

struct HsumEntry {
    std::string id;
    Weight weight;
    long start = 0;
    ConstantExpr rhs;
    std::string rhs_text;
    std::string provenance;
    std::string compare_with;
};

struct CatalogPair {
    std::string id;
    HyperTerm F;
    std::string provenance;
};

class Catalog {
public:
    static Catalog from_json(const Json& doc);
    static Catalog load(const std::string& path);
    // data/catalog.json, loaded once
    static const Catalog& bundled();

    const TheoremEntry& entry(const std::string& id) const;
    std::vector<std::string> ids() const;
    const std::vector<TheoremEntry>& entries() const { return entries_; }
    const std::vector<CatalogPair>& pairs() const { return pairs_; }
    const CatalogPair& pair(const std::string& id) const;
    const BoundaryTerm& boundary(const std::string& pair_id) const;
    const std::vector<HsumEntry>& hsums() const { return hsums_; }

    // computed once per pair and shared between threads
    const WZMate& mate(const std::string& pair_id) const;

    // test fixtures
    void set_rhs(const std::string& id, const ConstantExpr& rhs);

private:
    struct MateCache;
    std::vector<TheoremEntry> entries_;
    std::vector<CatalogPair> pairs_;
    std::map<std::string, BoundaryTerm> boundaries_;
    std::vector<HsumEntry> hsums_;
    std::shared_ptr<MateCache> mates_;
};

const TheoremEntry& theorem_spec(const std::string& id);

enum class SymbolicStatus { verified, failed, not_applicable };
std::string status_name(SymbolicStatus s);

struct CandidateCheck {
    std::string label;
    double abs_diff = 0.0;
    bool holds = false;
};

struct SideCheck {
    std::string name;
    ApproxValue lhs;
    ApproxValue rhs;
    double abs_diff = 0.0;
    bool passed = false;
};

struct VerificationReport {
    std::string id;
    SymbolicStatus symbolic_status = SymbolicStatus::not_applicable;
    ApproxValue numeric_lhs;
    ApproxValue numeric_rhs;
    double abs_diff = 0.0;
    bool passed = false;
    int digits = 0;
    double elapsed = 0.0;
    std::string rhs_text;
    // flagged entries
    std::optional<std::string> resolution;
    std::vector<CandidateCheck> candidates;
    // boundary identity and the harmonic-number route
    std::vector<SideCheck> side_checks;
    std::string error;

    Json to_json() const;
};

// precision at which flagged right-hand sides are decided
constexpr int kResolutionDigits = 40;
constexpr int kMaxVerifyDigits = 60;

VerificationReport verify_theorem(const Catalog& cat, const std::string& id, int digits);
VerificationReport verify_theorem(const std::string& id, int digits);
// never throws for individual entries; sorted by id. on_done sees each
// report as it completes, one call at a time.
std::vector<VerificationReport> verify_all(const Catalog& cat, int digits, int parallelism,
                                           const std::function<void(const VerificationReport&)>& on_done = {});

struct VerificationSummary {
    int entries = 0;
    int passed = 0;
    int failed = 0;
    int symbolic_verified = 0;  // distinct pairs
};
VerificationSummary summarize(const Catalog& cat, const std::vector<VerificationReport>& reports);

// [c] realized as a parameter derivative at the origin
SeriesJob boundary_series(const BoundaryTerm& g, const std::map<std::string, long>& combination, int digits);

}  // namespace wzforge
