#include "wzforge/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

namespace wzforge {

namespace {

long as_long(const Json& v) {
    if (v.is_number_integer()) return v.get<long>();
    return std::stol(v.get<std::string>());
}

std::string str_or(const Json& j, const char* key, const std::string& dflt = "") {
    return j.contains(key) ? j.at(key).get<std::string>() : dflt;
}

ApproxValue as_approx(const SeriesResult& r) { return {r.value, r.error_bound}; }

double distance(const ApproxValue& a, const ApproxValue& b) {
    PrecisionScope scope(std::max(a.value.re.bits(), b.value.re.bits()));
    return abs(a.value - b.value).to_double();
}

SideCheck compare(std::string name, const ApproxValue& lhs, const ApproxValue& rhs) {
    SideCheck c{std::move(name), lhs, rhs, distance(lhs, rhs), false};
    c.passed = c.abs_diff <= lhs.error_bound + rhs.error_bound;
    return c;
}

ApproxValue lhs_value(const TheoremEntry& e, int order, int digits) {
    if (!e.weight.empty()) {
        if (order != 0) throw MathError("derivatives of weighted summands are not supported");
        return as_approx(sum_to_tolerance(weighted_series(e.summand, e.weight, e.start, digits)));
    }
    return as_approx(sum_to_tolerance(term_series(e.summand, Var::k, 0, e.start, digits, "k", order)));
}

ApproxValue rhs_value(const ConstantExpr& rhs, int digits) {
    const Precision prec{digits, 20};
    PrecisionScope scope(prec.bits());
    return const_expr_eval(rhs, prec);
}

}  // namespace

// ------------------------------------------------------------------ loading

struct Catalog::MateCache {
    struct Slot {
        std::once_flag once;
        std::optional<WZMate> mate;
        std::string error;
    };
    std::mutex m;
    std::map<std::string, std::unique_ptr<Slot>> slots;

    Slot& slot(const std::string& id) {
        std::lock_guard<std::mutex> lock(m);
        auto& s = slots[id];
        if (!s) s = std::make_unique<Slot>();
        return *s;
    }
};

Catalog Catalog::from_json(const Json& doc) {
    Catalog c;
    c.mates_ = std::make_shared<MateCache>();
    for (auto& p : doc.at("pairs"))
        c.pairs_.push_back({p.at("id").get<std::string>(), parse_term(p.at("F")), str_or(p, "provenance")});
    for (auto& j : doc.at("entries")) {
        TheoremEntry e;
        e.id = j.at("id").get<std::string>();
        e.group = str_or(j, "group", e.id);
        e.summand = parse_term(j.at("summand"));
        e.derivative_order = static_cast<int>(as_long(j.at("derivative_order")));
        if (e.derivative_order < 0 || e.derivative_order > kMaxDerivativeOrder)
            throw MathError("derivative order out of range in " + e.id);
        e.start = as_long(j.at("start"));
        if (e.start < e.summand.domain.k0) throw MathError("start index outside the summand domain in " + e.id);
        e.rhs = ConstantExpr::from_json(j.at("rhs"));
        e.rhs_text = str_or(j, "rhs_text", e.rhs.str());
        e.provenance = str_or(j, "provenance");
        if (j.contains("pair")) {
            e.pair = j.at("pair").get<std::string>();
            e.wz_term = c.pair(*e.pair).F;
        }
        if (j.contains("weight")) e.weight = parse_weight(j.at("weight"));
        e.flagged = j.value("flagged", false);
        if (j.contains("candidates"))
            for (auto& k : j.at("candidates")) {
                RhsCandidate rc{k.at("label").get<std::string>(), ConstantExpr::from_json(k.at("rhs")), str_or(k, "rhs_text"),
                                std::nullopt};
                if (k.contains("derivative_order")) rc.derivative_order = static_cast<int>(as_long(k.at("derivative_order")));
                e.candidates.push_back(std::move(rc));
            }
        if (j.contains("boundary")) {
            BoundaryCheck b;
            const Json& bj = j.at("boundary");
            if (bj.contains("combination"))
                for (auto& [name, v] : bj.at("combination").items()) b.combination[name] = as_long(v);
            if (bj.contains("lhs_weight")) b.lhs_weight = parse_weight(bj.at("lhs_weight"));
            e.boundary = std::move(b);
        }
        c.entries_.push_back(std::move(e));
    }
    if (doc.contains("boundary"))
        for (auto& [name, b] : doc.at("boundary").items()) {
            BoundaryTerm t;
            t.term = parse_term(b.at("term"));
            t.scalar = b.contains("scalar") ? ConstantExpr::from_json(b.at("scalar")) : ConstantExpr::rational(1);
            t.variable = str_or(b, "variable", "n") == "k" ? Var::k : Var::n;
            t.start = b.contains("start") ? as_long(b.at("start")) : 0;
            t.provenance = str_or(b, "provenance");
            c.boundaries_[name] = std::move(t);
        }
    if (doc.contains("hsum"))
        for (auto& h : doc.at("hsum")) {
            HsumEntry s;
            s.id = h.at("id").get<std::string>();
            s.weight = parse_weight(h.at("weight"));
            s.start = as_long(h.at("start"));
            s.rhs = ConstantExpr::from_json(h.at("rhs"));
            s.rhs_text = str_or(h, "rhs_text");
            s.provenance = str_or(h, "provenance");
            s.compare_with = str_or(h, "compare_with");
            c.hsums_.push_back(std::move(s));
        }
    std::set<std::string> seen;
    for (auto& e : c.entries_)
        if (!seen.insert(e.id).second) throw MathError("duplicate catalog id " + e.id);
    return c;
}

Catalog Catalog::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open catalog " + path);
    return from_json(Json::parse(in));
}

const Catalog& Catalog::bundled() {
    static const Catalog c = load(std::string(WZFORGE_DATA_DIR) + "/catalog.json");
    return c;
}

const TheoremEntry& Catalog::entry(const std::string& id) const {
    for (auto& e : entries_)
        if (e.id == id) return e;
    throw UnknownIdError("unknown catalog id: " + id);
}

std::vector<std::string> Catalog::ids() const {
    std::vector<std::string> out;
    for (auto& e : entries_) out.push_back(e.id);
    return out;
}

const CatalogPair& Catalog::pair(const std::string& id) const {
    for (auto& p : pairs_)
        if (p.id == id) return p;
    throw UnknownIdError("unknown pair id: " + id);
}

const BoundaryTerm& Catalog::boundary(const std::string& pair_id) const {
    auto it = boundaries_.find(pair_id);
    if (it == boundaries_.end()) throw UnknownIdError("no boundary term for pair " + pair_id);
    return it->second;
}

const WZMate& Catalog::mate(const std::string& pair_id) const {
    MateCache::Slot& s = mates_->slot(pair_id);
    std::call_once(s.once, [&] {
        try {
            s.mate = wz_mate(pair(pair_id).F);
        } catch (const std::exception& ex) {
            s.error = ex.what();
        }
    });
    if (!s.mate) throw MathError("no mate for pair " + pair_id + ": " + s.error);
    return *s.mate;
}

void Catalog::set_rhs(const std::string& id, const ConstantExpr& rhs) {
    for (auto& e : entries_)
        if (e.id == id) {
            e.rhs = rhs;
            e.rhs_text = rhs.str();
            e.flagged = false;
            e.candidates.clear();
            return;
        }
    throw UnknownIdError("unknown catalog id: " + id);
}

const TheoremEntry& theorem_spec(const std::string& id) { return Catalog::bundled().entry(id); }

// ------------------------------------------------------------- verification

std::string status_name(SymbolicStatus s) {
    switch (s) {
        case SymbolicStatus::verified: return "verified";
        case SymbolicStatus::failed: return "failed";
        default: return "not_applicable";
    }
}

SeriesJob boundary_series(const BoundaryTerm& g, const std::map<std::string, long>& combination, int digits) {
    SeriesJob job;
    job.start = g.start;
    job.target_digits = digits;
    job.ratio_probe = probe_quotient(g.term, g.variable, 0);
    job.derivative_order = combination.empty() ? 0 : 1;
    const bool on_n = g.variable == Var::n;
    job.term = [g, combination, on_n](long j, const Precision& prec) -> TermValue {
        PrecisionScope scope(prec.bits());
        Real x(j), o(0);
        const Real& n = on_n ? x : o;
        const Real& k = on_n ? o : x;
        TermValue v;
        if (combination.empty()) {
            v = eval_term(g.term, n, k, prec);
        } else {
            for (auto& [name, c] : combination) {
                TermValue d = derivative_value(g.term, name, 1, n, k, prec);
                v.value += d.value * Real(c);
                v.error_bound += d.error_bound * static_cast<double>(std::abs(c));
            }
        }
        ApproxValue s = const_expr_eval(g.scalar, prec);
        // the real part carries the coefficient extraction
        Complex w = v.value * s.value;
        return {Complex(w.re), v.error_bound * abs(s.value).to_double() * 2};
    };
    return job;
}

VerificationReport verify_theorem(const Catalog& cat, const std::string& id, int digits) {
    const auto t0 = std::chrono::steady_clock::now();
    const TheoremEntry& e = cat.entry(id);
    if (digits < 1 || digits > kMaxVerifyDigits) throw MathError("digits must lie in 1.." + std::to_string(kMaxVerifyDigits));
    VerificationReport r;
    r.id = e.id;
    r.digits = digits;
    r.rhs_text = e.rhs_text;

    if (e.pair) {
        try {
            r.symbolic_status = cat.mate(*e.pair).cert.verified ? SymbolicStatus::verified : SymbolicStatus::failed;
        } catch (const MathError& ex) {
            r.symbolic_status = SymbolicStatus::failed;
            r.error = ex.what();
        }
    }

    ConstantExpr rhs = e.rhs;
    int order = e.derivative_order;
    int work = digits;
    std::map<int, ApproxValue> lhs_by_order;
    auto lhs_at = [&](int m) -> const ApproxValue& {
        auto it = lhs_by_order.find(m);
        if (it == lhs_by_order.end()) it = lhs_by_order.emplace(m, lhs_value(e, m, work)).first;
        return it->second;
    };

    if (e.flagged && !e.candidates.empty()) {
        work = std::max(digits, kResolutionDigits);
        for (auto& c : e.candidates) {
            const int m = c.derivative_order.value_or(e.derivative_order);
            SideCheck s = compare(c.label, lhs_at(m), rhs_value(c.rhs, work));
            r.candidates.push_back({c.label, s.abs_diff, s.passed});
            if (s.passed && !r.resolution) {
                r.resolution = c.label;
                rhs = c.rhs;
                order = m;
                r.rhs_text = c.rhs_text.empty() ? c.rhs.str() : c.rhs_text;
            }
        }
    }

    r.numeric_lhs = lhs_at(order);
    r.numeric_rhs = rhs_value(rhs, work);
    r.abs_diff = distance(r.numeric_lhs, r.numeric_rhs);
    bool ok = r.abs_diff <= r.numeric_lhs.error_bound + r.numeric_rhs.error_bound;
    if (e.flagged && !e.candidates.empty() && !r.resolution) ok = false;

    if (e.boundary) {
        const BoundaryTerm& g = cat.boundary(e.pair.value_or(""));
        ApproxValue x = e.boundary->lhs_weight.empty()
                            ? r.numeric_lhs
                            : as_approx(sum_to_tolerance(weighted_series(e.summand, e.boundary->lhs_weight, e.start, work)));
        ApproxValue y = as_approx(sum_to_tolerance(boundary_series(g, e.boundary->combination, work)));
        r.side_checks.push_back(compare("boundary", x, y));
    }
    for (auto& h : cat.hsums())
        if (h.compare_with == e.id) {
            ApproxValue hv = as_approx(sum_harmonic_series(h.weight, h.start, work));
            r.side_checks.push_back(compare(h.id, r.numeric_lhs, hv));
        }
    for (auto& s : r.side_checks) ok = ok && s.passed;
    if (r.symbolic_status == SymbolicStatus::failed) ok = false;
    r.passed = ok;
    r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

VerificationReport verify_theorem(const std::string& id, int digits) {
    return verify_theorem(Catalog::bundled(), id, digits);
}

std::vector<VerificationReport> verify_all(const Catalog& cat, int digits, int parallelism,
                                           const std::function<void(const VerificationReport&)>& on_done) {
    std::vector<std::string> ids = cat.ids();
    std::sort(ids.begin(), ids.end());
    std::vector<VerificationReport> out(ids.size());
    std::atomic<std::size_t> next{0};
    std::mutex progress;
    auto worker = [&] {
        for (std::size_t i = next++; i < ids.size(); i = next++) {
            try {
                out[i] = verify_theorem(cat, ids[i], digits);
            } catch (const std::exception& ex) {
                VerificationReport r;
                r.id = ids[i];
                r.digits = digits;
                r.error = ex.what();
                out[i] = std::move(r);
            }
            if (on_done) {
                std::lock_guard<std::mutex> lock(progress);
                on_done(out[i]);
            }
        }
    };
    const int n = std::max(1, std::min<int>(parallelism, static_cast<int>(ids.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

VerificationSummary summarize(const Catalog& cat, const std::vector<VerificationReport>& reports) {
    VerificationSummary s;
    std::set<std::string> pairs;
    for (auto& r : reports) {
        ++s.entries;
        (r.passed ? s.passed : s.failed)++;
        if (r.symbolic_status == SymbolicStatus::verified) {
            const TheoremEntry& e = cat.entry(r.id);
            if (e.pair) pairs.insert(*e.pair);
        }
    }
    s.symbolic_verified = static_cast<int>(pairs.size());
    return s;
}

Json VerificationReport::to_json() const {
    const int shown = digits + 5;
    Json j;
    j["id"] = id;
    j["symbolic_status"] = status_name(symbolic_status);
    j["numeric_lhs"] = approx_json(numeric_lhs, shown);
    j["numeric_rhs"] = approx_json(numeric_rhs, shown);
    j["abs_diff"] = abs_diff;
    j["passed"] = passed;
    j["digits"] = digits;
    j["elapsed"] = elapsed;
    j["rhs"] = rhs_text;
    if (!candidates.empty()) {
        j["resolution"] = resolution ? Json(*resolution) : Json(nullptr);
        Json cs = Json::array();
        for (auto& c : candidates) cs.push_back({{"label", c.label}, {"abs_diff", c.abs_diff}, {"holds", c.holds}});
        j["candidates"] = cs;
    }
    if (!side_checks.empty()) {
        Json cs = Json::array();
        for (auto& c : side_checks)
            cs.push_back({{"name", c.name},
                          {"lhs", approx_json(c.lhs, shown)},
                          {"rhs", approx_json(c.rhs, shown)},
                          {"abs_diff", c.abs_diff},
                          {"passed", c.passed}});
        j["side_checks"] = cs;
    }
    if (!error.empty()) j["error"] = error;
    return j;
}

}  // namespace wzforge
