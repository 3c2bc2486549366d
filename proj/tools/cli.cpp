#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "wzforge/catalog.hpp"

namespace wzforge::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int digits = 25;
    int jobs = 1;
    std::string format = "json-lines";
    std::string catalog;

    std::string id;
    std::string term;
    std::string var = "k";
    std::string out_file;
    std::string pair;
    std::string F_file;
    std::string G_file;
    std::string n = "0";
    std::string k = "0";
    std::string diff;
    int order = 0;
    std::string name;
    std::string args;
};

class Emitter {
public:
    Emitter(std::ostream& out, bool json) : out_(out), json_(json) {}
    bool json() const { return json_; }
    void record(const Json& j, const std::string& text) {
        if (json_)
            out_ << j.dump() << "\n";
        else
            out_ << text << "\n";
        out_.flush();
    }

private:
    std::ostream& out_;
    bool json_;
};

std::string sci(double x) {
    std::ostringstream s;
    s << std::setprecision(3) << std::scientific << x;
    return s.str();
}

std::string approx_text(const ApproxValue& v, int digits) {
    std::string s = v.value.re.str(digits);
    if (!v.value.im.is_zero()) s += (v.value.im.sign() < 0 ? " - " : " + ") + abs(v.value.im).str(digits) + " i";
    return s + " +- " + sci(v.error_bound);
}

HyperTerm read_term(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read term file " + path);
    try {
        return parse_term(Json::parse(in));
    } catch (const std::exception& e) {
        throw UsageError("malformed term file " + path + ": " + e.what());
    }
}

BigRational read_rational(const std::string& text, const char* what) {
    try {
        return parse_rational(text);
    } catch (const std::exception&) {
        throw UsageError(std::string("bad rational for ") + what + ": " + text);
    }
}

std::vector<int> read_ints(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(part, &used));
            if (used != part.size()) throw UsageError("");
        } catch (const std::exception&) {
            throw UsageError("bad integer argument: " + part);
        }
    }
    return out;
}

class Runner {
public:
    Runner(const Options& o, std::ostream& out, std::ostream& err)
        : o_(o), emit_(out, o.format == "json-lines"), err_(err) {}

    const Catalog& catalog() {
        if (o_.catalog.empty()) return Catalog::bundled();
        if (!own_) {
            try {
                own_ = Catalog::load(o_.catalog);
            } catch (const std::exception& e) {
                throw UsageError("cannot load catalog " + o_.catalog + ": " + e.what());
            }
        }
        return *own_;
    }

    void check_verify_digits() const {
        if (o_.digits > kMaxVerifyDigits)
            throw UsageError("--digits above " + std::to_string(kMaxVerifyDigits) + " is not supported for verification");
    }

    static std::string report_text(const VerificationReport& r) {
        std::string s = r.id + " " + (r.passed ? "PASS" : "FAIL") + " symbolic=" + status_name(r.symbolic_status) +
                        " diff=" + sci(r.abs_diff) + " bound=" + sci(r.numeric_lhs.error_bound + r.numeric_rhs.error_bound);
        if (r.resolution) s += " resolution=\"" + *r.resolution + "\"";
        for (auto& c : r.side_checks) s += " " + c.name + "=" + (c.passed ? "pass" : "fail");
        if (!r.error.empty()) s += " error=\"" + r.error + "\"";
        return s;
    }

    int verify() {
        check_verify_digits();
        const Catalog& cat = catalog();
        cat.entry(o_.id);
        err_ << "verifying " << o_.id << " at " << o_.digits << " digits\n";
        VerificationReport r = verify_theorem(cat, o_.id, o_.digits);
        emit_.record(r.to_json(), report_text(r));
        return r.passed ? kOk : kFailed;
    }

    int verify_all_() {
        check_verify_digits();
        const Catalog& cat = catalog();
        const std::size_t total = cat.entries().size();
        std::size_t done = 0;
        err_ << "verifying " << total << " entries at " << o_.digits << " digits with " << o_.jobs << " jobs\n";
        auto reports = verify_all(cat, o_.digits, o_.jobs, [&](const VerificationReport& r) {
            err_ << "[" << ++done << "/" << total << "] " << r.id << " " << (r.passed ? "ok" : "FAIL") << " ("
                 << std::fixed << std::setprecision(2) << r.elapsed << " s)\n";
            err_.unsetf(std::ios::floatfield);
        });
        bool engine_error = false;
        for (auto& r : reports) {
            emit_.record(r.to_json(), report_text(r));
            engine_error |= !r.error.empty();
        }
        VerificationSummary s = summarize(cat, reports);
        emit_.record(Json{{"summary",
                           {{"entries", s.entries},
                            {"passed", s.passed},
                            {"failed", s.failed},
                            {"symbolic_verified", s.symbolic_verified}}}},
                     "summary: " + std::to_string(s.passed) + "/" + std::to_string(s.entries) + " passed, " +
                         std::to_string(s.symbolic_verified) + " pairs certified");
        if (engine_error) return kEngine;
        return s.failed == 0 ? kOk : kFailed;
    }

    int mate() {
        if (o_.var != "k") throw UsageError("mate: only --var k is supported");
        HyperTerm F = read_term(o_.term);
        err_ << "computing the mate of " << o_.term << "\n";
        Json j;
        bool ok = false;
        std::string text;
        try {
            WZMate m = wz_mate(F);
            j = certificate_json(o_.term, m.cert);
            j["G"] = serialize_term(m.G);
            ok = m.cert.verified;
            text = std::string(ok ? "verified" : "NOT verified") + " mate_ratio = (" + m.cert.mate_ratio.num().str() +
                   ") / (" + m.cert.mate_ratio.den().str() + ")";
        } catch (const MathError& e) {
            j = Json{{"pair_id", o_.term}, {"verified", false}, {"error", e.what()}};
            text = std::string("no mate: ") + e.what();
        }
        if (!o_.out_file.empty()) {
            std::ofstream f(o_.out_file);
            if (!f) throw UsageError("cannot write " + o_.out_file);
            f << j.dump(1) << "\n";
        }
        emit_.record(j, text);
        return ok ? kOk : kFailed;
    }

    int certify() {
        std::string label;
        HyperTerm F, G;
        if (!o_.pair.empty()) {
            if (!o_.F_file.empty() || !o_.G_file.empty()) throw UsageError("certify: give --pair or --F/--G, not both");
            const Catalog& cat = catalog();
            F = cat.pair(o_.pair).F;
            G = cat.mate(o_.pair).G;
            label = o_.pair;
        } else {
            if (o_.F_file.empty() || o_.G_file.empty()) throw UsageError("certify: --F and --G are required");
            F = read_term(o_.F_file);
            G = read_term(o_.G_file);
            label = o_.F_file;
        }
        WZCertificate c;
        Json j;
        try {
            c = verify_wz_pair(F, G);
            j = certificate_json(label, c);
        } catch (const MathError& e) {
            j = Json{{"pair_id", label}, {"verified", false}, {"error", e.what()}};
        }
        emit_.record(j, label + (c.verified ? " verified" : " NOT verified"));
        return c.verified ? kOk : kFailed;
    }

    int eval() {
        HyperTerm t = read_term(o_.term);
        BigRational n = read_rational(o_.n, "--n"), k = read_rational(o_.k, "--k");
        if (o_.order < 0) throw UsageError("--order must be nonnegative");
        if (o_.order > 0 && o_.diff.empty()) throw UsageError("--order needs --diff");
        if (o_.digits > precision_cap()) throw SeriesError("requested digits exceed the precision cap");
        const Precision prec{o_.digits, 20};
        PrecisionScope scope(prec.bits());
        TermValue v = o_.order == 0 ? eval_term(t, n, k, prec)
                                    : derivative_value(t, o_.diff, o_.order, Real(n), Real(k), prec);
        ApproxValue a{v.value, v.error_bound};
        Json j{{"n", to_string(n)}, {"k", to_string(k)}};
        if (o_.order > 0) j["diff"] = o_.diff, j["order"] = o_.order;
        j["value"] = approx_json(a, o_.digits);
        emit_.record(j, approx_text(a, o_.digits));
        return kOk;
    }

    int constant() {
        std::vector<int> a = o_.args.empty() ? std::vector<int>{} : read_ints(o_.args);
        std::size_t want = o_.name == "dzeta" ? 2 : (o_.name == "zeta" || o_.name == "L3") ? 1 : 0;
        if (a.size() != want)
            throw UsageError("const " + o_.name + " takes " + std::to_string(want) + " argument(s)");
        if (o_.digits > precision_cap()) throw SeriesError("requested digits exceed the precision cap");
        const Precision prec{o_.digits, 20};
        PrecisionScope scope(prec.bits());
        ApproxValue v;
        if (o_.name == "pi")
            v = {Complex(pi()), 0.0};
        else if (o_.name == "log2")
            v = {Complex(log2_const()), 0.0};
        else if (o_.name == "zeta")
            v = zeta(a[0], prec);
        else if (o_.name == "dzeta")
            v = double_zeta(a[0], a[1], prec);
        else
            v = dirichlet_L_minus3(a[0], prec);
        if (v.error_bound == 0.0) v.error_bound = std::pow(10.0, -prec.working_digits());
        Json j{{"name", o_.name}, {"args", a}, {"digits", o_.digits}, {"value", approx_json(v, o_.digits)}};
        emit_.record(j, approx_text(v, o_.digits));
        return kOk;
    }

    int list() {
        for (const auto& e : catalog().entries()) {
            Json j{{"id", e.id},
                   {"group", e.group},
                   {"derivative_order", e.derivative_order},
                   {"start", e.start},
                   {"pair", e.pair ? Json(*e.pair) : Json(nullptr)},
                   {"flagged", e.flagged},
                   {"rhs", e.rhs_text}};
            emit_.record(j, e.id + "  m=" + std::to_string(e.derivative_order) + "  " + e.rhs_text);
        }
        return kOk;
    }

private:
    const Options& o_;
    Emitter emit_;
    std::ostream& err_;
    std::optional<Catalog> own_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app("Certify WZ pairs and verify derivative-sum identities", "wzforge");
    app.fallthrough();
    app.require_subcommand(1, 1);
    app.add_option("--digits", o.digits, "target decimal digits")->check(CLI::Range(1, 100000));
    app.add_option("--jobs", o.jobs, "verification work pool size")->check(CLI::Range(1, 256));
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json-lines"}));
    app.add_option("--catalog", o.catalog, "catalog file (default: the bundled catalog)");

    auto* verify = app.add_subcommand("verify", "verify one catalog entry");
    verify->add_option("--id", o.id, "entry id")->required();
    app.add_subcommand("verify-all", "verify every catalog entry");
    auto* mate = app.add_subcommand("mate", "compute the WZ mate of a term");
    mate->add_option("--term", o.term, "term file")->required();
    mate->add_option("--var", o.var, "telescoping variable");
    mate->add_option("--out", o.out_file, "also write the certificate to this file");
    auto* certify = app.add_subcommand("certify", "check a WZ pair");
    certify->add_option("--pair", o.pair, "catalog pair id");
    certify->add_option("--F", o.F_file, "term file for F");
    certify->add_option("--G", o.G_file, "term file for G");
    auto* eval = app.add_subcommand("eval", "evaluate a term or a parameter derivative");
    eval->add_option("--term", o.term, "term file")->required();
    eval->add_option("--n", o.n, "value of n (rational)");
    eval->add_option("--k", o.k, "value of k (rational)");
    eval->add_option("--diff", o.diff, "differentiation variable: n, k or a parameter");
    eval->add_option("--order", o.order, "derivative order");
    auto* cnst = app.add_subcommand("const", "evaluate a constant");
    cnst->add_option("--name", o.name, "constant")->required()->check(CLI::IsMember({"pi", "log2", "zeta", "dzeta", "L3"}));
    cnst->add_option("--args", o.args, "integer arguments, comma separated");
    app.add_subcommand("list", "list catalog entries");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kUsage;
    }

    Runner r(o, out, err);
    try {
        if (verify->parsed()) return r.verify();
        if (app.got_subcommand("verify-all")) return r.verify_all_();
        if (mate->parsed()) return r.mate();
        if (certify->parsed()) return r.certify();
        if (eval->parsed()) return r.eval();
        if (cnst->parsed()) return r.constant();
        return r.list();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UnknownIdError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SeriesError& e) {
        err << "engine error: " << e.what() << "\n";
        return kEngine;
    } catch (const MathError& e) {
        err << "engine error: " << e.what() << "\n";
        return kEngine;
    } catch (const std::exception& e) {
        err << "engine error: " << e.what() << "\n";
        return kEngine;
    }
}

}  // namespace wzforge::cli
