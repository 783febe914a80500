// gmajor: order checks, canonical representatives, structural verifications
// and order-preserving-function suites for reflection-group majorization.
//
// Exit codes: 0 holds/pass, 1 fails, 2 input error, 3 internal oracle
// disagreement (bug sentinel).

#include "gmajor/cone.hpp"
#include "gmajor/group.hpp"
#include "gmajor/opf.hpp"
#include "gmajor/structure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

using json = nlohmann::ordered_json;
using namespace gmajor;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GroupSpec parse_group(const std::string& name)
{
    auto tail_dim = [&](std::size_t prefix) {
        std::string d = name.substr(prefix);
        if (d.empty() || d.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("malformed group name: " + name);
        int n = std::stoi(d);
        if (n < 1)
            throw InputError("group dimension must be positive: " + name);
        return n;
    };
    if (name.rfind("Z2^", 0) == 0)
        return {Family::SignChangeZ2n, tail_dim(3)};
    if (name.rfind("Z2coord", 0) == 0)
        return {Family::Z2CoordQuotient, tail_dim(7)};
    if (name.rfind("Z2sum", 0) == 0)
        return {Family::Z2SumQuotient, tail_dim(5)};
    if (name.size() > 1 && (name[0] == 'S' || name[0] == 'B' || name[0] == 'D')) {
        Family f = name[0] == 'S'   ? Family::SymmetricA
                   : name[0] == 'B' ? Family::HyperoctahedralB
                                    : Family::DemihyperoctahedralD;
        return {f, tail_dim(1)};
    }
    throw InputError("unknown group name: " + name);
}

Vec parse_vector(const std::string& csv)
{
    Vec v;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        std::string tok = csv.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos);
        try {
            v.push_back(parse_rational(tok));
        } catch (const std::exception& e) {
            throw InputError(std::string("bad vector component: ") + e.what());
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return v;
}

ExtensionTriple parse_triple(const std::string& name)
{
    auto c1 = name.find(':');
    auto c2 = name.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw InputError("triple must be G:N:H, e.g. B3:D3:Z2coord");
    GroupSpec g = parse_group(name.substr(0, c1));
    GroupSpec n = parse_group(name.substr(c1 + 1, c2 - c1 - 1));
    std::string hs = name.substr(c2 + 1);
    // The quotient part may omit the dimension; it inherits G's.
    if (hs == "Z2coord" || hs == "Z2sum")
        hs += std::to_string(g.dim);
    GroupSpec h = parse_group(hs);
    PhiVariant phi = PhiVariant::None;
    if (h.family == Family::Z2CoordQuotient)
        phi = PhiVariant::Coordinate;
    else if (h.family == Family::Z2SumQuotient)
        phi = PhiVariant::SumHyperplane;
    ExtensionTriple t{g, n, h, phi};
    try {
        validate_triple(t);
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
    return t;
}

std::uint64_t group_guard()
{
    if (const char* env = std::getenv("GMAJOR_GROUP_GUARD")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            return v;
        throw InputError("GMAJOR_GROUP_GUARD must be a positive integer");
    }
    return kDefaultGroupGuard;
}

json rat_json(const Rat& x) { return to_string(x); }

json vec_json(const Vec& v)
{
    json a = json::array();
    for (const Rat& x : v)
        a.push_back(rat_json(x));
    return a;
}

json element_json(const GroupElement& g)
{
    json j;
    if (g.sum_reflection) {
        j["kind"] = "sum_reflection";
        return j;
    }
    j["kind"] = "signed_permutation";
    json perm = json::array(), signs = json::array();
    for (int p : g.perm)
        perm.push_back(p + 1);
    for (int s : g.signs)
        signs.push_back(s);
    j["perm"] = perm;
    j["signs"] = signs;
    return j;
}

json verdict_json(const OrderVerdict& v)
{
    json j;
    j["holds"] = v.holds;
    if (v.holds) {
        json coeffs = json::array();
        for (const Rat& c : v.coefficients)
            coeffs.push_back(rat_json(c));
        j["coefficients"] = coeffs;
        if (!v.support_points.empty()) {
            json pts = json::array();
            for (const Vec& p : v.support_points)
                pts.push_back(vec_json(p));
            j["support_points"] = pts;
        }
    } else if (v.violated) {
        j["violated"] = {{"index", v.violated->index},
                         {"label", v.violated->label},
                         {"lhs", rat_json(v.violated->lhs)},
                         {"rhs", rat_json(v.violated->rhs)}};
    } else if (v.separating) {
        j["separating"] = vec_json(*v.separating);
    }
    return j;
}

json opf_report_json(const OpfReport& r)
{
    json j;
    j["suite"] = r.suite;
    j["function"] = r.function;
    j["group"] = r.group;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["tolerance"] = r.tolerance;
    j["worst_margin"] = r.worst_margin;
    j["pass"] = r.pass;
    json viol = json::array();
    for (const auto& v : r.violations) {
        json p = json::array();
        for (double c : v.point)
            p.push_back(c);
        viol.push_back({{"point", p}, {"detail", v.detail}, {"value", v.value}});
    }
    j["violations"] = viol;
    json exact = json::array();
    for (const auto& v : r.exact_violations)
        exact.push_back({{"point", vec_json(v.point)},
                         {"root", v.root},
                         {"value", rat_json(v.value)}});
    j["exact_violations"] = exact;
    return j;
}

json structure_report_json(const StructureReport& r)
{
    json j;
    j["subject"] = r.subject;
    j["triple"] = r.triple;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["ok"] = r.ok;
    j["symbolic_inclusion"] = r.symbolic_inclusion;
    json viol = json::array();
    for (const Vec& v : r.violations)
        viol.push_back(vec_json(v));
    j["violations"] = viol;
    return j;
}

void emit(const json& body, const std::string& format)
{
    if (format == "json") {
        json out;
        out["schema"] = "gmajor/1";
        out.update(body);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << body.dump(2) << "\n";
    }
}

/// Independent order oracle used by --oracle: exact LP hull membership,
/// with the symmetric family reduced to its essential part plus the total
/// sum (the closed-form system is lower weak majorization).
bool oracle_order(const GroupSpec& spec, const Vec& x, const Vec& y, std::uint64_t guard)
{
    if (spec.family == Family::SymmetricA)
        return vec_sum(y) <= vec_sum(x) && essential_order(spec, x, y, guard).holds;
    return hull_membership(spec, x, y, guard).holds;
}

int cmd_check(const std::string& group, const std::string& xs, const std::string& ys,
              bool oracle, const std::string& format)
{
    GroupSpec spec = parse_group(group);
    Vec x = parse_vector(xs), y = parse_vector(ys);
    if (x.size() != static_cast<std::size_t>(spec.dim) || y.size() != x.size())
        throw InputError("vector dimension does not match the group");
    OrderVerdict v = cone_order_check(spec, x, y);

    json body;
    body["command"] = "check";
    body["group"] = group;
    body["x"] = vec_json(x);
    body["y"] = vec_json(y);
    body["verdict"] = verdict_json(v);

    int code = v.holds ? 0 : 1;
    if (oracle) {
        bool hull = oracle_order(spec, x, y, group_guard());
        body["oracle"] = {{"holds", hull}, {"agrees", hull == v.holds}};
        if (hull != v.holds)
            code = 3;
    }
    emit(body, format);
    return code;
}

int cmd_rep(const std::string& group, const std::string& xs, const std::string& format)
{
    GroupSpec spec = parse_group(group);
    Vec x = parse_vector(xs);
    if (x.size() != static_cast<std::size_t>(spec.dim))
        throw InputError("vector dimension does not match the group");
    Representative r = representative(spec, x);
    json body;
    body["command"] = "rep";
    body["group"] = group;
    body["x"] = vec_json(x);
    body["representative"] = vec_json(r.tilde_x);
    body["witness"] = element_json(r.witness);
    emit(body, format);
    return 0;
}

int cmd_verify(const std::string& subject, const std::string& triple_name,
               std::uint64_t samples, std::uint64_t seed, const std::string& format)
{
    ExtensionTriple t = parse_triple(triple_name);
    std::uint64_t guard = group_guard();
    json body;
    body["command"] = "verify";
    body["subject"] = subject;
    bool ok = false;
    if (subject == "region-intersection") {
        StructureReport r = verify_region_intersection(t, samples, seed);
        body["report"] = structure_report_json(r);
        ok = r.ok;
    } else if (subject == "refinement") {
        StructureReport r = verify_refinement(t, samples, seed, guard);
        body["report"] = structure_report_json(r);
        ok = r.ok;
    } else if (subject == "dual-sum") {
        StructureReport r = dual_sum_check(t, samples, seed);
        body["report"] = structure_report_json(r);
        ok = r.ok;
    } else if (subject == "union-gap") {
        auto w = union_convexity_gap(t, samples, seed);
        json rep;
        rep["triple"] = t.name();
        rep["found"] = w.has_value();
        if (w) {
            rep["witness"] = vec_json(w->v);
            json coeffs = json::array();
            for (const Rat& c : w->g_coefficients)
                coeffs.push_back(rat_json(c));
            rep["g_coefficients"] = coeffs;
            rep["separator_n"] = vec_json(w->separator_n);
            rep["separator_h"] = vec_json(w->separator_h);
        }
        body["report"] = rep;
        ok = w.has_value();
    } else {
        throw InputError("unknown verify subject: " + subject);
    }
    body["ok"] = ok;
    emit(body, format);
    return ok ? 0 : 1;
}

int cmd_opf(const std::string& fn, const std::string& group, const std::string& suite,
            std::uint64_t trials, std::uint64_t seed, double tol_override,
            const std::string& format)
{
    GroupSpec spec = parse_group(group);
    std::uint64_t guard = group_guard();
    json body;
    body["command"] = "opf";
    body["function"] = fn;
    body["group"] = group;
    bool ok = false;
    if (suite == "family-region") {
        RegionReport r = family_region_check(spec, Rat(-2), Rat(2), Rat(1, 4), seed, guard);
        json pts = json::array();
        ok = true;
        for (const auto& p : r.points) {
            pts.push_back({{"a", rat_json(p.a)}, {"b", rat_json(p.b)},
                           {"preserving", p.preserving}});
        }
        body["report"] = {{"group", r.group}, {"seed", r.seed}, {"points", pts}};
    } else {
        ScalarFunction f = [&] {
            try {
                return function_from_name(fn, spec.dim);
            } catch (const std::exception& e) {
                throw InputError(e.what());
            }
        }();
        OpfReport r;
        if (suite == "invariance") {
            r = invariance_check(f, spec, trials, seed,
                                 tol_override > 0 ? tol_override : 1e-9, guard);
        } else if (suite == "gradient") {
            std::vector<Vec> probes;
            if (fn == "paper-counterexample-n4")
                probes.push_back({Rat(1), Rat(1), Rat(1), Rat(1, 4)});
            r = gradient_root_condition(f, spec, trials, seed,
                                        tol_override > 0 ? tol_override : 1e-7, 1.0,
                                        0.1, probes);
        } else if (suite == "monotonic") {
            r = monotonicity_oracle(f, spec, trials, seed,
                                    tol_override > 0 ? tol_override : 1e-7, 1,
                                    PairStrategy::OrbitMix, guard);
        } else {
            throw InputError("unknown opf suite: " + suite);
        }
        body["report"] = opf_report_json(r);
        ok = r.pass;
    }
    body["ok"] = ok;
    emit(body, format);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"reflection-group majorization toolkit"};
    app.require_subcommand(1);

    std::string group, xs, ys, format = "json";
    bool oracle = false;
    auto* check = app.add_subcommand("check", "decide y <=_G x with certificates");
    check->add_option("--group", group)->required();
    check->add_option("--x", xs)->required();
    check->add_option("--y", ys)->required();
    check->add_flag("--oracle", oracle, "cross-check against the exact hull oracle");
    check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    std::string rgroup, rxs, rformat = "json";
    auto* rep = app.add_subcommand("rep", "canonical representative and witness");
    rep->add_option("--group", rgroup)->required();
    rep->add_option("--x", rxs)->required();
    rep->add_option("--format", rformat)->check(CLI::IsMember({"text", "json"}));

    std::string subject, triple, vformat = "json";
    std::uint64_t vsamples = 500, vseed = 7;
    auto* verify = app.add_subcommand("verify", "structural verifications on a triple");
    verify->add_option("subject", subject)->required();
    verify->add_option("--triple", triple)->required();
    verify->add_option("--samples", vsamples);
    verify->add_option("--seed", vseed);
    verify->add_option("--format", vformat)->check(CLI::IsMember({"text", "json"}));

    std::string fn, ogroup, suite, oformat = "json";
    std::uint64_t trials = 200, oseed = 7;
    double tol = -1.0;
    auto* opf = app.add_subcommand("opf", "order-preserving-function suites");
    opf->add_option("--fn", fn)->required();
    opf->add_option("--group", ogroup)->required();
    opf->add_option("--suite", suite)->required();
    opf->add_option("--trials", trials);
    opf->add_option("--samples", trials);
    opf->add_option("--seed", oseed);
    opf->add_option("--tol", tol);
    opf->add_option("--format", oformat)->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*check)
            return cmd_check(group, xs, ys, oracle, format);
        if (*rep)
            return cmd_rep(rgroup, rxs, rformat);
        if (*verify)
            return cmd_verify(subject, triple, vsamples, vseed, vformat);
        if (*opf)
            return cmd_opf(fn, ogroup, suite, trials, oseed, tol, oformat);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GroupTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
