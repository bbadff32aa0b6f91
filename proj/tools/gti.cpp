// gti: command-line front end for the rank-2 generalized triangle inequalities.
//
// Exit codes: 0 success, 1 a negative verdict (outside point, redundant row,
// violation, non-billiard break), 2 bad input or unsupported configuration.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gti/io.hpp"

using namespace gti;
using io::json;

namespace {

enum class Format { json, text };

struct Options {
    Format format = Format::json;
    int m = 3;
    int n = 3;
    bool weak = false;
    bool full = false;
    std::string out;
    std::string system;
    std::string point;
    std::string path;
    std::string oracle = "apartment";
    std::uint64_t seed = 42;
    std::size_t count = 1000;
    std::string csv;
    std::string cone;
};

json read_json(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw usage_error("cannot open " + file);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw usage_error(file + ": " + e.what());
    }
}

void write_file(const std::string& file, const std::string& text) {
    std::ofstream os(file);
    if (!os) throw usage_error("cannot write " + file);
    os << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Writes to --out when given, otherwise stdout.
void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) std::cout << text;
    else write_file(o.out, text);
}

int cmd_inequalities(const Options& o) {
    if (o.n < 2) throw usage_error("n must be >= 2, got " + std::to_string(o.n));
    auto sys = o.weak ? enumerate_Bn_weak(o.m, o.n) : enumerate_Bn(o.m, o.n);
    // The file names the set, not the enumeration route; the summary reports the route.
    sys.provenance = Provenance::Bn;
    std::size_t even = 0, odd = 0;
    for (const auto& f : sys.functionals) (f.parity() == 0 ? even : odd) += 1;
    const json file = io::system_json(sys);
    if (!o.out.empty()) write_file(o.out, dump(file));
    if (o.format == Format::json) {
        json summary = {{"m", o.m}, {"n", o.n}, {"set", o.weak ? "weak" : "full"}, {"count", sys.size()},
                        {"parity0", even}, {"parity1", odd}};
        if (o.out.empty()) summary["system"] = file;
        else summary["file"] = o.out;
        std::cout << dump(summary);
    } else {
        std::cout << "m=" << o.m << " n=" << o.n << " set=" << (o.weak ? "weak" : "full") << "\n"
                  << sys.size() << " functionals (parity 0: " << even << ", parity 1: " << odd << ")\n";
        if (o.out.empty())
            for (const auto& f : sys.functionals) std::cout << "  " << f.to_string() << " <= 0\n";
        else
            std::cout << "written to " << o.out << "\n";
    }
    return 0;
}

int cmd_check(const Options& o) {
    auto sys = io::system_from_json(read_json(o.system));
    auto [m, sides] = io::point_from_json(read_json(o.point));
    if (m != sys.m) throw usage_error("point m=" + std::to_string(m) + " does not match system m=" + std::to_string(sys.m));
    if (static_cast<int>(sides.size()) != sys.n)
        throw usage_error("point has " + std::to_string(sides.size()) + " sides, system expects " + std::to_string(sys.n));
    auto cone = build_cone(sys);
    auto mem = member(cone, sides);
    if (o.format == Format::json) {
        emit(o, dump(io::membership_json(cone, mem)));
    } else {
        std::ostringstream os;
        os << to_string(mem.status) << "\n";
        for (std::size_t i = 0; i < mem.values.size(); ++i) {
            const char* tag = std::find(mem.violated.begin(), mem.violated.end(), i) != mem.violated.end() ? "violated"
                              : std::find(mem.active.begin(), mem.active.end(), i) != mem.active.end() ? "active"
                                                                                                        : "";
            os << "  " << cone.rows[i].label << "  " << io::text_value(mem.values[i]) << "  " << tag << "\n";
        }
        emit(o, os.str());
    }
    return mem.status == Membership::Status::outside ? 1 : 0;
}

int cmd_irredundant(const Options& o) {
    auto sys = io::system_from_json(read_json(o.system));
    auto cone = build_cone(sys);
    if (!o.cone.empty()) write_file(o.cone, dump(io::cone_json(cone)));
    std::vector<Irredundancy> res;
    for (std::size_t i : cone.functional_rows()) res.push_back(irredundant(cone, i));
    bool all = true;
    for (const auto& r : res) all = all && r.irredundant;
    if (o.format == Format::json) {
        json rows = json::array();
        for (const auto& r : res) rows.push_back(io::irredundancy_json(cone, r));
        emit(o, dump({{"m", sys.m}, {"n", sys.n}, {"allIrredundant", all}, {"rows", rows}}));
    } else {
        std::ostringstream os;
        std::size_t good = 0;
        for (const auto& r : res) {
            good += r.irredundant;
            os << "  " << cone.rows[r.row].label << "  " << (r.irredundant ? "irredundant" : "redundant") << "\n";
        }
        os << good << "/" << res.size() << " irredundant\n";
        emit(o, os.str());
    }
    return all ? 0 : 1;
}

int cmd_sample(const Options& o) {
    if (o.count < 1) throw usage_error("count must be >= 1");
    SampleReport rep;
    if (o.oracle == "hermitian") {
        if (o.m != 3 || o.n != 3) throw usage_error("the hermitian oracle supports only m = 3, n = 3");
        auto triples = hermitian_sample(o.seed, o.count);
        if (!o.csv.empty()) {
            std::ofstream os(o.csv);
            if (!os) throw usage_error("cannot write " + o.csv);
            write_triples_csv(os, triples);
        }
        rep = check_triples(enumerate_Bn(3, 3), triples, o.seed);
    } else if (o.oracle == "apartment") {
        if (!o.csv.empty()) throw usage_error("--csv is only available for the hermitian oracle");
        if (o.n < 2) throw usage_error("n must be >= 2");
        rep = apartment_sample(o.m, o.n, o.seed, o.count);
    } else {
        throw usage_error("unknown oracle " + o.oracle);
    }
    if (o.format == Format::json) {
        emit(o, dump(io::report_json(rep)));
    } else {
        std::ostringstream os;
        os << "oracle=" << rep.oracle << " m=" << rep.m << " n=" << rep.n << " seed=" << rep.seed
           << " count=" << rep.count << (rep.oracle == "apartment" ? " exact" : "") << "\n";
        os << rep.violations.size() << " violations\n";
        for (const auto& v : rep.violations)
            os << "  sample " << v.sample << " " << v.functional << " margin " << v.margin << "\n";
        emit(o, os.str());
    }
    return rep.passed() ? 0 : 1;
}

int cmd_fold(const Options& o) {
    auto path = io::path_from_json(read_json(o.path));
    ApartmentModel E(path.m);
    const auto& W = E.group();
    Straightened s;
    try {
        s = straighten(E, path);
    } catch (const non_billiard_error& e) {
        if (o.format == Format::json)
            std::cout << dump({{"billiard", false}, {"breakIndex", e.index()}, {"message", e.what()}});
        else
            std::cout << "not a billiard path: " << e.what() << "\n";
        return 1;
    }
    auto [sides, trans] = straightening_opening_data(path, s);
    auto opened = open_vectors(E, sides, trans, path.points[0]);
    const bool endpoint_ok = opened.points.back() == s.endpoint;
    const bool holonomy_ok = W.compose(opened.holonomy, s.holonomy) == W.identity();
    std::vector<ApartmentPoint> poly{path.apex};
    poly.insert(poly.end(), path.points.begin(), path.points.end());
    poly.push_back(path.apex);
    auto folded = fold_onto_chamber(E, poly);
    if (o.format == Format::json) {
        json mus = json::array();
        for (const auto& mu : s.mus) mus.push_back(io::isometry_json(mu));
        json op = json::array();
        for (const auto& x : opened.points) op.push_back(io::vec_json(x));
        json fp = json::array();
        for (const auto& seg : folded) {
            json pieces = json::array();
            for (const auto& p : seg)
                pieces.push_back({{"from", io::vec_json(p.from)}, {"to", io::vec_json(p.to)},
                                  {"sigma", io::vec_json(p.sigma.as_vec())}, {"fraction", io::exact_json(p.fraction)}});
            fp.push_back(pieces);
        }
        emit(o, dump({{"billiard", true},
                      {"m", path.m},
                      {"mus", mus},
                      {"endpoint", io::vec_json(s.endpoint)},
                      {"holonomy", io::weyl_json(s.holonomy)},
                      {"opened", op},
                      {"openedHolonomy", io::weyl_json(opened.holonomy)},
                      {"endpointIdentity", endpoint_ok},
                      {"holonomyIdentity", holonomy_ok},
                      {"folded", fp}}));
    } else {
        std::ostringstream os;
        for (std::size_t i = 0; i < s.mus.size(); ++i)
            os << "mu_" << i << ": " << s.mus[i].linear.to_string() << " + (" << io::text_value(s.mus[i].translation.p)
               << ", " << io::text_value(s.mus[i].translation.q) << ")\n";
        os << "endpoint: (" << io::text_value(s.endpoint.p) << ", " << io::text_value(s.endpoint.q) << ")\n"
           << "holonomy: " << s.holonomy.to_string() << "\n"
           << "endpoint identity: " << (endpoint_ok ? "pass" : "FAIL") << "\n"
           << "holonomy identity: " << (holonomy_ok ? "pass" : "FAIL") << "\n";
        emit(o, os.str());
    }
    return endpoint_ok && holonomy_ok ? 0 : 1;
}

// Polygon JSON, optionally with "transitions": one Weyl element per side.
int cmd_open(const Options& o) {
    const json in = read_json(o.path);
    auto poly = io::polygon_from_json(in);
    ApartmentModel E(poly.m);
    const auto& W = E.group();
    std::vector<Vec2> sides;
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) sides.push_back(poly.side(i));
    std::vector<WeylElement> trans(sides.size(), W.identity());
    if (in.contains("transitions")) {
        trans.clear();
        for (const auto& t : in["transitions"]) trans.push_back(io::weyl_from_json(W, t));
    }
    auto opened = open_vectors(E, sides, trans, poly.vertices.empty() ? E.zero() : poly.vertices[0]);
    auto sig = sigma(E, poly);
    if (o.format == Format::json) {
        json pts = json::array();
        for (const auto& x : opened.points) pts.push_back(io::vec_json(x));
        json sg = json::array();
        for (const auto& d : sig) sg.push_back(io::vec_json(d.as_vec()));
        emit(o, dump({{"m", poly.m},
                      {"sigma", sg},
                      {"opened", pts},
                      {"holonomy", io::weyl_json(opened.holonomy)},
                      {"closed", opened.points.back() == opened.points.front()}}));
    } else {
        std::ostringstream os;
        for (const auto& x : opened.points) os << "(" << io::text_value(x.p) << ", " << io::text_value(x.q) << ")\n";
        os << "holonomy: " << opened.holonomy.to_string() << "\n";
        emit(o, os.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized triangle inequalities for rank-2 Euclidean buildings"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    std::string format = "json";
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto* ineq = app.add_subcommand("inequalities", "enumerate the inequality system");
    ineq->add_option("--m", o.m, "dihedral order")->required();
    ineq->add_option("--n", o.n, "number of sides")->required();
    auto* weak = ineq->add_flag("--weak", o.weak, "use the antipodal-pair characterisation");
    ineq->add_flag("--full", o.full, "use the full characterisation (default)")->excludes(weak);
    ineq->add_option("--out", o.out, "write the system JSON here");

    auto* check = app.add_subcommand("check", "classify a point against a system");
    check->add_option("--system", o.system)->required();
    check->add_option("--point", o.point)->required();
    check->add_option("--out", o.out);

    auto* irr = app.add_subcommand("irredundant", "certify each row of a system");
    irr->add_option("--system", o.system)->required();
    irr->add_option("--out", o.out);
    irr->add_option("--cone", o.cone, "also write the cone rows as JSON");

    auto* sample = app.add_subcommand("sample", "test a system against an oracle");
    sample->add_option("--oracle", o.oracle, "hermitian or apartment")->capture_default_str();
    sample->add_option("--m", o.m)->capture_default_str();
    sample->add_option("--n", o.n)->capture_default_str();
    sample->add_option("--seed", o.seed)->capture_default_str();
    sample->add_option("--count", o.count)->capture_default_str();
    sample->add_option("--csv", o.csv, "hermitian only: dump the spectra");
    sample->add_option("--out", o.out);

    auto* fold = app.add_subcommand("fold", "straighten a billiard path and verify the identities");
    fold->add_option("--path", o.path)->required();
    fold->add_option("--out", o.out);

    auto* open = app.add_subcommand("open", "open a polygon along Weyl transitions");
    open->add_option("--path", o.path)->required();
    open->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    o.format = format == "text" ? Format::text : Format::json;

    try {
        if (*ineq) return cmd_inequalities(o);
        if (*check) return cmd_check(o);
        if (*irr) return cmd_irredundant(o);
        if (*sample) return cmd_sample(o);
        if (*fold) return cmd_fold(o);
        if (*open) return cmd_open(o);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
