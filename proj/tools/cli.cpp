#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mixsing/degeneracy.hpp"
#include "mixsing/newton.hpp"
#include "mixsing/parser.hpp"
#include "mixsing/probe.hpp"
#include "mixsing/tameness.hpp"

namespace mixsing::cli {

using nlohmann::ordered_json;

namespace {

struct Options {
    std::string poly, family_text, family_file, arcs, dir, cover, spot;
    std::string json_path, svg_path, radius_grid;
    int n = 0;
    int dim_cap = kDefaultFaceDimCap;
    std::uint64_t seed = 0;
    int starts = 512;
    double tol_accept = 1e-9;
    double tol_floor = 1e-3;
    std::optional<double> rho;
    double t_max = 0.9;
    int rings = 4;
    int angles = 8;
    int smoothness_samples = 200;
    double radius = 0.5;
    int samples = 200;
    double eta_min = 1e-3, eta_max = 1e-3;
    double tol = 1e-3;
    int truncation = 0;
};

struct Outcome {
    ordered_json input = ordered_json::object();
    ordered_json result = ordered_json::object();
    ordered_json warnings = ordered_json::array();
    std::string text;  // human summary when no --json is given
    int code = kOk;
};

ordered_json complex_json(Complex c) { return ordered_json::array({c.real(), c.imag()}); }

ordered_json vector_json(std::span<const Complex> z) {
    ordered_json out = ordered_json::array();
    for (Complex c : z) out.push_back(complex_json(c));
    return out;
}

// JSON has no infinity.
ordered_json radius_json(double r) { return std::isinf(r) ? ordered_json("inf") : ordered_json(r); }

std::string radius_text(double r) {
    if (std::isinf(r)) return "inf";
    std::ostringstream s;
    s << r;
    return s.str();
}

ordered_json index_set_json(IndexSet I) {
    ordered_json out = ordered_json::array();
    for (int i : I.members()) out.push_back(i + 1);
    return out;
}

ordered_json face_json(const Face& f) {
    ordered_json points = ordered_json::array();
    for (const auto& p : f.points) points.push_back(p);
    ordered_json j{{"description", describe_face(f)}, {"dim", f.dim}, {"points", points},
                   {"weight", f.weight.values()}, {"d", f.d}};
    if (!f.compact) j["I"] = index_set_json(f.direction);
    return j;
}

ordered_json verdict_json(const FaceVerdict& v) {
    ordered_json j{{"face", describe_face(v.face)},
                   {"face_function", to_string(v.face_function)},
                   {"status", to_string(v.status)},
                   {"min_residual", v.min_residual_seen},
                   {"starts", v.starts},
                   {"low_margin", v.low_margin}};
    if (v.witness)
        j["witness"] = {{"z", vector_json(v.witness->z)},
                        {"lambda", complex_json(v.witness->lambda)},
                        {"residual", v.witness->residual}};
    return j;
}

ordered_json tameness_json(const TamenessSummary& s) {
    ordered_json faces = ordered_json::array();
    for (const auto& f : s.faces) {
        ordered_json j{{"face", describe_face(f.face)},
                       {"I", index_set_json(f.face.direction)},
                       {"status", f.status == TameStatus::tame_up_to ? "TAME_UP_TO" : "FAILURE_AT"},
                       {"r_lower", f.r_lower},
                       {"estimate", radius_json(f.estimate())}};
        if (f.first_failure)
            j["witness"] = {{"radius", f.first_failure->radius},
                            {"point", vector_json(f.first_failure->point)},
                            {"residual", f.first_failure->witness.residual}};
        faces.push_back(j);
    }
    ordered_json per_I = ordered_json::array();
    for (const auto& [I, r] : s.per_I) per_I.push_back({{"I", index_set_json(I)}, {"r_nc", radius_json(r)}});
    return {{"faces", faces}, {"per_I", per_I}, {"r_nc", radius_json(s.r_nc)}};
}

MixedPolynomial load_poly(const Options& o) {
    const std::string text = read_text_or_file(o.poly);
    return parse_mixed(text, o.n > 0 ? o.n : infer_dimension(text));
}

FamilyPolynomial load_family(const Options& o) {
    if (o.family_file.empty() == o.family_text.empty())
        throw std::invalid_argument("give exactly one of --file and --family");
    const std::string text = o.family_file.empty() ? o.family_text : read_text_or_file(o.family_file);
    return parse_family(text, o.n);
}

SearchConfig search_config(const Options& o) {
    SearchConfig cfg;
    cfg.seed = o.seed;
    cfg.multistarts = o.starts;
    cfg.tol_accept = o.tol_accept;
    cfg.tol_floor = o.tol_floor;
    cfg.validate();
    return cfg;
}

TamenessConfig tameness_config(const Options& o) {
    TamenessConfig cfg;
    cfg.inner.seed = o.seed;
    cfg.inner.tol_accept = o.tol_accept;
    cfg.inner.tol_floor = o.tol_floor;
    if (!o.radius_grid.empty()) {
        cfg.radius_grid.clear();
        std::stringstream ss(o.radius_grid);
        std::string item;
        while (std::getline(ss, item, ',')) cfg.radius_grid.push_back(std::stod(item));
    }
    cfg.validate();
    return cfg;
}

CoveringSpec parse_cover(const std::string& text) {
    // "nu1,nu2/mu1,mu2/delta"
    auto ints = [](const std::string& s) {
        Exponents out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
        return out;
    };
    const auto a = text.find('/'), b = text.rfind('/');
    if (a == std::string::npos || a == b) throw std::invalid_argument("--cover expects nu/mu/delta, e.g. 2,2/1,1/3");
    return CoveringSpec{ints(text.substr(0, a)), ints(text.substr(a + 1, b - a - 1)), std::stoi(text.substr(b + 1))};
}

// --- subcommands -----------------------------------------------------------

Outcome cmd_faces(const Options& o) {
    Outcome r;
    const auto f = load_poly(o);
    r.input = {{"poly", to_string(f)}, {"n", f.dim()}, {"dim_cap", o.dim_cap}};
    const auto P = build_polyhedron(f);
    const auto B = enumerate_nc_boundary(f, o.dim_cap);
    const auto S = classify_subspaces(f);

    ordered_json vertices = ordered_json::array(), compact = ordered_json::array(), essential = ordered_json::array(),
                 rejected = ordered_json::array();
    for (const auto& v : P.vertices) vertices.push_back(v);
    for (const auto& face : B.compact_faces) compact.push_back(face_json(face));
    for (const auto& face : B.essential_noncompact) essential.push_back(face_json(face));
    for (const auto& face : B.noncompact_rejected) rejected.push_back(face_json(face));
    ordered_json vanishing = ordered_json::array(), nonvanishing = ordered_json::array();
    for (IndexSet I : S.vanishing) vanishing.push_back(index_set_json(I));
    for (IndexSet I : S.nonvanishing) nonvanishing.push_back(index_set_json(I));

    r.result = {{"convenient", is_convenient(f)},
                {"vertices", vertices},
                {"compact_faces", compact},
                {"essential_faces", essential},
                {"rejected_noncompact", rejected},
                {"subspaces", {{"vanishing", vanishing}, {"nonvanishing", nonvanishing}}}};
    for (const auto& d : B.diagnostics) r.warnings.push_back(d);

    std::ostringstream t;
    t << "f = " << to_string(f) << "\nconvenient: " << (is_convenient(f) ? "yes" : "no") << "\n";
    for (const auto& face : B.compact_faces) t << "compact    dim " << face.dim << "  " << describe_face(face) << "\n";
    for (const auto& face : B.essential_noncompact)
        t << "essential  dim " << face.dim << "  " << describe_face(face) << "  I = " << face.direction.to_string() << "\n";
    for (const auto& face : B.noncompact_rejected) t << "rejected   dim " << face.dim << "  " << describe_face(face) << "\n";
    r.text = t.str();
    return r;
}

Outcome cmd_nondeg(const Options& o) {
    Outcome r;
    const auto f = load_poly(o);
    const auto cfg = search_config(o);
    r.input = {{"poly", to_string(f)}, {"n", f.dim()}, {"seed", o.seed}, {"starts", o.starts},
               {"tol_accept", o.tol_accept}, {"tol_floor", o.tol_floor}};
    const auto rep = check_strong_nondegeneracy(f, cfg, o.dim_cap);
    ordered_json faces = ordered_json::array();
    std::ostringstream t;
    for (const auto& v : rep.faces) {
        faces.push_back(verdict_json(v));
        t << describe_face(v.face) << "  " << to_string(v.status) << "  min residual " << v.min_residual_seen << "\n";
        if (v.low_margin) r.warnings.push_back("low margin on " + describe_face(v.face));
    }
    r.result = {{"faces", faces}, {"worst", to_string(rep.worst)}, {"passes", rep.passes}};
    t << (rep.passes ? "strongly non-degenerate (numerically)" : to_string(rep.worst)) << "\n";
    r.text = t.str();
    r.code = rep.passes ? kOk : kFailed;
    return r;
}

Outcome cmd_tame(const Options& o) {
    Outcome r;
    const auto f = load_poly(o);
    const auto cfg = tameness_config(o);
    r.input = {{"poly", to_string(f)}, {"n", f.dim()}, {"seed", o.seed}, {"radius_grid", cfg.radius_grid}};
    if (o.rho) r.input["rho"] = *o.rho;
    const auto s = tameness_summary(f, cfg, o.dim_cap);
    r.result = tameness_json(s);
    std::ostringstream t;
    for (const auto& face : s.faces)
        t << describe_face(face.face) << "  " << (face.first_failure ? "failure near " : "tame up to ")
          << radius_text(face.first_failure ? face.first_failure->radius : face.r_lower) << "\n";
    t << "r_nc = " << radius_text(s.r_nc) << "\n";
    if (o.rho) {
        const bool ok = s.r_nc >= *o.rho;
        r.result["verdict"] = ok ? "PASS" : "FAIL";
        r.code = ok ? kOk : kFailed;
        t << (ok ? "PASS" : "FAIL") << " (rho = " << *o.rho << ")\n";
    }
    r.text = t.str();
    return r;
}

Outcome cmd_family(const Options& o) {
    Outcome r;
    auto F = load_family(o);
    if (!o.rho) throw std::invalid_argument("family needs --rho");
    r.input = {{"family", to_string(F)}, {"n", F.n()}};
    if (!o.cover.empty()) {
        const auto spec = parse_cover(o.cover);
        F = pullback_covering(F, spec);
        r.input["cover"] = {{"nu", spec.nu}, {"mu", spec.mu}, {"delta", spec.delta}};
        r.input["pulled_back"] = to_string(F);
    }
    AdmissibilityConfig cfg;
    cfg.sampling.t_max = o.t_max;
    cfg.sampling.rings = o.rings;
    cfg.sampling.angles_per_ring = o.angles;
    cfg.search = search_config(o);
    cfg.tameness = tameness_config(o);
    cfg.smoothness_samples = o.smoothness_samples;
    cfg.dim_cap = o.dim_cap;
    r.input.update({{"rho", *o.rho}, {"t_max", o.t_max}, {"rings", o.rings}, {"angles", o.angles},
                    {"seed", o.seed}, {"starts", o.starts}, {"radius_grid", cfg.tameness.radius_grid}});

    const auto rep = check_admissibility(F, *o.rho, cfg);
    ordered_json per_t = ordered_json::array();
    for (const auto& m : rep.per_t)
        per_t.push_back({{"t", complex_json(m.t)},
                         {"convenient", m.convenient},
                         {"nondegenerate", m.nondegeneracy.passes},
                         {"worst_face", to_string(m.nondegeneracy.worst)},
                         {"r_nc", radius_json(m.r_nc)}});
    ordered_json offending = rep.constancy.offending_t ? complex_json(*rep.constancy.offending_t) : ordered_json();
    ordered_json strata = ordered_json::array();
    for (const auto& s : enumerate_strata(F)) strata.push_back(to_string(s));
    r.result = {{"constancy", {{"constant", rep.constancy.constant}, {"offending_t", offending},
                               {"diagnostics", rep.constancy.diagnostics}}},
                {"per_t", per_t},
                {"min_r_nc", radius_json(rep.min_r_nc)},
                {"uniform_tame", rep.uniform_tame},
                {"tameness_skipped", rep.tameness_skipped}};
    if (rep.smoothness)
        r.result["smoothness"] = {{"radius", rep.smoothness->radius}, {"points", rep.smoothness->points},
                                  {"min_crit", rep.smoothness->min_crit}, {"min_sphere", rep.smoothness->min_sphere},
                                  {"passed", rep.smoothness->passed}};
    r.result["strata"] = strata;
    r.result["verdict"] = to_string(rep.verdict);
    r.result["reason"] = rep.reason;

    std::ostringstream t;
    t << "F = " << to_string(F) << "\nNewton constant: " << (rep.constancy.constant ? "yes" : "no")
      << "\nmin r_nc = " << radius_text(rep.min_r_nc) << "  (rho = " << *o.rho << ")\n"
      << to_string(rep.verdict);
    if (!rep.reason.empty()) t << ": " << rep.reason;
    t << "\n";
    r.text = t.str();
    r.code = rep.verdict == AdmissibilityVerdict::numerically_admissible ? kOk : kFailed;
    return r;
}

ordered_json limit_json(const LimitReport& rep) {
    auto order = [](const OrderInfo& o) {
        return ordered_json{{"order", o.order}, {"index", o.index}, {"leading", complex_json(o.leading)}};
    };
    ordered_json numeric = ordered_json::array();
    for (const auto& [k, v] : rep.numeric) numeric.push_back({{"k", k}, {"residual", v}});
    ordered_json j{{"g", order(rep.g)},
                   {"h", order(rep.h)},
                   {"swapped", rep.swapped},
                   {"reduction_steps", rep.reduction_steps},
                   {"limit_g", vector_json(rep.limit_g)},
                   {"limit_h", vector_json(rep.limit_h)}};
    if (!rep.limit_direction.empty()) j["limit_direction"] = vector_json(rep.limit_direction);
    j["containment_residual"] = rep.containment_residual;
    j["numeric"] = numeric;
    j["decreasing"] = rep.decreasing;
    j["verdict"] = to_string(rep.verdict);
    j["note"] = rep.note;
    return j;
}

ordered_json spot_point_json(const SpotPoint& p) {
    return {{"I", index_set_json(p.I)}, {"t", complex_json(p.t)}, {"eta", complex_json(p.eta)},
            {"z", vector_json(p.z)}, {"crit", p.crit}, {"sphere", p.sphere}};
}

Outcome cmd_probe(const Options& o) {
    Outcome r;
    const auto F = load_family(o);
    r.input = {{"family", to_string(F)}, {"n", F.n()}};
    std::ostringstream t;
    if (!o.spot.empty()) {
        if (!o.arcs.empty()) throw std::invalid_argument("--spot and --arcs are exclusive");
        const SpotMode mode = o.spot == "smoothness"      ? SpotMode::smoothness
                              : o.spot == "nearby_fibres" ? SpotMode::nearby_fibres
                                                          : throw std::invalid_argument("--spot is smoothness or nearby_fibres");
        SpotRegion region{o.radius, o.t_max, o.eta_min, o.eta_max};
        SpotcheckConfig cfg;
        cfg.samples = o.samples;
        cfg.seed = o.seed;
        r.input.update({{"spot", to_string(mode)}, {"radius", o.radius}, {"t_max", o.t_max}, {"samples", o.samples},
                        {"seed", o.seed}});
        if (mode == SpotMode::nearby_fibres) r.input.update({{"eta_min", o.eta_min}, {"eta_max", o.eta_max}});
        const auto rep = spotcheck_regularity(F, mode, region, cfg);
        r.result = {{"mode", to_string(rep.mode)}, {"attempted", rep.attempted}, {"found", rep.found},
                    {"min_crit", rep.min_crit}, {"min_sphere", rep.min_sphere}};
        if (rep.worst_crit) r.result["worst_crit"] = spot_point_json(*rep.worst_crit);
        if (rep.worst_sphere) r.result["worst_sphere"] = spot_point_json(*rep.worst_sphere);
        r.result["counterexample_candidate"] = rep.counterexample_candidate;
        r.result["verdict"] = rep.counterexample_candidate ? "FAIL" : "PASS";
        for (const auto& note : rep.notes) r.warnings.push_back(note);
        t << to_string(mode) << ": " << rep.found << " points, min criticality " << rep.min_crit
          << ", min sphere residual " << rep.min_sphere << "\n"
          << (rep.counterexample_candidate ? "FAIL (counterexample candidate)" : "PASS") << "\n";
        r.text = t.str();
        r.code = rep.counterexample_candidate ? kFailed : kOk;
        return r;
    }
    if (o.arcs.empty()) throw std::invalid_argument("probe needs --arcs or --spot");
    std::ifstream in(o.arcs);
    if (!in) throw std::invalid_argument("cannot read " + o.arcs);
    const ordered_json file = ordered_json::parse(in);
    ProbeConfig cfg;
    cfg.tol = o.tol;
    cfg.truncation = o.truncation;
    LimitReport rep;
    if (file.contains("p_arc")) {
        const Arc p = arc_from_json(file.at("p_arc")), q = arc_from_json(file.at("q_arc"));
        r.input.update({{"condition", "whitney_b"}, {"p_arc", arc_to_json(p)}, {"q_arc", arc_to_json(q)}, {"tol", o.tol}});
        rep = check_whitney_b(F, p, q, cfg);
    } else {
        const Arc arc = arc_from_json(file.at("arc"));
        const auto stratum = parse_stratum(file.at("stratum").get<std::string>());
        r.input.update({{"condition", "thom_af"}, {"arc", arc_to_json(arc)}, {"stratum", to_string(stratum)},
                        {"tol", o.tol}});
        rep = check_thom_af(F, arc, stratum, cfg);
    }
    r.result = limit_json(rep);
    t << r.input["condition"].get<std::string>() << ": " << to_string(rep.verdict) << "  residual "
      << rep.containment_residual;
    if (!rep.numeric.empty()) t << "  (numeric at k=" << rep.numeric.back().first << ": " << rep.numeric.back().second << ")";
    t << "\n";
    if (!rep.note.empty()) t << rep.note << "\n";
    r.text = t.str();
    // INCONCLUSIVE is not a pass.
    r.code = rep.verdict == ProbeVerdict::pass ? kOk : kFailed;
    return r;
}

Outcome cmd_plot(const Options& o) {
    Outcome r;
    const auto f = load_poly(o);
    r.input = {{"poly", to_string(f)}, {"n", f.dim()}};
    if (f.dim() == 2) {
        r.result = {{"svg", render_svg(f)}};
        r.text = r.result["svg"].get<std::string>();
        return r;
    }
    // Higher n: textual face table.
    auto faces = cmd_faces(o);
    r.warnings.push_back("SVG needs n = 2; printing the face table");
    r.result = faces.result;
    r.text = faces.text;
    return r;
}

int run_command(const std::string& name, const Options& o, std::ostream& out, std::ostream& err);

Outcome cmd_corpus(const Options& o, std::ostream& err) {
    Outcome r;
    const std::string manifest = o.dir + "/corpus.json";
    std::ifstream in(manifest);
    if (!in) throw std::invalid_argument("cannot read " + manifest);
    const ordered_json m = ordered_json::parse(in);
    r.input = {{"entries", m.at("entries").size()}};
    ordered_json entries = ordered_json::array();
    std::ostringstream t;
    bool all_ok = true;
    for (const auto& e : m.at("entries")) {
        std::vector<std::string> args;
        for (const auto& a : e.at("args")) {
            std::string s = a.get<std::string>();
            if (const auto pos = s.find("{dir}"); pos != std::string::npos) s.replace(pos, 5, o.dir);
            args.push_back(s);
        }
        args.insert(args.end(), {"--json", "-"});
        std::ostringstream sub_out, sub_err;
        const int code = run(args, sub_out, sub_err);
        const int expect = e.value("expect_exit", 0);
        const bool ok = code == expect;
        all_ok = all_ok && ok;
        ordered_json entry{{"name", e.at("name")}, {"args", e.at("args")}, {"exit", code}, {"expect_exit", expect}, {"ok", ok}};
        if (code == kUsage)
            entry["error"] = sub_err.str();
        else
            entry["result"] = ordered_json::parse(sub_out.str()).at("result");
        entries.push_back(entry);
        t << (ok ? "ok    " : "FAIL  ") << e.at("name").get<std::string>() << "  exit " << code << " (expected " << expect << ")\n";
        if (!ok) err << "corpus entry " << e.at("name").get<std::string>() << " exited " << code << "\n";
    }
    r.result = {{"entries", entries}, {"all_ok", all_ok}};
    r.text = t.str();
    r.code = all_ok ? kOk : kFailed;
    return r;
}

void emit(const std::string& command, const Outcome& r, const Options& o, std::ostream& out) {
    if (!o.json_path.empty()) {
        ordered_json report{{"schema", kSchema}, {"tool_version", kToolVersion}, {"command", command},
                            {"input", r.input}, {"result", r.result}, {"warnings", r.warnings}};
        const std::string text = report.dump(2) + "\n";
        if (o.json_path == "-") {
            out << text;
        } else {
            std::ofstream f(o.json_path, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + o.json_path);
            f << text;
        }
    } else if (!r.result.contains("svg") || o.svg_path.empty()) {
        out << r.text;
    }
    if (!o.svg_path.empty() && command == "plot" && r.result.contains("svg")) {
        const std::string svg = r.result["svg"].get<std::string>();
        if (o.svg_path == "-") {
            if (o.json_path != "-") out << svg;
        } else {
            std::ofstream f(o.svg_path, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + o.svg_path);
            f << svg;
        }
    }
}

int run_command(const std::string& name, const Options& o, std::ostream& out, std::ostream& err) {
    Outcome r;
    if (name == "faces") r = cmd_faces(o);
    else if (name == "nondeg") r = cmd_nondeg(o);
    else if (name == "tame") r = cmd_tame(o);
    else if (name == "family") r = cmd_family(o);
    else if (name == "probe") r = cmd_probe(o);
    else if (name == "plot") r = cmd_plot(o);
    else if (name == "corpus") r = cmd_corpus(o, err);
    else throw std::invalid_argument("unknown command " + name);
    emit(name, r, o, out);
    return r.code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Newton boundaries, non-degeneracy, tameness and regularity probes for mixed polynomials", "mixsing"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    auto poly = [&](CLI::App* c) {
        c->add_option("--poly", o.poly, "polynomial text or .mp file")->required();
        c->add_option("--n", o.n, "number of variables (default: highest index used)");
    };
    auto fam = [&](CLI::App* c) {
        c->add_option("--file", o.family_file, ".fam file");
        c->add_option("--family", o.family_text, "family text in t, z, ~z");
        c->add_option("--n", o.n, "number of z variables");
    };
    auto search = [&](CLI::App* c) {
        c->add_option("--seed", o.seed, "random seed");
        c->add_option("--starts", o.starts, "multistart count")->check(CLI::PositiveNumber);
        c->add_option("--tol-accept", o.tol_accept, "residual accepted as a critical point");
        c->add_option("--tol-floor", o.tol_floor, "residual below which a face is flagged low-margin");
    };
    auto json = [&](CLI::App* c) { c->add_option("--json", o.json_path, "write a JSON report to a path or '-'"); };

    auto* faces = app.add_subcommand("faces", "Newton polyhedron faces and the non-compact Newton boundary");
    poly(faces);
    faces->add_option("--dim-cap", o.dim_cap, "largest face dimension enumerated");
    json(faces);

    auto* nondeg = app.add_subcommand("nondeg", "strong non-degeneracy of the compact faces");
    poly(nondeg);
    search(nondeg);
    json(nondeg);

    auto* tame = app.add_subcommand("tame", "local tameness radius of the essential faces");
    poly(tame);
    search(tame);
    tame->add_option("--radius-grid", o.radius_grid, "comma-separated probe radii");
    tame->add_option("--rho", o.rho, "required radius; FAIL when r_nc < rho");
    json(tame);

    auto* family = app.add_subcommand("family", "admissibility of a family f_t");
    fam(family);
    search(family);
    family->add_option("--rho", o.rho, "uniform tameness radius")->required();
    family->add_option("--t-max", o.t_max, "sampled disk |t| <= t-max");
    family->add_option("--rings", o.rings, "radii t-max*2^-k, k < rings");
    family->add_option("--angles", o.angles, "angles per ring");
    family->add_option("--radius-grid", o.radius_grid, "comma-separated probe radii");
    family->add_option("--smoothness-samples", o.smoothness_samples, "points for the smoothness spot-check");
    family->add_option("--cover", o.cover, "pull back by z^nu ~z^mu first: nu/mu/delta, e.g. 2,2/1,1/3");
    json(family);

    auto* probe = app.add_subcommand("probe", "Whitney (b) / Thom a_f along arcs, or sampled spot-checks");
    fam(probe);
    probe->add_option("--arcs", o.arcs, ".arc.json with p_arc/q_arc (Whitney) or arc/stratum (Thom)");
    probe->add_option("--tol", o.tol, "containment tolerance");
    probe->add_option("--truncation", o.truncation, "series truncation (0: automatic)");
    probe->add_option("--spot", o.spot, "smoothness | nearby_fibres");
    probe->add_option("--radius", o.radius, "ball radius for --spot");
    probe->add_option("--samples", o.samples, "sample count for --spot");
    probe->add_option("--eta-min", o.eta_min, "smallest |eta| for nearby fibres");
    probe->add_option("--eta-max", o.eta_max, "largest |eta| for nearby fibres");
    probe->add_option("--t-max", o.t_max, "sampled disk |t| <= t-max");
    probe->add_option("--seed", o.seed, "random seed");
    json(probe);

    auto* plot = app.add_subcommand("plot", "Newton diagram (SVG for n = 2)");
    poly(plot);
    plot->add_option("--svg", o.svg_path, "SVG output path or '-'");
    json(plot);

    auto* corpus = app.add_subcommand("corpus", "run every entry of <dir>/corpus.json");
    corpus->add_option("--dir", o.dir, "corpus directory")->required();
    json(corpus);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "plot" && o.svg_path.empty() && o.json_path.empty()) o.svg_path = "-";
    try {
        return run_command(name, o, out, err);
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
    } catch (const nlohmann::ordered_json::exception& e) {
        err << "input error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return kUsage;
}

}  // namespace mixsing::cli
