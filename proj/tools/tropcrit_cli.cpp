#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tropcrit/newton.hpp"
#include "tropcrit/presets.hpp"
#include "tropcrit/problem.hpp"
#include "tropcrit/svg.hpp"

namespace {

using namespace tropcrit;

struct Args {
    std::string preset;
    std::string file;
    std::string k = "rank1";
    std::string alpha;
    std::string c = "1";
    std::string d = "2";
    std::string order = "5";
    int samples = 5;
    std::uint64_t seed = 1;
    std::string svg;
    std::string json;
};

void add_common(CLI::App* cmd, Args& a) {
    cmd->add_option("preset", a.preset,
                    "built-in polytope: cp2, cp2-blowup1, cp2-blowup2, s2xs2, cp3");
    cmd->add_option("--file", a.file, "problem spec JSON file (instead of a preset)");
    cmd->add_option("--k", a.k,
                    "subtorus matrix: columns 'k1,..,kn[;..]', or full|rank1|rank2");
    cmd->add_option("--alpha", a.alpha, "blowup size (default 1/4 resp. 0)");
    cmd->add_option("--c", a.c, "first sphere size for s2xs2");
    cmd->add_option("--d", a.d, "second sphere size for s2xs2");
    cmd->add_option("--order", a.order, "truncation order p/q for series work");
    cmd->add_option("--samples", a.samples, "lift samples per cell for verify");
    cmd->add_option("--seed", a.seed, "RNG seed for seeds and sampling");
    cmd->add_option("--svg", a.svg, "write an SVG figure here (2d only)");
    cmd->add_option("--json", a.json, "write the JSON result here instead of stdout");
}

ProblemSpec build_spec(const Args& a) {
    std::optional<ProblemSpec> spec;
    if (!a.file.empty()) {
        std::ifstream is(a.file);
        if (!is) throw io_error("cannot read " + a.file);
        nlohmann::json j;
        try {
            is >> j;
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("bad json in ") + a.file + ": " + e.what());
        }
        spec = ProblemSpec::from_json(j);
    } else {
        std::optional<Polytope> p;
        if (a.preset == "cp2") p = preset_cp2();
        else if (a.preset == "cp2-blowup1")
            p = preset_cp2_blowup1(a.alpha.empty() ? Rational(1, 4) : parse_rational(a.alpha));
        else if (a.preset == "cp2-blowup2")
            p = preset_cp2_blowup2(a.alpha.empty() ? Rational(0) : parse_rational(a.alpha));
        else if (a.preset == "s2xs2")
            p = preset_s2xs2(parse_rational(a.c), parse_rational(a.d));
        else if (a.preset == "cp3") p = preset_cp3();
        else if (a.preset.empty()) throw parse_error("need a preset name or --file");
        else throw parse_error("unknown preset '" + a.preset + "'");
        spec = ProblemSpec{std::move(*p), {}, {}, 5, 5, 1, "", ""};
        spec->k = parse_k(a.k, spec->polytope.dim());
    }
    spec->order = parse_rational(a.order);
    if (spec->order <= 0) throw parse_error("order must be positive");
    spec->samples = a.samples;
    spec->seed = a.seed;
    if (!a.svg.empty()) spec->svg_path = a.svg;
    if (!a.json.empty()) spec->json_path = a.json;
    return *spec;
}

void emit(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    os << body;
    os.flush();
    if (!os) throw io_error("cannot write " + path);
}

// figure is best-effort outside the plane: the JSON result is still produced
void maybe_svg(const ProblemSpec& spec, const PolyhedralComplex& pc) {
    if (spec.svg_path.empty()) return;
    try {
        emit(spec.svg_path, render_svg(pc, spec.polytope));
    } catch (const unsupported_dimension& e) {
        std::cerr << "svg skipped: " << e.what() << "\n";
    }
}

int cmd_potential(const Args& a) {
    ProblemSpec spec = build_spec(a);
    LaurentPoly po = spec.potential();
    std::cout << po.str() << "\n";
    if (!spec.json_path.empty())
        emit(spec.json_path, po.to_json().dump(2) + "\n");
    return 0;
}

int cmd_tropical(const Args& a) {
    ProblemSpec spec = build_spec(a);
    LaurentPoly po = spec.potential();
    SubtorusSpec st = spec.subtorus();
    PolyhedralComplex pc = crit_trop(spec.polytope, st, po);
    emit(spec.json_path, pc.to_json().dump(2) + "\n");
    maybe_svg(spec, pc);
    return 0;
}

int cmd_verify(const Args& a) {
    ProblemSpec spec = build_spec(a);
    LaurentPoly po = spec.potential();
    SubtorusSpec st = spec.subtorus();
    PolyhedralComplex pc = crit_trop(spec.polytope, st, po);
    maybe_svg(spec, pc);

    if (spec.samples <= 0) {
        emit(spec.json_path, ProbeReport{}.to_json().dump(2) + "\n");
        return 0;
    }
    std::vector<LaurentPoly> sys = critical_system(po, st);
    ProbeReport rep = dimension_probe(sys, pc, spec.samples, spec.order, spec.seed);
    emit(spec.json_path, rep.to_json().dump(2) + "\n");

    // a failed sample is fine only at a singular point or on a cell of the
    // outer approximation that the probe flagged as spurious
    for (const auto& cell : rep.cells) {
        if (!pc.exact && !cell.verified) continue; // spurious artifact
        if (cell.ok_samples + cell.singular_samples < cell.samples) return 3;
    }
    return 0;
}

int cmd_gallery(const std::string& out, const std::string& only) {
    int count = run_gallery(out, only);
    std::cout << count << " cases -> " << out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"critical loci of toric potentials under subtorus symmetry"};
    app.require_subcommand(1);

    Args a;
    CLI::App* pot = app.add_subcommand("potential", "print the potential function");
    add_common(pot, a);
    CLI::App* trop = app.add_subcommand("tropical", "tropical critical complex as JSON/SVG");
    add_common(trop, a);
    CLI::App* ver = app.add_subcommand("verify", "lift-check sampled critical points");
    add_common(ver, a);

    std::string out_dir = "gallery";
    std::string only;
    CLI::App* gal = app.add_subcommand("gallery", "write every example figure + JSON");
    gal->add_option("--out", out_dir, "output directory");
    gal->add_option("--only", only, "restrict to case ids with this prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (pot->parsed()) return cmd_potential(a);
        if (trop->parsed()) return cmd_tropical(a);
        if (ver->parsed()) return cmd_verify(a);
        if (gal->parsed()) return cmd_gallery(out_dir, only);
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const tropcrit::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
