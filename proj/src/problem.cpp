#include "tropcrit/problem.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "tropcrit/presets.hpp"
#include "tropcrit/svg.hpp"

namespace tropcrit {

LaurentPoly ProblemSpec::potential() const {
    return with_corrections(leading_potential(polytope), polytope, corrections);
}

SubtorusSpec ProblemSpec::subtorus() const {
    return SubtorusSpec(polytope.dim(), k);
}

nlohmann::json ProblemSpec::to_json() const {
    nlohmann::json jk = nlohmann::json::array();
    for (const auto& row : k) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& x : row) jr.push_back(x.str());
        jk.push_back(jr);
    }
    nlohmann::json jc = nlohmann::json::array();
    for (const auto& c : corrections) {
        nlohmann::json t;
        if (c.r.exact()) t["coeff"] = rational_to_string(c.r.rat());
        else t["coeff"] = {c.r.to_complex().real(), c.r.to_complex().imag()};
        t["e"] = c.e;
        t["rho"] = rational_to_string(c.rho);
        jc.push_back(t);
    }
    return {{"polytope", polytope.to_json()},
            {"k", jk},
            {"corrections", jc},
            {"order", rational_to_string(order)},
            {"samples", samples},
            {"seed", seed}};
}

ProblemSpec ProblemSpec::from_json(const nlohmann::json& j) {
    try {
        Polytope p = Polytope::from_json(j.at("polytope"));
        const int n = p.dim();
        IntMat k(static_cast<size_t>(n));
        if (j.contains("k")) {
            const auto& jk = j.at("k");
            if (jk.size() != static_cast<size_t>(n))
                throw parse_error("subtorus matrix needs one row per coordinate");
            size_t cols = jk.empty() ? 0 : jk.at(0).size();
            for (int i = 0; i < n; ++i) {
                const auto& row = jk.at(static_cast<size_t>(i));
                if (row.size() != cols) throw parse_error("ragged subtorus matrix");
                for (const auto& x : row) {
                    if (x.is_string()) k[static_cast<size_t>(i)].emplace_back(x.get<std::string>());
                    else k[static_cast<size_t>(i)].emplace_back(x.get<long long>());
                }
            }
        }
        ProblemSpec spec{std::move(p), std::move(k), {}, 5, 5, 1, "", ""};
        if (j.contains("corrections")) {
            for (const auto& t : j.at("corrections")) {
                CorrectionTerm c;
                const auto& co = t.at("coeff");
                if (co.is_string()) c.r = Scalar(parse_rational(co.get<std::string>()));
                else if (co.is_array() && co.size() == 2)
                    c.r = Scalar(std::complex<double>(co.at(0).get<double>(), co.at(1).get<double>()));
                else throw parse_error("correction coeff must be a rational string or [re,im]");
                c.e = t.at("e").get<std::vector<long long>>();
                const auto& rho = t.at("rho");
                c.rho = rho.is_string() ? parse_rational(rho.get<std::string>())
                                        : Rational(rho.get<long long>());
                spec.corrections.push_back(std::move(c));
            }
        }
        if (j.contains("order")) {
            const auto& o = j.at("order");
            spec.order = o.is_string() ? parse_rational(o.get<std::string>())
                                       : Rational(o.get<long long>());
        }
        if (spec.order <= 0) throw parse_error("order must be positive");
        if (j.contains("samples")) spec.samples = j.at("samples").get<int>();
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("svg")) spec.svg_path = j.at("svg").get<std::string>();
        if (j.contains("json")) spec.json_path = j.at("json").get<std::string>();
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad problem json: ") + e.what());
    }
}

namespace {

IntMat column(std::initializer_list<int> vals) {
    IntMat k;
    for (int v : vals) k.push_back({Int(v)});
    return k;
}

ProblemSpec make_spec(Polytope p, IntMat k) {
    return ProblemSpec{std::move(p), std::move(k), {}, 5, 5, 1, "", ""};
}

std::vector<GalleryCase> build_gallery() {
    std::vector<GalleryCase> g;
    auto add = [&](std::string id, Polytope p, IntMat k) {
        g.push_back({std::move(id), make_spec(std::move(p), std::move(k))});
    };

    add("cp2_generic", preset_cp2(), column({1, 2}));
    add("cp2_k1_zero", preset_cp2(), column({0, 1}));
    add("cp2_k2_zero", preset_cp2(), column({1, 0}));
    add("cp2_k_equal", preset_cp2(), column({1, 1}));

    const Rational quarter(1, 4), third(1, 3), half(1, 2);
    add("b1_generic_small", preset_cp2_blowup1(quarter), column({1, 2}));
    add("b1_generic_wall", preset_cp2_blowup1(third), column({1, 2}));
    add("b1_generic_large", preset_cp2_blowup1(half), column({1, 2}));
    add("b1_k1_zero", preset_cp2_blowup1(quarter), column({0, 1}));
    add("b1_k2_zero", preset_cp2_blowup1(quarter), column({1, 0}));
    add("b1_k_equal", preset_cp2_blowup1(quarter), column({1, 1}));

    add("b2_generic_neg", preset_cp2_blowup2(-half), column({1, 2}));
    add("b2_generic_zero", preset_cp2_blowup2(0), column({1, 2}));
    add("b2_generic_pos", preset_cp2_blowup2(half), column({1, 2}));
    add("b2_k1_zero", preset_cp2_blowup2(half), column({0, 1}));
    add("b2_k2_zero", preset_cp2_blowup2(half), column({1, 0}));
    add("b2_k_equal", preset_cp2_blowup2(half), column({1, 1}));

    add("s2xs2_generic", preset_s2xs2(1, 2), column({1, 2}));
    add("s2xs2_k1_zero", preset_s2xs2(1, 2), column({0, 1}));
    add("s2xs2_k2_zero", preset_s2xs2(1, 2), column({1, 0}));
    return g;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream os(path, std::ios::binary);
    os << body;
    os.flush();
    if (!os) throw io_error("cannot write " + path.string());
}

int thread_cap() {
    if (const char* env = std::getenv("TROPCRIT_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace

const std::vector<GalleryCase>& gallery_cases() {
    static const std::vector<GalleryCase> g = build_gallery();
    return g;
}

int run_gallery(const std::string& dir, const std::string& only) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);

    std::vector<const GalleryCase*> todo;
    for (const auto& gc : gallery_cases())
        if (only.empty() || gc.id.rfind(only, 0) == 0) todo.push_back(&gc);

    struct Result {
        nlohmann::json entry;
        std::exception_ptr err;
    };
    std::vector<Result> results(todo.size());

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            const GalleryCase& gc = *todo[i];
            try {
                LaurentPoly po = gc.spec.potential();
                SubtorusSpec st = gc.spec.subtorus();
                PolyhedralComplex pc = crit_trop(gc.spec.polytope, st, po);
                nlohmann::json body = {{"id", gc.id},
                                       {"potential", po.str()},
                                       {"polytope", gc.spec.polytope.to_json()},
                                       {"complex", pc.to_json()}};
                write_file(fs::path(dir) / (gc.id + ".json"), body.dump(2) + "\n");
                write_file(fs::path(dir) / (gc.id + ".svg"),
                           render_svg(pc, gc.spec.polytope));
                results[i].entry = {{"id", gc.id},
                                    {"svg", gc.id + ".svg"},
                                    {"json", gc.id + ".json"},
                                    {"cells", pc.cells.size()},
                                    {"exact", pc.exact}};
            } catch (...) {
                results[i].err = std::current_exception();
            }
        }
    };

    int nthreads = std::min<int>(thread_cap(), std::max<size_t>(todo.size(), 1));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    nlohmann::json cases = nlohmann::json::array();
    for (auto& r : results) {
        if (r.err) std::rethrow_exception(r.err);
        cases.push_back(std::move(r.entry));
    }
    write_file(fs::path(dir) / "manifest.json",
               nlohmann::json{{"cases", cases}}.dump(2) + "\n");
    return static_cast<int>(todo.size());
}

} // namespace tropcrit
