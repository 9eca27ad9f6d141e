#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_bin;
int g_counter = 0;

namespace fs = std::filesystem;

fs::path scratch_dir() {
    fs::path d = fs::temp_directory_path() / "tropcrit_cli_test";
    fs::create_directories(d);
    return d;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    fs::path d = scratch_dir();
    fs::path out = d / ("out" + std::to_string(g_counter) + ".txt");
    fs::path err = d / ("err" + std::to_string(g_counter) + ".txt");
    ++g_counter;
    std::string cmd = g_bin + " " + args + " > " + out.string() + " 2> " + err.string();
    int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (raw == -1) ? -1 : WEXITSTATUS(raw);
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

} // namespace

TEST_CASE("potential subcommand prints the pinned series") {
    RunResult r = run("potential cp2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("y1 + y2 + T^1*y1^-1*y2^-1") != std::string::npos);

    RunResult r2 = run("potential s2xs2 --c 1 --d 2");
    CHECK(r2.exit_code == 0);
    CHECK(r2.out.find("y1 + y2 + T^1*y1^-1 + T^2*y2^-1") != std::string::npos);
}

TEST_CASE("argument errors exit with the parse code") {
    CHECK(run("tropical").exit_code == 2);
    CHECK(run("tropical not-a-preset").exit_code == 2);
    CHECK(run("frobnicate cp2").exit_code == 2);

    fs::path bad = scratch_dir() / "bad.json";
    std::ofstream(bad) << "{";
    CHECK(run("tropical --file " + bad.string()).exit_code == 2);
}

TEST_CASE("a problem spec file replaces the preset") {
    fs::path spec = scratch_dir() / "spec.json";
    std::ofstream(spec) << R"({ "polytope": { "dim": 2, "facets": [
        { "v": [1, 0],   "lambda": 0 },
        { "v": [0, 1],   "lambda": 0 },
        { "v": [-1, -1], "lambda": -1 } ] },
      "k": [[1], [2]],
      "corrections": [ { "coeff": "1/2", "e": [0, 0, 2], "rho": "1/3" } ] })";

    RunResult r = run("potential --file " + spec.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("y1 + y2 + T^1*y1^-1*y2^-1 + 1/2*T^(7/3)*y1^-2*y2^-2") != std::string::npos);

    fs::path j = scratch_dir() / "spec_out.json";
    RunResult rv = run("verify --file " + spec.string() + " --json " + j.string());
    CHECK(rv.exit_code == 0);
    CHECK(slurp(j).find("\"probed_dim\": 1") != std::string::npos);

    // the same facets with the sign of the face values flipped cut out nothing
    fs::path empty = scratch_dir() / "empty.json";
    std::ofstream(empty) << R"({ "polytope": { "dim": 2, "facets": [
        { "v": [1, 0],   "lambda": 0 },
        { "v": [0, 1],   "lambda": 0 },
        { "v": [-1, -1], "lambda": 1 } ] } })";
    RunResult re = run("potential --file " + empty.string());
    CHECK(re.exit_code == 2);
    CHECK(re.err.find("empty") != std::string::npos);
}

TEST_CASE("tropical emits the full complex as json") {
    fs::path j = scratch_dir() / "cp2.json";
    RunResult r = run("tropical cp2 --k 1,2 --json " + j.string());
    REQUIRE(r.exit_code == 0);
    std::string doc = slurp(j);
    CHECK(doc.find("\"exact\": true") != std::string::npos);
    // three open segments plus their shared node
    size_t cells = 0, pos = 0;
    while ((pos = doc.find("\"dim\"", pos)) != std::string::npos) {
        ++cells;
        ++pos;
    }
    CHECK(cells == 4);
}

TEST_CASE("svg output is produced for planar cases and skipped otherwise") {
    fs::path svg = scratch_dir() / "cp2.svg";
    RunResult r = run("tropical cp2 --k 1,2 --svg " + svg.string());
    CHECK(r.exit_code == 0);
    std::string doc = slurp(svg);
    CHECK(doc.rfind("<svg", 0) == 0);

    fs::path j3 = scratch_dir() / "cp3.json";
    fs::path svg3 = scratch_dir() / "cp3.svg";
    RunResult r3 = run("tropical cp3 --svg " + svg3.string() + " --json " + j3.string());
    CHECK(r3.exit_code == 0);
    CHECK(r3.err.find("svg skipped") != std::string::npos);
    CHECK(!fs::exists(svg3));
    CHECK(!slurp(j3).empty());
}

TEST_CASE("verify succeeds on an exact family and respects --samples 0") {
    RunResult r = run("verify cp2 --k 0,1 --samples 5 --order 5 --seed 1");
    CHECK(r.exit_code == 0);
    CHECK(run("verify cp2 --k 0,1 --samples 0").exit_code == 0);
}

TEST_CASE("runs are byte-deterministic") {
    RunResult a = run("verify cp2 --k 1,2 --samples 3 --order 4 --seed 9");
    RunResult b = run("verify cp2 --k 1,2 --samples 3 --order 4 --seed 9");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("gallery renders the requested subset reproducibly") {
    fs::path d1 = scratch_dir() / "gal1";
    fs::path d2 = scratch_dir() / "gal2";
    RunResult r1 = run("gallery --only cp2 --out " + d1.string());
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.out.find("4 cases") != std::string::npos);
    RunResult r2 = run("gallery --only cp2 --out " + d2.string());
    REQUIRE(r2.exit_code == 0);

    std::string m1 = slurp(d1 / "manifest.json");
    std::string m2 = slurp(d2 / "manifest.json");
    CHECK(!m1.empty());
    CHECK(m1 == m2);

    size_t json_files = 0;
    for (const auto& e : fs::directory_iterator(d1))
        if (e.path().extension() == ".json") ++json_files;
    CHECK(json_files >= 5); // four cases plus the manifest
}

TEST_CASE("unwritable gallery destination reports an io error") {
    fs::path file_parent = scratch_dir() / "not_a_dir";
    std::ofstream(file_parent) << "x";
    RunResult r = run("gallery --only cp2 --out " + (file_parent / "sub").string());
    CHECK(r.exit_code == 4);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-cli-binary> [doctest args]\n", argv[0]);
        return 1;
    }
    g_bin = argv[1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    return ctx.run();
}
