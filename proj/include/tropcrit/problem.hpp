#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tropcrit/tropical.hpp"

namespace tropcrit {

// Everything one pipeline run needs: geometry, subtorus, potential corrections
// and the bookkeeping options shared by the CLI subcommands.
struct ProblemSpec {
    Polytope polytope;
    IntMat k; // n rows, r columns
    std::vector<CorrectionTerm> corrections;
    Rational order = 5;
    int samples = 5;
    std::uint64_t seed = 1;
    std::string svg_path;  // empty: no figure
    std::string json_path; // empty: stdout

    LaurentPoly potential() const;
    SubtorusSpec subtorus() const;

    nlohmann::json to_json() const;
    // parse_error on malformed input, shape mismatch, or order <= 0
    static ProblemSpec from_json(const nlohmann::json& j);
};

struct GalleryCase {
    std::string id;
    ProblemSpec spec;
};

// the bundled example figures: 4 projective-plane cases, 6 per blowup, 3 for
// the product of spheres (ids are grouped by prefix: cp2_, b1_, b2_, s2xs2_)
const std::vector<GalleryCase>& gallery_cases();

// Compute every case whose id starts with `only` (all when empty) and write
// <id>.svg, <id>.json and a manifest.json into dir. Cases run in parallel,
// capped by TROPCRIT_THREADS; output is byte-identical across runs. Returns
// the number of figures written; io_error when the directory is unwritable.
int run_gallery(const std::string& dir, const std::string& only);

} // namespace tropcrit
