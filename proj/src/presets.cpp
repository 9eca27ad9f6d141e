#include "tropcrit/presets.hpp"

#include <sstream>

namespace tropcrit {

Polytope preset_cp2() {
    return Polytope(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, -1}});
}

Polytope preset_cp2_blowup1(const Rational& alpha) {
    return Polytope(2, {{{1, 0}, 0},
                        {{0, 1}, 0},
                        {{-1, -1}, -1},
                        {{0, -1}, alpha - 1}});
}

Polytope preset_cp2_blowup2(const Rational& alpha) {
    return Polytope(2, {{{1, 0}, -1},
                        {{-1, 0}, -1},
                        {{0, 1}, -1},
                        {{0, -1}, -1},
                        {{-1, -1}, -1 - alpha}});
}

Polytope preset_s2xs2(const Rational& c, const Rational& d) {
    return Polytope(2, {{{1, 0}, 0}, {{-1, 0}, -c}, {{0, 1}, 0}, {{0, -1}, -d}});
}

Polytope preset_cp3() {
    return Polytope(3, {{{1, 0, 0}, 0},
                        {{0, 1, 0}, 0},
                        {{0, 0, 1}, 0},
                        {{-1, -1, -1}, -1}});
}

namespace {

std::vector<Int> parse_column(const std::string& s, int n) {
    std::vector<Int> col;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            col.emplace_back(item);
        } catch (const std::exception&) {
            throw parse_error("bad integer '" + item + "' in subtorus matrix");
        }
    }
    if (col.size() != static_cast<size_t>(n))
        throw parse_error("subtorus column needs " + std::to_string(n) + " entries");
    return col;
}

} // namespace

IntMat parse_k(const std::string& s, int n) {
    IntMat k(static_cast<size_t>(n));
    if (s == "full") return k; // zero columns
    if (s == "rank1") {
        for (int i = 0; i < n; ++i) k[static_cast<size_t>(i)] = {Int(i + 1)};
        return k;
    }
    if (s == "rank2") {
        for (int i = 0; i < n; ++i) k[static_cast<size_t>(i)] = {Int(1), Int(i)};
        return k;
    }
    std::istringstream is(s);
    std::string part;
    std::vector<std::vector<Int>> cols;
    while (std::getline(is, part, ';')) cols.push_back(parse_column(part, n));
    if (cols.empty()) throw parse_error("empty subtorus matrix");
    for (int i = 0; i < n; ++i)
        for (const auto& col : cols) k[static_cast<size_t>(i)].push_back(col[static_cast<size_t>(i)]);
    return k;
}

} // namespace tropcrit
