#include <catch2/catch.hpp>

#include <set>
#include <vector>

#include "bqa/presentation.hpp"
#include "bqa/quiver.hpp"

using namespace bqa;

namespace {

// Oracle: path counts are entries of powers of the arrow-count adjacency
// matrix.
std::vector<std::vector<long>> adjacency(const Quiver& q) {
    int n = q.vertex_count();
    std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
    for (const Arrow& a : q.arrows()) ++m[a.src - 1][a.tgt - 1];
    return m;
}

std::vector<std::vector<long>> mat_mul(const std::vector<std::vector<long>>& a,
                                       const std::vector<std::vector<long>>& b) {
    std::size_t n = a.size();
    std::vector<std::vector<long>> c(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

long oracle_path_count(const Quiver& q, int i, int j, int len) {
    auto acc = adjacency(q);
    if (len == 0) return i == j ? 1 : 0;
    for (int t = 1; t < len; ++t) acc = mat_mul(acc, adjacency(q));
    return acc[i - 1][j - 1];
}

}  // namespace

TEST_CASE("compose obeys unit laws and rejects mismatches") {
    Quiver q = quiver_S();
    Path a = Path::of(q, {q.arrow_id("a")});
    Path b = Path::of(q, {q.arrow_id("b")});
    CHECK(compose(Path::trivial(1), a) == a);
    CHECK(compose(a, Path::trivial(2)) == a);
    Path ab = compose(a, b);
    CHECK(ab.source() == 1);
    CHECK(ab.target() == 3);
    CHECK(ab.length() == 2);
    CHECK(ab.str(q) == "a*b");
    CHECK_THROWS_AS(compose(a, a), QuiverError);  // endpoints 2 vs 1
    Path g = Path::of(q, {q.arrow_id("g")});
    CHECK_THROWS_AS(compose(a, g), QuiverError);  // 2 vs 3
}

TEST_CASE("compose is associative where defined") {
    Quiver q = quiver_S();
    Path a = Path::of(q, {q.arrow_id("a")});
    Path b = Path::of(q, {q.arrow_id("b")});
    Path g = Path::of(q, {q.arrow_id("g")});
    CHECK(compose(compose(a, b), g) == compose(a, compose(b, g)));
}

TEST_CASE("enumeration matches the adjacency-power oracle") {
    for (const Quiver& q : {quiver_S(), quiver_E(), quiver_F()}) {
        for (int i = 1; i <= 6; ++i)
            for (int j = 1; j <= 6; ++j) {
                auto paths = enumerate_paths(q, i, j, 6);
                std::vector<long> by_len(7, 0);
                for (const Path& p : paths) ++by_len[p.length()];
                for (int len = 0; len <= 6; ++len)
                    CHECK(by_len[static_cast<std::size_t>(len)] ==
                          oracle_path_count(q, i, j, len));
            }
    }
}

TEST_CASE("enumeration is duplicate-free and length-lex ordered") {
    Quiver q = quiver_E();
    auto paths = enumerate_paths(q, 1, 3, 7);
    std::set<std::string> seen;
    for (const Path& p : paths) CHECK(seen.insert(p.str(q)).second);
    for (std::size_t k = 1; k < paths.size(); ++k) CHECK(paths[k - 1] < paths[k]);
}

TEST_CASE("specific path sets in the S quiver") {
    Quiver q = quiver_S();
    auto paths = enumerate_paths(q, 1, 3, 2);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0].str(q) == "a*b");
    CHECK(paths[1].str(q) == "r*w");
    auto trivial_only = enumerate_paths(q, 2, 2, 0);
    REQUIRE(trivial_only.size() == 1);
    CHECK(trivial_only[0] == Path::trivial(2));
}

TEST_CASE("cycles in the E quiver") {
    Quiver q = quiver_E();
    auto c3 = cycles_at(q, 1, 3);
    CHECK(static_cast<long>(c3.size()) == oracle_path_count(q, 1, 1, 3));
    REQUIRE(c3.size() == 3);  // through vertices 2, 6, 5, each closed by g0
    std::set<std::string> names;
    for (const Path& p : c3) names.insert(p.str(q));
    CHECK(names == std::set<std::string>{"a1*a2*g0", "a3*a4*g0", "b1*b2*g0"});

    auto c5 = cycles_at(q, 5, 3);
    CHECK(static_cast<long>(c5.size()) == oracle_path_count(q, 5, 5, 3));
    REQUIRE(c5.size() == 1);
    CHECK(c5[0].str(q) == "b2*g0*b1");

    auto within3 = enumerate_paths(q, 1, 1, 3);
    CHECK(within3.size() == 4);  // trivial path plus the three cycles
}

TEST_CASE("length-4 cycles in the S quiver") {
    Quiver q = quiver_S();
    auto c4 = cycles_at(q, 1, 4);
    CHECK(static_cast<long>(c4.size()) == oracle_path_count(q, 1, 1, 4));
    REQUIRE(c4.size() == 4);
    // Exactly one cycle stays inside each arrow family.
    std::set<std::string> abgs_only, rwnd_only;
    for (const Path& p : c4) {
        bool abgs = true, rwnd = true;
        for (int id : p.arrow_ids()) {
            std::string name = q.arrow(id).name;
            abgs = abgs && (name == "a" || name == "b" || name == "g" || name == "s");
            rwnd = rwnd && (name == "r" || name == "w" || name == "n" || name == "d");
        }
        if (abgs) abgs_only.insert(p.str(q));
        if (rwnd) rwnd_only.insert(p.str(q));
    }
    CHECK(abgs_only == std::set<std::string>{"a*b*g*s"});
    CHECK(rwnd_only == std::set<std::string>{"r*w*n*d"});
    CHECK_THROWS_AS(cycles_at(q, 1, 0), QuiverError);
}

TEST_CASE("cycle powers") {
    Quiver q = quiver_S();
    Path x1 = Path::of(q, {q.arrow_id("a"), q.arrow_id("b"), q.arrow_id("g"), q.arrow_id("s")});
    CHECK(cycle_power(x1, 0) == Path::trivial(1));
    CHECK(cycle_power(x1, 2).length() == 8);
    Path ab = Path::of(q, {q.arrow_id("a"), q.arrow_id("b")});
    CHECK_THROWS_AS(cycle_power(ab, 2), QuiverError);
}

TEST_CASE("quiver validation") {
    Quiver q(2);
    q.add_arrow("x", 1, 2);
    CHECK_THROWS_AS(q.add_arrow("x", 2, 1), QuiverError);
    CHECK_THROWS_AS(q.add_arrow("y", 0, 1), QuiverError);
    CHECK_THROWS_AS(q.add_arrow("z", 1, 3), QuiverError);
    CHECK(q.arrow_id("missing") == -1);
}
