#include "doctest.h"
#include "opd/bar.hpp"

using namespace opd;

namespace {

std::map<int, int> dims(std::initializer_list<std::pair<const int, int>> v) { return {v}; }

SideModule leftAug(const OperadPtr& o, int N) { return module_along(augmentation(o, N), Side::Left); }
SideModule rightAug(const OperadPtr& o, int N) { return module_along(augmentation(o, N), Side::Right); }

}  // namespace

TEST_CASE("koszul shadow of the commutative operad") {
    auto h = koszul_shadow(com_operad(4), 4);
    CHECK(h[1] == dims({{0, 1}}));
    CHECK(h[2] == dims({{1, 1}}));
    CHECK(h[3] == dims({{2, 2}}));
    CHECK(h[4] == dims({{3, 6}}));
}

TEST_CASE("koszul shadow of the bracket operad is one-dimensional") {
    // the dual shadow of Lie is the suspended commutative pattern
    auto h = koszul_shadow(lie_operad(4), 4);
    for (int a = 1; a <= 4; ++a) CHECK(h[a] == dims({{a - 1, 1}}));
}

TEST_CASE("two-level bar complex by hand") {
    const int N = 2;
    auto lie = lie_operad(N);
    SideModule m = module_along(lie_to_ass(N), Side::Right);
    SideModule n = leftAug(lie, N);
    BarComplex bar(m, lie, n, 2);
    CHECK(bar.levels() == 2);
    CHECK(bar.levelDim(0) == 2);  // the two words
    CHECK(bar.levelDim(1) == 1);  // the bracket over two units
    auto h = bar.homologyDims();
    CHECK(h == dims({{0, 1}}));
}

TEST_CASE("unit homology via extra degeneracies") {
    const int N = 4;
    for (auto name : {"Com", "Ass", "Lie", "Pois2"}) {
        auto O = builtin_operad(name, N);
        auto h1 = relative_composition_homology(rightAug(O, N), O,
                                                module_along(identity_morphism(O), Side::Left), N);
        auto h2 = relative_composition_homology(module_along(identity_morphism(O), Side::Right), O,
                                                leftAug(O, N), N);
        CHECK(h1[1] == dims({{0, 1}}));
        CHECK(h2[1] == dims({{0, 1}}));
        for (int a = 2; a <= N; ++a) {
            CHECK(h1[a].empty());
            CHECK(h2[a].empty());
        }
    }
}

TEST_CASE("bar complex euler characteristic equals alternating level sum") {
    const int N = 4;
    auto lie = lie_operad(N);
    SideModule m = module_along(lie_to_ass(N), Side::Right);
    SideModule n = leftAug(lie, N);
    for (int a = 1; a <= N; ++a) {
        BarComplex bar(m, lie, a <= N ? n : n, a);
        Rat lv;
        for (int s = 0; s < bar.levels(); ++s) {
            GradedSpace g = bar.levelGraded(s);
            for (auto& [d, c] : g.dims) lv += Rat(((d + s) & 1) ? -c : c);
        }
        CHECK(bar.total().euler() == lv);
        Rat hv;
        for (auto& [d, c] : bar.homologyDims()) hv += Rat((d & 1) ? -c : c);
        CHECK(hv == lv);
    }
}

TEST_CASE("main PBW square") {
    auto rep = square_check("main-PBW", 0, 0, 0, 4);
    CHECK(rep.match);
    for (auto& r : rep.results) CHECK(r.computed == dims({{0, 1}}));
}

TEST_CASE("bracket-to-little-disks squares") {
    auto r1 = square_check("lie-to-en", 0, 0, 1, 4);
    CHECK(r1.match);
    CHECK(r1.results[3].computed == dims({{0, 24}}));  // k! in a single degree

    auto r2 = square_check("lie-to-en", 0, 0, 2, 4);
    CHECK(r2.match);
    CHECK(r2.results[2].computed == dims({{0, 1}, {1, 3}, {2, 2}}));
    CHECK(r2.results[3].computed == dims({{0, 1}, {1, 6}, {2, 11}, {3, 6}}));
}

TEST_CASE("little-disks-to-commutative square") {
    auto rep = square_check("en-to-comm", 0, 0, 1, 4);
    CHECK(rep.match);
    for (auto& r : rep.results) CHECK(r.computed == dims({{r.arity - 1, 1}}));
}

TEST_CASE("stabilization square and rescale invariance") {
    auto rep = square_check("En", 1, 0, 1, 4);
    CHECK(rep.match);
    for (auto& r : rep.results)
        CHECK(r.computed == dims({{r.arity - 1, static_cast<int>(factorial(r.arity))}}));

    // homology dims are invariant under rescaling the generator of the
    // bar-induced map by a nonzero scalar
    auto scaled = square_check("En", 1, 0, 1, 3, Rat(2));
    CHECK(scaled.match);

    // extended tier
    auto ext = square_check("En", 1, 1, 1, 3);
    CHECK(ext.match);

    // degenerate identity square
    auto deg = square_check("En", 0, 1, 1, 3);
    CHECK(deg.match);
}

TEST_CASE("envelope squares") {
    auto r10 = square_check("envelope", 1, 0, 0, 3);
    CHECK(r10.match);
    for (auto& r : r10.results)
        CHECK(r.computed == dims({{r.arity - 1, static_cast<int>(factorial(r.arity))}}));

    auto r11 = square_check("envelope", 1, 0, 1, 3);
    CHECK(r11.match);
}

TEST_CASE("unsupported squares are rejected") {
    CHECK_THROWS_AS(square_check("nonsense", 0, 0, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(square_check("lie-to-en", 0, 0, 9, 3), std::invalid_argument);
    CHECK_THROWS_AS(square_check("envelope", 0, 0, 1, 3), std::invalid_argument);
}

TEST_CASE("module and operad compatibility is enforced") {
    const int N = 3;
    auto lie = lie_operad(N);
    auto com = com_operad(N);
    SideModule m = module_along(lie_to_ass(N), Side::Right);
    SideModule n = leftAug(com, N);
    CHECK_THROWS_AS(BarComplex(m, lie, n, 2), std::invalid_argument);
    CHECK_THROWS_AS(BarComplex(n, com, n, 2), std::invalid_argument);
}

TEST_CASE("level actions are representations compatible with homology") {
    const int N = 3;
    auto O = spectral_lie_operad(N);
    SideModule right = rightAug(O, N);
    Morphism sig;
    sig.source = O;
    sig.target = suspend_operad(O, 2);
    sig.maps.resize(N + 1);
    sig.maps[1] = SparseMatrix::identity(1);
    for (int a = 2; a <= N; ++a) sig.maps[a] = SparseMatrix(O->dim(a), O->dim(a));
    SideModule left = module_along(sig, Side::Left);
    BarComplex bar(right, O, left, 3);
    for (int s = 0; s < bar.levels(); ++s) {
        SymRep rep;
        rep.n = 3;
        rep.deg = bar.levelDegrees(s);
        rep.gens = bar.levelAction(s);
        CHECK(rep.checkRelations().empty());
    }
    // homology reps have the dimensions of the homology
    auto hd = bar.homologyDims();
    auto hr = bar.homologyReps();
    for (auto& [d, c] : hd) {
        REQUIRE(hr.count(d) == 1);
        CHECK(hr[d].dim() == c);
        CHECK(hr[d].checkRelations().empty());
    }
}

TEST_CASE("skeletal filtration page") {
    GradedSpace x;
    x.add(0, 1);
    auto pages = skeletal_e1_page(1, x, 3);
    for (auto& p : pages) {
        CHECK(p.match);
        CHECK(p.abutment == dims({{0, 1}}));  // one word class per length
    }
    auto pages2 = skeletal_e1_page(2, x, 3);
    for (auto& p : pages2) CHECK(p.match);

    // zero input gives empty pages
    auto empty = skeletal_e1_page(2, GradedSpace{}, 2);
    for (auto& p : empty) {
        CHECK(p.e1.empty());
        CHECK(p.abutment.empty());
    }
}

TEST_CASE("euler obstruction table") {
    auto rows = non_pushout_report(8);
    REQUIRE(rows.size() == 7);
    for (auto& r : rows) {
        CHECK(r.rankCom == 1);
        CHECK(r.rankAss == factorial(r.n));
        CHECK(r.rankLie == factorial(r.n - 1));
        CHECK(r.chi == 1 - factorial(r.n) + factorial(r.n - 1));
        CHECK(r.vanishes == (r.n == 2));
    }
}
