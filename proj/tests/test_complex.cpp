#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "qpt/atlas.hpp"
#include "qpt/complex.hpp"
#include "qpt/rng.hpp"

using namespace qpt;

namespace {

Mask mk(std::initializer_list<int> verts) { return mask_from_vertices(std::vector<int>(verts)); }

Complex boundary_of_simplex(int nverts) {
    // all (nverts-1)-subsets of {1..nverts}
    std::vector<Mask> facets;
    Mask full = full_mask(nverts);
    for (Mask rest = full; rest != 0; rest &= rest - 1) facets.push_back(full & ~(rest & -rest));
    return Complex::from_facets(nverts, std::move(facets));
}

}  // namespace

TEST_CASE("from_facets basics") {
    Complex simplex = Complex::from_facets(5, {mk({1, 2, 3, 4, 5})});
    CHECK(simplex.facet_count() == 1);
    CHECK(simplex.dim() == 4);

    Complex boundary = boundary_of_simplex(5);
    CHECK(boundary.facet_count() == 5);
    CHECK(boundary.dim() == 3);

    Complex dominated = Complex::from_facets(6, {mk({1, 2, 3}), mk({1, 2, 3, 4})});
    CHECK(dominated.facet_count() == 1);
    CHECK(dominated.facets()[0] == mk({1, 2, 3, 4}));

    CHECK_THROWS_AS(Complex::from_facets(4, {mk({1, 5})}), InvalidVertex);
    CHECK_THROWS_AS(Complex::from_facets(33, {}), InvalidVertex);

    // idempotence: rebuilding from the facet list is byte-for-byte equal
    Complex rp2 = atlas::rp2_6();
    CHECK(Complex::from_facets(rp2.slot_count(), rp2.facets()) == rp2);
}

TEST_CASE("f_vector and euler characteristic") {
    CHECK(f_vector(boundary_of_simplex(5)).counts() == std::vector<std::int64_t>{5, 10, 10, 5});
    CHECK(f_vector(atlas::cp2_9()).counts() == std::vector<std::int64_t>{9, 36, 84, 90, 36});
    CHECK(f_vector(atlas::rp2_6()).counts() == std::vector<std::int64_t>{6, 15, 10});

    CHECK(euler_characteristic(boundary_of_simplex(10)) == 2);
    CHECK(euler_characteristic(atlas::cp2_9()) == 3);
    CHECK(euler_characteristic(atlas::rp2_6()) == 1);

    // against the subset-scan oracle
    for (const char* name : {"L1", "L5", "M2", "L1star"}) {
        Complex K = atlas::table_sphere(name);
        CHECK(f_vector(K).counts() == oracle::naive_f_vector(K));
    }
}

TEST_CASE("link") {
    Complex b4 = boundary_of_simplex(5);
    Complex lk = link(b4, mk({1}));
    CHECK(lk.facet_count() == 4);
    CHECK(lk.dim() == 2);
    CHECK(lk.support() == mk({2, 3, 4, 5}));

    // every vertex link of rp2_6 is a pentagon
    Complex rp2 = atlas::rp2_6();
    for (int v = 1; v <= 6; ++v) {
        Complex l = link(rp2, mk({v}));
        auto fv = f_vector(l).counts();
        CHECK(fv == std::vector<std::int64_t>{5, 5});
        CHECK(is_weak_pseudomanifold(l, 1));
        CHECK(is_strongly_connected(l, 1));
    }

    // link of a special line of cp2_9 is the boundary of the next line
    Complex cp = atlas::cp2_9();
    for (int t = 0; t < 3; ++t) {
        Complex l = link(cp, atlas::cp2_9_special_line(t));
        Mask next = atlas::cp2_9_special_line((t + 1) % 3);
        CHECK(l.support() == next);
        CHECK(l.facet_count() == 3);
        for (Mask f : l.facets()) CHECK(mask_card(f) == 2);
    }

    CHECK_THROWS_AS(link(rp2, mk({1, 2, 3, 4})), NotASimplex);

    // link composition: link(K, s u t) == link(link(K, s), t)
    Complex l2 = atlas::table_sphere("L2");
    Mask s = mk({6});
    Mask t = mk({1});
    CHECK(link(l2, s | t) == link(link(l2, s), t));
}

TEST_CASE("join") {
    Complex d4 = Complex::from_facets(5, {mk({1, 2, 3, 4, 5})});
    std::vector<Mask> shifted;
    for (Mask f : boundary_of_simplex(5).facets()) shifted.push_back(f << 5);
    Complex b4_shifted = Complex::from_facets(10, std::move(shifted));
    Complex j = join(d4, b4_shifted);
    CHECK(j.facet_count() == 5);
    CHECK(j.dim() == 8);

    Complex pt = Complex::from_facets(3, {mk({3})});
    Complex edge_bd = Complex::from_facets(3, {mk({1}), mk({2})});
    Complex path = join(pt, edge_bd);
    CHECK(path.facet_count() == 2);
    CHECK(f_vector(path).counts() == std::vector<std::int64_t>{3, 2});

    CHECK(join(d4, Complex()) == d4);
    CHECK(join(Complex(), d4) == d4);
    CHECK_THROWS_AS(join(d4, d4), OverlappingSupports);

    // f-vector of a join is the convolution of the f-vectors (with f_-1 = 1)
    Complex a = atlas::rp2_6();
    std::vector<Mask> bfac;
    for (Mask f : boundary_of_simplex(3).facets()) bfac.push_back(f << 6);
    Complex b = Complex::from_facets(9, std::move(bfac));
    auto fa = f_vector(a).counts();
    auto fb = f_vector(b).counts();
    auto fj = f_vector(join(a, b)).counts();
    auto get = [](const std::vector<std::int64_t>& v, int k) {
        if (k == -1) return std::int64_t{1};
        return (k >= 0 && k < static_cast<int>(v.size())) ? v[static_cast<std::size_t>(k)]
                                                          : std::int64_t{0};
    };
    for (int k = 0; k < static_cast<int>(fj.size()); ++k) {
        std::int64_t expect = 0;
        for (int i = -1; i <= k; ++i) expect += get(fa, i) * get(fb, k - 1 - i);
        CHECK(fj[static_cast<std::size_t>(k)] == expect);
    }
}

TEST_CASE("ridge degrees and pseudomanifold predicates") {
    Complex b4 = boundary_of_simplex(5);
    for (const auto& [ridge, deg] : ridge_degrees(b4, 3)) CHECK(deg == 2);

    Complex d4 = Complex::from_facets(5, {mk({1, 2, 3, 4, 5})});
    for (const auto& [ridge, deg] : ridge_degrees(d4, 4)) CHECK(deg == 1);

    Complex cp = atlas::cp2_9();
    auto rd = ridge_degrees(cp, 4);
    CHECK(rd.size() == 90);
    for (const auto& [ridge, deg] : rd) CHECK(deg == 2);

    Complex mixed = Complex::from_facets(5, {mk({1, 2, 3}), mk({4, 5})});
    CHECK_THROWS_AS(ridge_degrees(mixed, 2), NotPure);

    CHECK(is_weak_pseudomanifold(b4, 3));
    CHECK_FALSE(is_weak_pseudomanifold(d4, 4));
    CHECK(is_weak_pseudomanifold(atlas::table_sphere("L2"), 3));
    CHECK_FALSE(is_weak_pseudomanifold(b4, 2));

    Complex points = Complex::from_facets(4, {mk({1}), mk({3})});
    CHECK(is_weak_pseudomanifold(points, 0));

    // degree sum identity for a weak pseudomanifold
    Complex l5 = atlas::table_sphere("L5");
    auto degs = ridge_degrees(l5, 3);
    std::int64_t total = 0;
    for (const auto& [r, deg] : degs) total += deg;
    CHECK(total == 4 * static_cast<std::int64_t>(l5.facet_count()));
}

TEST_CASE("strong connectivity") {
    CHECK(is_strongly_connected(boundary_of_simplex(5), 3));
    CHECK(is_strongly_connected(atlas::cp2_9(), 4));

    std::vector<Mask> two;
    for (Mask f : boundary_of_simplex(4).facets()) {
        two.push_back(f);
        two.push_back(f << 4);
    }
    Complex pair = Complex::from_facets(8, std::move(two));
    CHECK_FALSE(is_strongly_connected(pair, 2));
    CHECK(is_weak_pseudomanifold(pair, 2));
}

TEST_CASE("condition star") {
    Complex b4 = boundary_of_simplex(5);
    auto w = check_condition_star(b4);
    REQUIRE(w.has_value());
    // witness and complement are both simplices
    CHECK(b4.is_simplex(*w));
    CHECK(b4.is_simplex(full_mask(5) & ~*w));

    CHECK_FALSE(check_condition_star(atlas::cp2_9()).has_value());

    Complex forced =
        Complex::from_facets(15, {mask_from_vertices({1, 2, 3, 4, 5, 6, 7, 8, 9}, 15),
                                  mask_from_vertices({7, 8, 9, 10, 11, 12, 13, 14, 15}, 15)});
    auto w2 = check_condition_star(forced);
    REQUIRE(w2.has_value());
    CHECK(*w2 == mask_from_vertices({1, 2, 3, 4, 5, 6}, 15));
}

TEST_CASE("complementarity") {
    CHECK_FALSE(check_complementarity(atlas::cp2_9()).has_value());
    CHECK_FALSE(check_complementarity(atlas::rp2_6()).has_value());
    CHECK(check_complementarity(boundary_of_simplex(5)).has_value());

    // complementarity pairs faces with non-faces: f_k + f_{n-k-2} = C(n, k+1)
    for (const Complex& K : {atlas::cp2_9(), atlas::rp2_6()}) {
        const int n = K.slot_count();
        auto fv = f_vector(K).counts();
        auto get = [&](int k) {
            if (k == -1) return std::int64_t{1};  // empty simplex
            return (k >= 0 && k < static_cast<int>(fv.size())) ? fv[static_cast<std::size_t>(k)]
                                                               : std::int64_t{0};
        };
        auto choose = [](int a, int b) {
            std::int64_t r = 1;
            for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
            return r;
        };
        for (int k = -1; k <= n - 1; ++k) CHECK(get(k) + get(n - k - 2) == choose(n, k + 1));
    }
}

TEST_CASE("neighborliness") {
    CHECK(neighborliness(atlas::cp2_9()) == 3);
    CHECK(neighborliness(boundary_of_simplex(5)) == 4);
    CHECK(neighborliness(atlas::rp2_6()) == 2);
}
