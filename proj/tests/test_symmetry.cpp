#include <set>

#include "doctest.h"
#include "qpt/atlas.hpp"
#include "qpt/group.hpp"
#include "qpt/iso.hpp"

using namespace qpt;

TEST_CASE("cycle notation parser") {
    Permutation p = Permutation::parse_cycles("(1 2 3)(4 5 6)", 6);
    CHECK(p.apply(0) == 1);
    CHECK(p.apply(2) == 0);
    CHECK(p.apply(3) == 4);
    CHECK(p.order() == 3);

    // commas, omitted fixed points
    Permutation q = Permutation::parse_cycles("(1,2)", 5);
    CHECK(q.apply(0) == 1);
    CHECK(q.apply(2) == 2);
    CHECK(q.order() == 2);

    CHECK(Permutation::parse_cycles("", 4).is_identity());
    CHECK_THROWS_AS(Permutation::parse_cycles("(1 9)", 5), ParseError);
    CHECK_THROWS_AS(Permutation::parse_cycles("(1 2)(2 3)", 5), ParseError);
    CHECK_THROWS_AS(Permutation::parse_cycles("1 2 3", 5), ParseError);

    // round trip
    Permutation r = Permutation::parse_cycles("(1 4)(2 6)(3 5)(7 8)(10 11)(13 14)", 15);
    CHECK(Permutation::parse_cycles(r.to_cycles(), 15) == r);
}

TEST_CASE("group closure") {
    PermGroup c5 = PermGroup::from_generators(
        15, {Permutation::parse_cycles("(1 2 3 4 5)(6 7 8 9 10)(11 12 13 14 15)", 15)});
    CHECK(c5.order() == 5);

    PermGroup s3 = atlas::group_s3_15();
    CHECK(s3.order() == 6);
    CHECK_FALSE(s3.is_abelian());
    CHECK(group_structure_name(s3) == "S3");

    PermGroup c6 = atlas::group_c6_15();
    CHECK(c6.order() == 6);
    CHECK(c6.is_abelian());
    CHECK(group_structure_name(c6) == "C6");

    CHECK_THROWS_AS(PermGroup::from_generators(
                        15, {Permutation::parse_cycles("(1 2 3 4 5 6 7)(8 9 10 11 12 13 14)", 15)},
                        5),
                    GroupTooLarge);
}

TEST_CASE("atlas group embeddings") {
    PermGroup a5 = atlas::group_a5_15();
    CHECK(a5.order() == 60);
    CHECK(group_structure_name(a5) == "A5");
    auto orbits = vertex_orbits(a5);
    REQUIRE(orbits.size() == 1);
    CHECK(mask_card(orbits[0]) == 15);

    PermGroup a4 = atlas::group_a4_15();
    CHECK(a4.order() == 12);
    CHECK(group_structure_name(a4) == "A4");
    auto a4_orbits = vertex_orbits(a4);
    std::multiset<int> lens;
    for (Mask o : a4_orbits) lens.insert(mask_card(o));
    CHECK(lens == std::multiset<int>{3, 12});

    PermGroup c6c2 = atlas::group_c6xc2_15();
    CHECK(c6c2.order() == 12);
    CHECK(group_structure_name(c6c2) == "C6xC2");
    lens.clear();
    for (Mask o : vertex_orbits(c6c2)) lens.insert(mask_card(o));
    CHECK(lens == std::multiset<int>{3, 12});

    PermGroup c7 = atlas::group_c7_15();
    CHECK(c7.order() == 7);
    lens.clear();
    for (Mask o : vertex_orbits(c7)) lens.insert(mask_card(o));
    CHECK(lens == std::multiset<int>{1, 7, 7});

    lens.clear();
    for (Mask o : vertex_orbits(atlas::group_s3_15())) lens.insert(mask_card(o));
    CHECK(lens == std::multiset<int>{3, 3, 3, 6});

    PermGroup trivial = PermGroup::trivial(15);
    CHECK(vertex_orbits(trivial).size() == 15);
}

TEST_CASE("orbits on k-subsets") {
    PermGroup a5 = atlas::group_a5_15();
    auto o9 = orbits_on_ksubsets(a5, 9);
    std::size_t total = 0;
    for (const auto& orbit : o9.orbits) {
        total += orbit.size();
        CHECK(60 % orbit.size() == 0);
    }
    CHECK(total == 5005);
    CHECK(o9.orbits.size() == 103);

    PermGroup trivial = PermGroup::trivial(6);
    auto o2 = orbits_on_ksubsets(trivial, 2);
    CHECK(o2.orbits.size() == 15);
    for (const auto& orbit : o2.orbits) CHECK(orbit.size() == 1);

    PermGroup c5 = atlas::c5_on_10();
    auto o4 = orbits_on_ksubsets(c5, 4);
    CHECK(o4.orbits.size() == 42);
    for (const auto& orbit : o4.orbits) CHECK(orbit.size() == 5);

    // orbit-stabilizer spot check on the A5 orbits
    for (std::size_t i = 0; i < 5; ++i) {
        Mask rep = o9.representatives[i];
        std::size_t stab = 0;
        for (const auto& g : a5.elements())
            if (g.apply_mask(rep) == rep) ++stab;
        CHECK(stab * o9.orbits[i].size() == a5.order());
    }
}

TEST_CASE("invariance") {
    Complex cp = atlas::cp2_9();
    PermGroup sym = symmetry_group(cp);
    CHECK(sym.order() == 54);
    CHECK(is_invariant(cp, sym));

    // some transposition violating the symmetry exists
    bool found_violation = false;
    for (int a = 0; a < 9 && !found_violation; ++a)
        for (int b = a + 1; b < 9 && !found_violation; ++b) {
            std::vector<std::uint8_t> img(9);
            for (int i = 0; i < 9; ++i) img[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
            std::swap(img[static_cast<std::size_t>(a)], img[static_cast<std::size_t>(b)]);
            PermGroup g = PermGroup::from_generators(9, {Permutation(img)});
            if (!is_invariant(cp, g)) found_violation = true;
        }
    CHECK(found_violation);

    CHECK(is_invariant(cp, PermGroup::trivial(9)));
    for (const auto& name : atlas::table_sphere_names())
        CHECK(is_invariant(atlas::table_sphere(name), atlas::c5_on_10()));
}

TEST_CASE("fixed point complex") {
    // boundary of a tetrahedron under the reflection (1 2): the fixed circle
    Complex b3 = Complex::from_facets(
        4, {mask_from_vertices({1, 2, 3}, 4), mask_from_vertices({1, 2, 4}, 4),
            mask_from_vertices({1, 3, 4}, 4), mask_from_vertices({2, 3, 4}, 4)});
    PermGroup c2 = PermGroup::from_generators(4, {Permutation::parse_cycles("(1 2)", 4)});
    FixedPointComplex fp = fixed_point_complex(b3, c2);
    CHECK(fp.labels.size() == 3);
    CHECK(fp.quotient.facet_count() == 3);
    CHECK(f_vector(fp.quotient).counts() == std::vector<std::int64_t>{3, 3});

    // trivial group: the quotient is the complex itself
    Complex rp2 = atlas::rp2_6();
    FixedPointComplex fpt = fixed_point_complex(rp2, PermGroup::trivial(6));
    CHECK(fpt.quotient == rp2);

    PermGroup bad = PermGroup::from_generators(6, {Permutation::parse_cycles("(1 2)", 6)});
    CHECK_THROWS_AS(fixed_point_complex(rp2, bad), NotInvariant);
}

TEST_CASE("group automorphisms") {
    PermGroup c5 = atlas::c5_on_10();
    CHECK(group_automorphisms(c5).size() == 4);

    PermGroup s3 = atlas::group_s3_15();
    CHECK(group_automorphisms(s3).size() == 6);  // Inn(S3) = S3

    PermGroup a5 = atlas::group_a5_15();
    CHECK(group_automorphisms(a5).size() == 120);
}
