#include <algorithm>

#include "doctest.h"
#include "qpt/atlas.hpp"
#include "qpt/iso.hpp"
#include "qpt/rng.hpp"

using namespace qpt;

namespace {

Complex boundary_of_simplex(int nverts) {
    std::vector<Mask> facets;
    Mask full = full_mask(nverts);
    for (Mask rest = full; rest != 0; rest &= rest - 1) facets.push_back(full & ~(rest & -rest));
    return Complex::from_facets(nverts, std::move(facets));
}

Permutation random_perm(int n, Rng& rng) {
    std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    for (int i = n - 1; i > 0; --i)
        std::swap(img[static_cast<std::size_t>(i)],
                  img[rng.below(static_cast<std::uint64_t>(i + 1))]);
    return Permutation(std::move(img));
}

Complex relabel(const Complex& K, const Permutation& p) {
    std::vector<Mask> facets;
    for (Mask f : K.facets()) facets.push_back(p.apply_mask(f));
    return Complex::from_facets(K.slot_count(), std::move(facets));
}

}  // namespace

TEST_CASE("canonical key invariance") {
    Rng rng(4242);
    for (const char* name : {"L2", "L7", "M3", "L1star"}) {
        Complex K = atlas::table_sphere(name);
        CanonicalKey key = canonical_key(K);
        for (int trial = 0; trial < 100; ++trial) {
            Permutation p = random_perm(K.slot_count(), rng);
            CHECK(canonical_key(relabel(K, p)) == key);
        }
    }
    CHECK_FALSE(canonical_key(atlas::cp2_9()) == canonical_key(atlas::rp2_6()));
}

TEST_CASE("find_isomorphism") {
    Complex cp = atlas::cp2_9();
    auto self = find_isomorphism(cp, cp);
    REQUIRE(self.has_value());

    Rng rng(99);
    Permutation p = random_perm(9, rng);
    Complex moved = relabel(cp, p);
    auto iso = find_isomorphism(cp, moved);
    REQUIRE(iso.has_value());
    CHECK(relabel(cp, *iso) == moved);

    // octahedron (a 2-sphere on 6 vertices) vs rp2_6: different f-vectors
    std::vector<Mask> oct;
    for (int a : {1, 2})
        for (int b : {3, 4})
            for (int c : {5, 6}) oct.push_back(mask_from_vertices({a, b, c}, 6));
    Complex octahedron = Complex::from_facets(6, std::move(oct));
    CHECK_FALSE(find_isomorphism(atlas::rp2_6(), octahedron).has_value());
}

TEST_CASE("symmetry groups of the standard complexes") {
    CHECK(symmetry_group(atlas::cp2_9()).order() == 54);
    CHECK(symmetry_group(boundary_of_simplex(5)).order() == 120);
    CHECK(symmetry_group(atlas::rp2_6()).order() == 60);

    PermGroup sym = symmetry_group(atlas::cp2_9());
    for (const auto& g : sym.elements())
        CHECK(is_invariant(atlas::cp2_9(), PermGroup::from_generators(9, {g})));
}

TEST_CASE("certificate packing") {
    CHECK(pack_certificate({0, 1, 0, 0, 0, 0}) == 1);
    // the transitive triangulation's published distribution
    std::array<std::int64_t, 6> m{1170, 1740, 870, 360, 60, 30};
    CHECK(pack_certificate(m) == 8448378513286860ull);

    // independent evaluation of the packing, highest field first
    unsigned __int128 horner = 0;
    for (int i = 5; i >= 1; --i) {
        horner <<= 12;
        horner += static_cast<unsigned __int128>(m[static_cast<std::size_t>(i)]);
    }
    CHECK(static_cast<std::uint64_t>(horner) == pack_certificate(m));
}

TEST_CASE("weak G-isomorphism") {
    PermGroup c5 = atlas::c5_on_10();
    Complex l2 = atlas::table_sphere("L2");
    Complex l3 = atlas::table_sphere("L3");

    auto self = find_weak_G_isomorphism(l2, l2, c5);
    REQUIRE(self.has_value());

    // the published automorphism-twist relabeling of L2
    Permutation twist = Permutation::parse_cycles("(2 3 5 4)(7 8 10 9)", 10);
    Complex l2_twisted = relabel(l2, twist);
    CHECK(is_invariant(l2_twisted, c5));
    auto wiso = find_weak_G_isomorphism(l2, l2_twisted, c5);
    REQUIRE(wiso.has_value());
    // phi is g -> g^2 or its inverse, never the identity
    CHECK(wiso->group_automorphism[1] != 1);

    CHECK_FALSE(find_weak_G_isomorphism(l2, l3, c5).has_value());

    // trivial group: coincides with plain isomorphism
    PermGroup trivial = PermGroup::trivial(10);
    CHECK(find_weak_G_isomorphism(l2, l2, trivial).has_value());
    CHECK_FALSE(find_weak_G_isomorphism(l2, atlas::table_sphere("L1"), trivial).has_value());

    PermGroup not_inv = PermGroup::from_generators(
        10, {Permutation::parse_cycles("(1 2)", 10)});
    CHECK_THROWS_AS(find_weak_G_isomorphism(l2, l2, not_inv), NotInvariant);
}

TEST_CASE("group_by_isomorphism") {
    CHECK(group_by_isomorphism({}).classes.empty());

    Rng rng(31337);
    std::vector<Complex> list;
    Complex l2 = atlas::table_sphere("L2");
    Complex l5 = atlas::table_sphere("L5");
    for (int i = 0; i < 3; ++i) list.push_back(relabel(l2, random_perm(10, rng)));
    list.push_back(relabel(l5, random_perm(10, rng)));
    list.push_back(relabel(l2, random_perm(10, rng)));
    list.push_back(relabel(l5, random_perm(10, rng)));
    IsoClasses classes = group_by_isomorphism(list);
    REQUIRE(classes.classes.size() == 2);
    CHECK(classes.classes[0] == std::vector<std::size_t>{0, 1, 2, 4});
    CHECK(classes.classes[1] == std::vector<std::size_t>{3, 5});
}

TEST_CASE("codim2 histogram requires pure input") {
    CHECK_THROWS_AS(m_distribution(atlas::rp2_6()), ShapeMismatch);
    auto hist = codim2_degree_histogram(atlas::cp2_9(), 4);
    std::int64_t total = 0;
    for (auto [deg, cnt] : hist) total += cnt;
    CHECK(total == 84);  // one entry per 2-face
}
