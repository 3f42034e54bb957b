#include "doctest.h"
#include "qpt/atlas.hpp"
#include "qpt/homology.hpp"
#include "qpt/iso.hpp"

using namespace qpt;

TEST_CASE("rp2_6 entry") {
    Complex rp2 = atlas::rp2_6();
    CHECK(rp2.facet_count() == 10);
    CHECK(f_vector(rp2).counts() == std::vector<std::int64_t>{6, 15, 10});
    CHECK_FALSE(check_complementarity(rp2).has_value());
}

TEST_CASE("cp2_9 entry") {
    Complex cp = atlas::cp2_9();
    CHECK(cp.facet_count() == 36);
    CHECK(cp.dim() == 4);
    CHECK(euler_characteristic(cp) == 3);
    CHECK_FALSE(check_complementarity(cp).has_value());
    CHECK(is_homology_manifold(cp, 4, Coeff::Z()));

    // a 3-subset has all its 4-element supersets in the complex iff it is a
    // non-special line
    auto lines_status = [&](Mask m) {
        for (int v = 1; v <= 9; ++v) {
            Mask ext = m | (Mask{1} << (v - 1));
            if (ext == m) continue;
            if (!cp.is_simplex(ext)) return false;
        }
        return true;
    };
    int count = 0;
    for (Mask m = first_ksubset(3); m != 0 && mask_subset(m, full_mask(9));
         m = next_ksubset(m))
        if (lines_status(m)) ++count;
    CHECK(count == 9);  // the nine non-special lines
    for (int t = 0; t < 3; ++t) CHECK_FALSE(lines_status(atlas::cp2_9_special_line(t)));
}

TEST_CASE("table spheres") {
    CHECK(atlas::table_sphere("L1").facet_count() == 20);
    CHECK(atlas::table_sphere("L9").facet_count() == 35);
    CHECK_THROWS_AS(atlas::table_sphere("L10"), UnknownEntry);

    for (const auto& name : atlas::table_sphere_names()) {
        Complex K = atlas::table_sphere(name);
        CHECK(is_weak_pseudomanifold(K, 3));
        CHECK(is_invariant(K, atlas::c5_on_10()));
    }
    CHECK_FALSE(is_orientable(atlas::table_sphere("L1star"), 3));
    CHECK_FALSE(is_orientable(atlas::table_sphere("L2star"), 3));
}

TEST_CASE("mandatory subcomplexes") {
    auto s3 = atlas::mandatory_subcomplex("S3");
    CHECK(s3.facets.size() == 4);
    CHECK(s3.group.order() == 6);

    auto c6 = atlas::mandatory_subcomplex("C6");
    CHECK(c6.facets.size() == 10);
    CHECK(c6.group.order() == 6);

    auto c2c2 = atlas::mandatory_subcomplex("C2xC2");
    CHECK(c2c2.facets.size() == 12);
    CHECK(c2c2.group.order() == 4);

    auto c5 = atlas::mandatory_subcomplex("C5_fixed5");
    CHECK(c5.facets.size() == 16);
    CHECK(c5.group.order() == 5);
    CHECK_THROWS_AS(atlas::mandatory_subcomplex("C9"), UnknownEntry);

    // each mandatory family is a consistent weak-pseudomanifold fragment:
    // ridge degrees at most two and no covering facet pair
    for (const char* name : {"S3", "C6", "C2xC2", "C5_fixed5"}) {
        auto mc = atlas::mandatory_subcomplex(name);
        std::vector<Mask> closed;
        for (Mask m : mc.facets)
            for (Mask img : mask_orbit(mc.group, m)) closed.push_back(img);
        std::sort(closed.begin(), closed.end());
        closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
        std::map<Mask, int> deg;
        for (Mask f : closed)
            for (Mask rest = f; rest != 0; rest &= rest - 1) ++deg[f & ~(rest & -rest)];
        for (const auto& [r, dcount] : deg) CHECK(dcount <= 2);
        for (std::size_t i = 0; i < closed.size(); ++i)
            for (std::size_t j = i; j < closed.size(); ++j)
                CHECK((closed[i] | closed[j]) != full_mask(15));
    }

    // the C5 case closes to 20 forced facets
    auto mc = atlas::mandatory_subcomplex("C5_fixed5");
    std::set<Mask> closed;
    for (Mask m : mc.facets)
        for (Mask img : mask_orbit(mc.group, m)) closed.insert(img);
    CHECK(closed.size() == 20);
}
