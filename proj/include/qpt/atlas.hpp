#pragma once

#include <string>
#include <vector>

#include "qpt/complex.hpp"
#include "qpt/group.hpp"

namespace qpt {
namespace atlas {

// The 6-vertex triangulation of the real projective plane (icosahedron
// quotient).
Complex rp2_6();

// The 9-vertex triangulation of the complex projective plane. Vertices are
// the points (x, y) of the affine plane over F_3 at slot 3y + x + 1; the
// special lines are {y = 0}, {y = 1}, {y = 2} in this cyclic order.
Complex cp2_9();

// Special line of cp2_9: l_t = {y = t}, t in {0, 1, 2}.
Mask cp2_9_special_line(int t);

// The C5-invariant 10-vertex 3-complexes given by orbit representatives
// under (1 2 3 4 5)(6 7 8 9 10): the homology spheres L1..L9 and M1..M4 and
// the two non-orientable pseudomanifolds L1star, L2star.
// Throws UnknownEntry for any other name.
Complex table_sphere(const std::string& name);
std::vector<std::string> table_sphere_names();

PermGroup c5_on_10();  // (1 2 3 4 5)(6 7 8 9 10) on 10 slots

struct MandatoryCase {
    PermGroup group;
    std::vector<Mask> facets;  // as transcribed; not yet closed under the group
};

// The search configurations with forced facets: "S3", "C6", "C2xC2",
// "C5_fixed5". Throws UnknownEntry otherwise.
MandatoryCase mandatory_subcomplex(const std::string& name);

// Subgroups of S15 used by the searches, on 15 slots.
PermGroup group_a5_15();       // transitive (coset action on the 15 cosets
                               // of a Klein four-subgroup)
PermGroup group_a4_15();       // orbits 12, 3
PermGroup group_c6xc2_15();    // orbits 12, 3
PermGroup group_c7_15();       // (1..7)(8..14), orbits 7, 7, 1
PermGroup group_s3_15();       // orbits 6, 3, 3, 3
PermGroup group_c6_15();       // orbits 6, 6, 3
PermGroup group_c2xc2_15();    // orbits 2x6, 3 fixed
PermGroup group_c5_fixed5_15();  // (1..5)(6..10), 5 fixed points
PermGroup group_c5_free_15();    // (1..5)(6..10)(11..15)

}  // namespace atlas
}  // namespace qpt
