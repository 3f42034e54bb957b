#include "qpt/atlas.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace qpt {
namespace atlas {

namespace {

Mask mk(std::initializer_list<int> verts) {
    return mask_from_vertices(std::vector<int>(verts));
}

std::vector<Mask> close_under(const PermGroup& G, const std::vector<Mask>& reps) {
    std::vector<Mask> out;
    for (Mask m : reps)
        for (Mask img : mask_orbit(G, m)) out.push_back(img);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

Complex rp2_6() {
    std::vector<Mask> facets = {mk({1, 2, 3}), mk({1, 3, 4}), mk({1, 4, 5}), mk({1, 5, 6}),
                                mk({1, 2, 6}), mk({2, 3, 5}), mk({3, 4, 6}), mk({2, 4, 5}),
                                mk({3, 5, 6}), mk({2, 4, 6})};
    return Complex::from_facets(6, std::move(facets));
}

namespace {

int point_slot(int x, int y) { return 3 * y + x + 1; }  // 1-based slot

// all 12 lines of the affine plane over F_3: a 3-point set is a line iff the
// coordinate sums vanish mod 3
std::vector<std::array<std::pair<int, int>, 3>> all_lines() {
    std::vector<std::pair<int, int>> pts;
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 3; ++x) pts.emplace_back(x, y);
    std::vector<std::array<std::pair<int, int>, 3>> lines;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
            for (std::size_t c = b + 1; c < pts.size(); ++c) {
                int sx = pts[a].first + pts[b].first + pts[c].first;
                int sy = pts[a].second + pts[b].second + pts[c].second;
                if (sx % 3 == 0 && sy % 3 == 0) lines.push_back({pts[a], pts[b], pts[c]});
            }
    return lines;
}

Mask line_mask(const std::array<std::pair<int, int>, 3>& line) {
    Mask m = 0;
    for (const auto& [x, y] : line) m |= Mask{1} << (point_slot(x, y) - 1);
    return m;
}

bool is_special(const std::array<std::pair<int, int>, 3>& line) {
    return line[0].second == line[1].second && line[1].second == line[2].second;
}

}  // namespace

Mask cp2_9_special_line(int t) {
    Mask m = 0;
    for (int x = 0; x < 3; ++x) m |= Mask{1} << (point_slot(x, t) - 1);
    return m;
}

Complex cp2_9() {
    std::vector<Mask> facets;
    auto lines = all_lines();
    std::vector<Mask> nonspecial;
    for (const auto& line : lines)
        if (!is_special(line)) nonspecial.push_back(line_mask(line));
    // pairs of intersecting non-special lines
    for (std::size_t i = 0; i < nonspecial.size(); ++i)
        for (std::size_t j = i + 1; j < nonspecial.size(); ++j)
            if ((nonspecial[i] & nonspecial[j]) != 0)
                facets.push_back(nonspecial[i] | nonspecial[j]);
    // l_t plus l_{t+1} minus one vertex
    for (int t = 0; t < 3; ++t) {
        Mask lt = cp2_9_special_line(t);
        Mask lt1 = cp2_9_special_line((t + 1) % 3);
        for (Mask rest = lt1; rest != 0; rest &= rest - 1)
            facets.push_back(lt | (lt1 & ~(rest & -rest)));
    }
    return Complex::from_facets(9, std::move(facets));
}

PermGroup c5_on_10() {
    return PermGroup::from_generators(
        10, {Permutation::parse_cycles("(1 2 3 4 5)(6 7 8 9 10)", 10)});
}

Complex table_sphere(const std::string& name) {
    static const std::map<std::string, std::vector<std::vector<int>>> tables = {
        {"L1", {{1, 2, 3, 6}, {1, 2, 4, 6}, {1, 3, 4, 6}, {2, 3, 4, 6}}},
        {"L2", {{1, 2, 6, 7}, {2, 3, 6, 7}, {3, 4, 6, 7}, {4, 5, 6, 7}, {1, 5, 6, 7}}},
        {"L3", {{1, 3, 6, 7}, {3, 5, 6, 7}, {2, 5, 6, 7}, {2, 4, 6, 7}, {1, 4, 6, 7}}},
        {"L4", {{1, 2, 6, 7}, {2, 3, 6, 7}, {1, 3, 6, 7}, {1, 3, 5, 6}, {2, 3, 5, 6}}},
        {"L5",
         {{1, 2, 6, 7}, {2, 3, 6, 7}, {3, 4, 6, 7}, {1, 4, 6, 7}, {1, 3, 4, 6}, {1, 3, 5, 6}}},
        {"L6",
         {{1, 2, 6, 7}, {2, 3, 6, 7}, {3, 4, 6, 7}, {1, 4, 6, 7}, {1, 4, 5, 6}, {3, 4, 5, 6}}},
        {"L7",
         {{1, 3, 6, 7}, {2, 3, 6, 7}, {2, 4, 6, 7}, {1, 4, 6, 7}, {1, 2, 4, 6}, {2, 3, 5, 6}}},
        {"L8",
         {{1, 2, 6, 7}, {2, 3, 6, 7}, {1, 3, 6, 7}, {2, 3, 6, 8}, {3, 5, 6, 8}, {2, 5, 6, 8}}},
        {"L9",
         {{1, 2, 6, 7},
          {2, 3, 6, 7},
          {3, 4, 6, 7},
          {1, 4, 6, 7},
          {1, 3, 6, 8},
          {3, 5, 6, 8},
          {1, 5, 6, 8}}},
        {"M1",
         {{1, 2, 3, 6}, {1, 2, 5, 6}, {1, 3, 6, 7}, {2, 3, 6, 8}, {1, 6, 7, 9}, {3, 6, 7, 9}}},
        {"M2",
         {{1, 2, 3, 6},
          {1, 2, 5, 6},
          {2, 4, 6, 7},
          {2, 3, 6, 8},
          {2, 4, 6, 8},
          {3, 6, 7, 9},
          {5, 6, 7, 9}}},
        {"M3",
         {{1, 2, 3, 6},
          {1, 2, 5, 6},
          {1, 3, 6, 7},
          {1, 5, 6, 7},
          {4, 5, 6, 8},
          {4, 6, 7, 8},
          {5, 6, 7, 8}}},
        {"M4",
         {{1, 2, 3, 6},
          {1, 4, 5, 6},
          {1, 2, 6, 7},
          {1, 3, 6, 8},
          {4, 5, 6, 8},
          {1, 6, 7, 9},
          {2, 6, 7, 9}}},
        {"L1star",
         {{1, 2, 6, 7}, {2, 4, 6, 7}, {3, 4, 6, 7}, {1, 3, 6, 7}, {1, 2, 5, 6}, {2, 3, 4, 6}}},
        {"L2star",
         {{1, 2, 6, 7},
          {2, 4, 6, 7},
          {3, 4, 6, 7},
          {1, 3, 6, 7},
          {2, 3, 6, 8},
          {3, 4, 6, 8},
          {2, 4, 6, 8}}},
    };
    auto it = tables.find(name);
    if (it == tables.end()) throw UnknownEntry("unknown table entry: " + name);
    PermGroup G = c5_on_10();
    std::vector<Mask> reps;
    for (const auto& verts : it->second) reps.push_back(mask_from_vertices(verts, 10));
    return Complex::from_facets(10, close_under(G, reps));
}

std::vector<std::string> table_sphere_names() {
    return {"L1", "L2", "L3", "L4", "L5", "L6", "L7",
            "L8", "L9", "M1", "M2", "M3", "M4", "L1star", "L2star"};
}

namespace {

// left-multiplication action of A5 (natural degree 5) on cosets of a Klein
// four-subgroup; 15 cosets ordered by their minimal member
struct S5Perm {
    std::array<int, 5> img;
    bool operator<(const S5Perm& o) const { return img < o.img; }
    bool operator==(const S5Perm& o) const { return img == o.img; }
    S5Perm after(const S5Perm& first) const {  // this ∘ first
        S5Perm r{};
        for (int i = 0; i < 5; ++i) r.img[static_cast<std::size_t>(i)] =
            img[static_cast<std::size_t>(first.img[static_cast<std::size_t>(i)])];
        return r;
    }
};

std::vector<S5Perm> a5_elements() {
    std::array<int, 5> base{0, 1, 2, 3, 4};
    std::vector<S5Perm> out;
    std::array<int, 5> p = base;
    std::sort(p.begin(), p.end());
    do {
        int inv = 0;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++inv;
        if (inv % 2 == 0) out.push_back(S5Perm{p});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;  // lexicographically sorted
}

Permutation coset_action(const std::vector<S5Perm>& elems,
                         const std::vector<std::vector<int>>& cosets, const S5Perm& g) {
    // cosets listed by their minimal element index; coset_of[e] = coset id
    std::vector<int> coset_of(elems.size(), -1);
    for (std::size_t c = 0; c < cosets.size(); ++c)
        for (int e : cosets[c]) coset_of[static_cast<std::size_t>(e)] = static_cast<int>(c);
    std::vector<std::uint8_t> image(15);
    for (std::size_t c = 0; c < cosets.size(); ++c) {
        const S5Perm& rep = elems[static_cast<std::size_t>(cosets[c][0])];
        S5Perm moved = g.after(rep);
        auto it = std::lower_bound(elems.begin(), elems.end(), moved);
        image[c] = static_cast<std::uint8_t>(coset_of[static_cast<std::size_t>(
            std::distance(elems.begin(), it))]);
    }
    return Permutation(std::move(image));
}

}  // namespace

PermGroup group_a5_15() {
    static PermGroup cached = [] {
        auto elems = a5_elements();
        // the Klein four-subgroup {e, (01)(23), (02)(13), (03)(12)}
        std::vector<S5Perm> v4 = {S5Perm{{0, 1, 2, 3, 4}}, S5Perm{{1, 0, 3, 2, 4}},
                                  S5Perm{{2, 3, 0, 1, 4}}, S5Perm{{3, 2, 1, 0, 4}}};
        std::vector<int> coset_id(elems.size(), -1);
        std::vector<std::vector<int>> cosets;
        for (std::size_t e = 0; e < elems.size(); ++e) {
            if (coset_id[e] >= 0) continue;
            std::vector<int> members;
            for (const auto& v : v4) {
                S5Perm m = elems[e].after(v);  // e * v
                auto it = std::lower_bound(elems.begin(), elems.end(), m);
                int idx = static_cast<int>(std::distance(elems.begin(), it));
                coset_id[static_cast<std::size_t>(idx)] = static_cast<int>(cosets.size());
                members.push_back(idx);
            }
            std::sort(members.begin(), members.end());
            cosets.push_back(std::move(members));
        }
        S5Perm a{{1, 2, 3, 4, 0}};  // (0 1 2 3 4)
        S5Perm b{{1, 2, 0, 3, 4}};  // (0 1 2)
        return PermGroup::from_generators(
            15, {coset_action(elems, cosets, a), coset_action(elems, cosets, b)});
    }();
    return cached;
}

PermGroup group_a4_15() {
    static PermGroup cached = [] {
        // regular action of A4 on its 12 elements plus the quotient C3 on
        // the 3 fixed-block points
        std::array<int, 4> p{0, 1, 2, 3};
        std::vector<std::array<int, 4>> elems;
        std::sort(p.begin(), p.end());
        do {
            int inv = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++inv;
            if (inv % 2 == 0) elems.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));

        auto compose = [](const std::array<int, 4>& f, const std::array<int, 4>& g) {
            std::array<int, 4> r{};
            for (int i = 0; i < 4; ++i) r[static_cast<std::size_t>(i)] =
                f[static_cast<std::size_t>(g[static_cast<std::size_t>(i)])];
            return r;
        };
        auto find = [&](const std::array<int, 4>& e) {
            return static_cast<int>(std::distance(
                elems.begin(), std::lower_bound(elems.begin(), elems.end(), e)));
        };
        auto regular = [&](const std::array<int, 4>& g, bool cycle_tail) {
            std::vector<std::uint8_t> image(15);
            for (std::size_t e = 0; e < elems.size(); ++e)
                image[e] = static_cast<std::uint8_t>(find(compose(g, elems[e])));
            if (cycle_tail) {
                image[12] = 13;
                image[13] = 14;
                image[14] = 12;
            } else {
                image[12] = 12;
                image[13] = 13;
                image[14] = 14;
            }
            return Permutation(std::move(image));
        };
        std::array<int, 4> t{1, 2, 0, 3};  // (0 1 2), outside V4
        std::array<int, 4> v{1, 0, 3, 2};  // (0 1)(2 3), inside V4
        return PermGroup::from_generators(15, {regular(t, true), regular(v, false)});
    }();
    return cached;
}

PermGroup group_c6xc2_15() {
    return PermGroup::from_generators(
        15, {Permutation::parse_cycles("(1 3 5 7 9 11)(2 4 6 8 10 12)(13 14 15)", 15),
             Permutation::parse_cycles("(1 2)(3 4)(5 6)(7 8)(9 10)(11 12)", 15)});
}

PermGroup group_c7_15() {
    return PermGroup::from_generators(
        15, {Permutation::parse_cycles("(1 2 3 4 5 6 7)(8 9 10 11 12 13 14)", 15)});
}

PermGroup group_s3_15() {
    return PermGroup::from_generators(
        15, {Permutation::parse_cycles("(1 2 3)(4 5 6)(7 8 9)(10 11 12)(13 14 15)", 15),
             Permutation::parse_cycles("(1 4)(2 6)(3 5)(7 8)(10 11)(13 14)", 15)});
}

PermGroup group_c6_15() {
    return PermGroup::from_generators(
        15, {Permutation::parse_cycles("(1 2 3 4 5 6)(7 8 9 10 11 12)(13 14 15)", 15)});
}

PermGroup group_c2xc2_15() {
    return PermGroup::from_generators(
        15, {Permutation::parse_cycles("(1 2)(3 4)(5 6)(7 8)(9 10)(11 12)", 15),
             Permutation::parse_cycles("(1 3)(2 4)(5 7)(6 8)(9 11)(10 12)", 15)});
}

PermGroup group_c5_fixed5_15() {
    return PermGroup::from_generators(
        15, {Permutation::parse_cycles("(1 2 3 4 5)(6 7 8 9 10)", 15)});
}

PermGroup group_c5_free_15() {
    return PermGroup::from_generators(
        15, {Permutation::parse_cycles("(1 2 3 4 5)(6 7 8 9 10)(11 12 13 14 15)", 15)});
}

MandatoryCase mandatory_subcomplex(const std::string& name) {
    MandatoryCase out;
    auto mk15 = [](std::initializer_list<int> verts) {
        return mask_from_vertices(std::vector<int>(verts), 15);
    };
    if (name == "S3") {
        out.group = group_s3_15();
        out.facets = {mk15({1, 2, 3, 4, 5, 6, 7, 8, 9}), mk15({1, 2, 3, 4, 5, 6, 10, 11, 12}),
                      mk15({1, 2, 3, 7, 8, 9, 10, 11, 12}),
                      mk15({4, 5, 6, 7, 8, 9, 10, 11, 12})};
        return out;
    }
    if (name == "C6") {
        out.group = group_c6_15();
        out.facets = {mk15({1, 2, 3, 4, 5, 6, 7, 9, 11}),    mk15({1, 2, 3, 4, 5, 6, 8, 10, 12}),
                      mk15({1, 3, 5, 7, 8, 9, 10, 11, 12}),  mk15({2, 4, 6, 7, 8, 9, 10, 11, 12}),
                      mk15({1, 2, 4, 5, 7, 8, 10, 11, 13}),  mk15({2, 3, 5, 6, 8, 9, 11, 12, 13}),
                      mk15({1, 2, 3, 4, 5, 6, 8, 11, 13}),   mk15({1, 2, 3, 4, 5, 6, 9, 12, 13}),
                      mk15({2, 5, 7, 8, 9, 10, 11, 12, 13}), mk15({3, 6, 7, 8, 9, 10, 11, 12, 13})};
        return out;
    }
    if (name == "C2xC2") {
        out.group = group_c2xc2_15();
        out.facets = {mk15({1, 2, 3, 4, 5, 6, 7, 8, 15}),    mk15({1, 2, 3, 4, 5, 6, 7, 8, 13}),
                      mk15({5, 6, 7, 8, 9, 10, 11, 12, 13}), mk15({5, 6, 7, 8, 9, 10, 11, 12, 14}),
                      mk15({1, 2, 3, 4, 9, 10, 11, 12, 14}), mk15({1, 2, 3, 4, 9, 10, 11, 12, 15}),
                      mk15({1, 2, 3, 4, 5, 6, 9, 10, 14}),   mk15({1, 2, 3, 4, 5, 6, 9, 10, 15}),
                      mk15({1, 2, 5, 6, 7, 8, 9, 10, 15}),   mk15({1, 2, 5, 6, 7, 8, 9, 10, 13}),
                      mk15({1, 2, 5, 6, 9, 10, 11, 12, 13}), mk15({1, 2, 5, 6, 9, 10, 11, 12, 14})};
        return out;
    }
    if (name == "C5_fixed5") {
        out.group = group_c5_fixed5_15();
        Mask d1 = mk15({1, 2, 3, 4, 5});
        Mask d2 = mk15({6, 7, 8, 9, 10});
        Mask d3 = mk15({11, 12, 13, 14, 15});
        auto join_facets = [&](Mask a, Mask b) {
            for (Mask rest = b; rest != 0; rest &= rest - 1)
                out.facets.push_back(a | (b & ~(rest & -rest)));
        };
        join_facets(d1, d2);
        join_facets(d2, d3);
        join_facets(d3, d1);
        out.facets.push_back(mk15({1, 2, 3, 4, 6, 7, 8, 9, 11}));
        return out;
    }
    throw UnknownEntry("unknown mandatory case: " + name);
}

}  // namespace atlas
}  // namespace qpt
