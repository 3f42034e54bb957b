#include "doctest.h"
#include "qpt/atlas.hpp"
#include "qpt/dat_io.hpp"

using namespace qpt;

TEST_CASE("dat format") {
    auto loaded = load_dat("111111111000000\n");
    REQUIRE(loaded.size() == 1);
    REQUIRE(loaded[0].facet_count() == 1);
    CHECK(loaded[0].facets()[0] == mask_from_vertices({1, 2, 3, 4, 5, 6, 7, 8, 9}, 15));
    CHECK(loaded[0].slot_count() == 15);

    CHECK(load_dat("").empty());
    CHECK(load_dat("\n\n").empty());

    // header for non-15 slot counts
    auto ten = load_dat("n=10\n1111100000\n0000011111\n");
    REQUIRE(ten.size() == 1);
    CHECK(ten[0].slot_count() == 10);
    CHECK(ten[0].facet_count() == 2);

    // blank lines separate complexes
    auto two = load_dat("n=4\n1100\n0011\n\n1110\n");
    REQUIRE(two.size() == 2);

    CHECK_THROWS_AS(load_dat("11x1\n"), ParseError);
    CHECK_THROWS_AS(load_dat("1111\n111\n"), ParseError);
    CHECK_THROWS_AS(load_dat("n=40\n"), ParseError);

    // round trip: save(load(x)) equals the canonical form of x
    std::string text = "n=10\n" + std::string("1111010000\n0111100000\n");
    auto complexes = load_dat(text);
    std::string saved = save_dat(complexes);
    CHECK(load_dat(saved) == complexes);
    CHECK(save_dat(load_dat(saved)) == saved);

    // the 15-slot format has no header
    Complex wide = Complex::from_facets(15, {mask_from_vertices({1, 15}, 15)});
    CHECK(save_dat({wide}) == "100000000000001\n");
}

TEST_CASE("json mirror") {
    std::vector<Complex> in = {atlas::rp2_6(), atlas::table_sphere("L2")};
    // both on different slot counts would not share "n"; keep one
    in.pop_back();
    std::string text = save_json_complexes(in);
    auto out = load_json_complexes(text);
    REQUIRE(out.size() == 1);
    CHECK(out[0] == in[0]);
}
