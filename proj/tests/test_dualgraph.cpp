#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "workbench/dualgraph.hpp"

namespace {

using namespace workbench;

DualGraph one(const std::string& text) {
    DynkinType t = parse_dynkin(text);
    REQUIRE(t.components.size() == 1);
    return t.components.front();
}

}  // namespace

TEST_CASE("parse and serialize round-trip in canonical orientation") {
    CHECK(serialize(one("[3,2]")) == "[2,3]");
    CHECK(serialize(one("[2,3]")) == "[2,3]");
    CHECK(serialize(one("[3,2^5]")) == "[2^5,3]");
    CHECK(serialize(one("[2]")) == "[2]");
    CHECK(serialize(one("[2,2,2]")) == "[2^3]");
    CHECK(serialize(one("[2;[2],[2],[2^4,3]]")) == "[2;[2],[2],[2^4,3]]");
    // Branches read from the center outward, so their order is sorted but
    // their orientation is meaningful.
    CHECK(serialize(one("[2;[3,2^4],[2],[2]]")) == "[2;[2],[2],[3,2^4]]");
    CHECK(canonical_key(one("[2;[2],[2],[3,2^4]]")) != canonical_key(one("[2;[2],[2],[2^4,3]]")));
    CHECK(serialize(parse_dynkin("[3]+[3]")) == "2[3]");
    CHECK(serialize(parse_dynkin("2[3]+[4,2^2]")) == "[2^2,4]+2[3]");
    CHECK(parse_dynkin("[3]+2[2]") == parse_dynkin("[2]+[3]+[2]"));
    CHECK_THROWS_AS(parse_dynkin(""), ParseError);
}

TEST_CASE("component ordering: vertex count descending, then key") {
    const DynkinType t = parse_dynkin("[3]+[2^5,3]+[2]+[2^2,3,2]");
    REQUIRE(t.components.size() == 4);
    CHECK(serialize(t.components[0]) == "[2^5,3]");
    CHECK(serialize(t.components[1]) == "[2^2,3,2]");
    CHECK(serialize(t.components[2]) == "[2]");
    CHECK(serialize(t.components[3]) == "[3]");
}

TEST_CASE("parse errors carry the offending position") {
    CHECK_THROWS_AS(parse_dynkin("[3"), ParseError);
    CHECK_THROWS_AS(parse_dynkin("[]"), ParseError);
    CHECK_THROWS_AS(parse_dynkin("[1]"), ParseError);
    CHECK_THROWS_AS(parse_dynkin("[2^0]"), ParseError);
    CHECK_THROWS_AS(parse_dynkin("[2;[2],[2]]"), ParseError);
    CHECK_THROWS_AS(parse_dynkin("3+[2]"), ParseError);
    CHECK_THROWS_AS(parse_dynkin("[2],[3]"), ParseError);
    try {
        parse_dynkin("[3");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position == 2);
    }
}

TEST_CASE("graph construction validation") {
    CHECK_THROWS_AS(make_chain({}), std::invalid_argument);
    CHECK_THROWS_AS(make_chain({2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(make_star(2, {{2}, {2}}), std::invalid_argument);
    CHECK_THROWS_AS(make_star(2, {{2}, {2}, {}}), std::invalid_argument);
    CHECK(make_chain({2, 3}).vertex_count() == 2);
    CHECK(make_star(2, {{2}, {2}, {2}}).vertex_count() == 4);
}

TEST_CASE("intersection matrix of a chain") {
    const IntMatrix m = intersection_matrix(make_chain({3, 2}));
    REQUIRE(m.size() == 2);
    CHECK(m[0][0] == -3);
    CHECK(m[1][1] == -2);
    CHECK(m[0][1] == 1);
    CHECK(m[1][0] == 1);
}

TEST_CASE("negative definiteness") {
    CHECK(is_negative_definite(make_chain({2, 2, 2, 2, 2, 2, 2})));
    CHECK(is_negative_definite(make_star(2, {{2}, {2}, {2, 2, 2}})));
    // Affine configurations are only semi-definite.
    CHECK_FALSE(is_negative_definite(make_star(2, {{2, 2}, {2, 2}, {2, 2}})));
    CHECK_FALSE(is_negative_definite(make_star(2, {{2}, {2, 2, 2}, {2, 2, 2}})));
    CHECK_THROWS_AS(discrepancies(make_star(2, {{2, 2}, {2, 2}, {2, 2}})), std::domain_error);
}

TEST_CASE("discrepancy solve is exact") {
    const DiscrepancyVector dv = discrepancies(make_chain({3, 2}));
    REQUIRE(dv.entries.size() == 2);
    CHECK(dv.entries[0] == Rat(2, 5));
    CHECK(dv.entries[1] == Rat(1, 5));
    CHECK(dv.klt);
}

TEST_CASE("coefficient spot values") {
    CHECK(coefficient(one("[3,2]")) == Rat(2, 5));
    CHECK(coefficient(one("[2,3,2^2]")) == Rat(6, 11));
    CHECK(coefficient(one("[4,2]")) == Rat(4, 7));
    CHECK(coefficient(one("[2,3,2^3]")) == Rat(4, 7));
    CHECK(coefficient(one("[3,3,2]")) == Rat(8, 13));
    CHECK(coefficient(one("[3;[2],[2],[2]]")) == Rat(2, 3));
    CHECK(coefficient(one("[2,3,2,3,2]")) == Rat(2, 3));
}

TEST_CASE("tail coefficient family") {
    // Chains [3,2^(k-2),4,2,2]: the first vertex carries (7k+2)/(14k-1).
    for (long k = 2; k <= 6; ++k) {
        std::vector<int> w{3};
        for (long i = 0; i < k - 2; ++i) w.push_back(2);
        w.insert(w.end(), {4, 2, 2});
        Rat want(7 * k + 2, 14 * k - 1);
        want.canonicalize();
        CHECK(discrepancies(make_chain(w)).entries.front() == want);
    }
    CHECK(discrepancies(make_chain({3, 2, 4, 2, 2})).entries.front() == Rat(23, 41));
}

TEST_CASE("gap spot values and floors") {
    CHECK(gap(one("[3]")) == Rat(2, 3));
    CHECK(gap(one("[3,2]")) == Rat(8, 5));
    CHECK(gap(one("[3,2^2]")) == Rat(18, 7));
    CHECK(gap(one("[4]")) == Rat(0));
    CHECK(gap(one("[3,3]")) == Rat(1));
    CHECK(gap(one("[2,3,2]")) == Rat(5, 2));
    CHECK(gap(one("[2,3,2^2]")) == Rat(38, 11));
    CHECK(gap(one("[2,3,2^3]")) == Rat(31, 7));
    CHECK(gap(one("[2,3,2^4]")) == Rat(92, 17));
    CHECK(gap(one("[2,4]")) == Rat(6, 7));
    CHECK(gap(one("[5]")) == Rat(-4, 5));
    CHECK(gap(one("[4,2^2]")) == Rat(9, 5));
    CHECK(gap(one("[2;[2],[2],[2^2,3]]")) == Rat(11, 2));
    CHECK(gap_floor(one("[2,3,2^2]")) == 3);
    CHECK(gap_floor(one("[5]")) == -1);
    CHECK(gap_floor(one("[4]")) == 0);
}

TEST_CASE("weight-2 graphs have zero discrepancies and gap = vertex count") {
    for (int m = 1; m <= 7; ++m) {
        const DualGraph g = make_chain(std::vector<int>(m, 2));
        const DiscrepancyVector dv = discrepancies(g);
        for (const Rat& e : dv.entries) CHECK(e == 0);
        CHECK(gap(g) == Rat(m));
        CHECK(gap_floor(g) == m);
    }
    const DualGraph star = make_star(2, {{2}, {2}, {2, 2}});
    for (const Rat& e : discrepancies(star).entries) CHECK(e == 0);
    CHECK(gap(star) == Rat(5));
}

TEST_CASE("boundary variant shifts the solve") {
    const DualGraph g = make_chain({2, 2});
    const DiscrepancyVector dv = discrepancies_with_boundary(g, {Rat(1), Rat(0)});
    REQUIRE(dv.entries.size() == 2);
    CHECK(dv.entries[0] == Rat(2, 3));
    CHECK(dv.entries[1] == Rat(1, 3));
    // One-ended full boundary on [2^m] tops out at m/(m+1).
    for (int m = 1; m <= 5; ++m) {
        std::vector<Rat> t(m, Rat(0));
        t[0] = Rat(1);
        const auto entries = discrepancies_with_boundary(make_chain(std::vector<int>(m, 2)), t)
                                 .entries;
        Rat top = entries.front();
        for (const Rat& e : entries) top = std::max(top, e);
        Rat want(m, m + 1);
        want.canonicalize();
        CHECK(top == want);
    }
    CHECK_THROWS_AS(discrepancies_with_boundary(g, {Rat(1)}), std::invalid_argument);
    CHECK_THROWS_AS(discrepancies_with_boundary(g, {Rat(-1), Rat(0)}), std::invalid_argument);
    CHECK_FALSE(discrepancies_with_boundary(make_chain({2}), {Rat(2)}).klt);
}

TEST_CASE("determinants") {
    CHECK(determinant(one("[3,2]")) == 5);
    CHECK(determinant(one("[2,3,2^2]")) == 11);
    CHECK(determinant(one("[2]")) == 2);
    CHECK(determinant(one("[2;[2],[2],[2]]")) == 4);
}

TEST_CASE("spectral chain values") {
    CHECK(spectral_value_chain(3, 0) == 1);
    CHECK(spectral_value_chain(3, 4) == 5);
    CHECK(spectral_value_chain(4, 2) == 6);
    CHECK(spectral_value_chain(5, 1) == 6);
    CHECK_THROWS_AS(spectral_value_chain(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(spectral_value_chain(3, -1), std::invalid_argument);
}

TEST_CASE("canonical key is orientation and branch-order independent") {
    CHECK(canonical_key(make_chain({2, 3, 4})) == canonical_key(make_chain({4, 3, 2})));
    CHECK(canonical_key(make_star(3, {{2}, {2, 2}, {3}})) ==
          canonical_key(make_star(3, {{3}, {2}, {2, 2}})));
    CHECK(canonical_key(make_chain({2, 3})) != canonical_key(make_chain({2, 2})));
}

TEST_CASE("reference gap table") {
    const auto rows = table_e35_rows();
    CHECK(rows.size() == 34);
    bool saw = false;
    for (const auto& r : rows)
        if (r.label == "[2,3,2^2]") {
            saw = true;
            CHECK(r.gap_value == Rat(38, 11));
            CHECK(r.floor_value == 3);
        }
    CHECK(saw);
    // The verifier must flag drifted stored values.
    const Report bad = verify_table_e35("[2] 2/1 2\n");
    CHECK(bad.failed() > 0);
}
