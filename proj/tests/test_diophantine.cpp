#include <stdexcept>

#include "doctest.h"
#include "workbench/diophantine.hpp"
#include "workbench/dualgraph.hpp"

namespace {
using namespace workbench;
}

TEST_CASE("degree from a one-dimensional span") {
    CHECK(ksq_from_sigma(Rat(6), Rat(3)) == Rat(12));
    CHECK(ksq_from_sigma(Rat(1, 2), Rat(1, 8)) == Rat(2));
    CHECK(ksq_from_sigma(Rat(-3), Rat(2)) == Rat(9, 2));
    CHECK_THROWS_AS(ksq_from_sigma(Rat(1), Rat(0)), std::domain_error);
}

TEST_CASE("closed-form degree families") {
    CHECK(ksq_formula("[3,2^k]", 2, 1) == Rat(2, 15));
    CHECK(ksq_formula("[3,2^k]", 2, 0) == Rat(32, 105));
    CHECK(ksq_formula("[4]", 6) == Rat(1, 143));
    CHECK(ksq_formula("[4]", 2) == Rat(1, 15));
    CHECK(ksq_formula("[2,4]", 2) == Rat(2, 455));
    CHECK(ksq_formula("[2,3,2]", 2) == Rat(1, 40));
    CHECK(ksq_formula("[2,3,2^k]", 2, 2) == Rat(18, 2695));
    CHECK(ksq_formula("[3,2^k,3]", 2, 3) == Rat(1, 35));
    CHECK(ksq_formula("[2;[2],[2],[2^k,3]]", 2, 0) == Rat(1, 140));
    CHECK_THROWS_AS(ksq_formula("[2,3,2^k]", 2, 5), std::domain_error);
    CHECK_THROWS_AS(ksq_formula("[3,2^k]", 1, 0), std::domain_error);
    CHECK_THROWS_AS(ksq_formula("[9,9]", 2, 0), std::domain_error);
}

TEST_CASE("degree-plus-gap defect") {
    CHECK(noether_defect(Rat(1, 105), parse_dynkin("2[3]+[4,2^2]+[4,2]+[2^5]")) == Rat(0));
    CHECK(noether_defect(Rat(2, 165), parse_dynkin("2[3]+[5]+[2,3,2^2]+[2^5]")) == Rat(0));
    CHECK(noether_defect(Rat(1, 143), parse_dynkin("[2,3,2^2]+[3,2^5]")) == Rat(0));
    CHECK(noether_defect(Rat(1), parse_dynkin("2[3]+[4,2^2]+[4,2]+[2^5]")) != Rat(0));
}

TEST_CASE("enumeration searches match their families") {
    const SolutionSet d1 = run_search("D1");
    CHECK(d1.rows.size() == 10);
    CHECK(d1.varnames.size() == 12);
    CHECK(d1.rows.front() == std::vector<long>{1, 0, 0, 13, 0, 0, 0, 0, 0, 0, 0, 0});
    CHECK(d1.rows.back() == std::vector<long>{1, 2, 0, 0, 4, 1, 0, 0, 0, 0, 0, 0});
    CHECK(run_search("D2").rows.size() == 3);
    CHECK(run_search("D3").rows.size() == 3);
    CHECK(run_search("D4").rows.size() == 3);

    const SolutionSet d5 = run_search("D5");
    CHECK(d5.rows.size() == 19);
    for (const auto& r : d5.rows) CHECK(r.at(2) == 1);

    CHECK(run_search("GEN-1").rows == std::vector<std::vector<long>>{{2, 11}});
    CHECK(run_search("GEN-2").rows.empty());
    CHECK(run_search("GEN-3").rows ==
          std::vector<std::vector<long>>{{2, 11}, {3, 17}, {6, 13}});
    CHECK_THROWS_AS(run_search("D9"), std::invalid_argument);
}

TEST_CASE("nested-loop oracles agree") {
    for (const char* id : {"D1", "D2", "D3", "D4", "D5", "GEN-1", "GEN-2", "GEN-3"})
        CHECK(run_search(id).same_solutions(run_search_oracle(id)));
}

TEST_CASE("solution text round-trips") {
    for (const char* id : {"D1", "D2", "D3", "D4", "D5", "GEN-1", "GEN-2", "GEN-3"}) {
        const SolutionSet s = run_search(id);
        const SolutionSet back = parse_solution_text(id, solution_text(s));
        CHECK(s.same_solutions(back));
    }
    CHECK_THROWS_AS(parse_solution_text("D1", "not a table"), std::invalid_argument);
}

TEST_CASE("divisibility scan") {
    const auto hits = divisibility_search(
        [](long) -> Int { return Int(5); },
        [](long g) -> Int { return Int(2 * g + 1) * Int(18 * g - 1); }, Int(315), {11}, 2, 21);
    CHECK(hits == std::vector<std::pair<long, long>>{{2, 11}});
    CHECK_THROWS_AS(divisibility_search([](long) -> Int { return Int(1); },
                                        [](long) -> Int { return Int(0); }, Int(1), {3}, 2, 3),
                    std::domain_error);
}
