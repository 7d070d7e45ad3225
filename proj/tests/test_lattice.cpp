#include <stdexcept>
#include <string>

#include "doctest.h"
#include "workbench/lattice.hpp"

namespace {

using namespace workbench;

std::string no_files(const std::string& name) {
    throw std::runtime_error("unexpected file reference: " + name);
}

Report run_script(const std::string& text) { return run_construction(text, "inline", no_files); }

}  // namespace

TEST_CASE("base surfaces") {
    const BaseSurface p2 = BaseSurface::plane();
    CHECK(p2.names == std::vector<std::string>{"H"});
    CHECK(p2.gram[0][0] == 1);
    CHECK(p2.canonical == std::vector<Int>{Int(-3)});

    const BaseSurface f2 = BaseSurface::hirzebruch(2);
    CHECK(f2.gram[0][0] == -2);
    CHECK(f2.gram[0][1] == 1);
    CHECK(f2.gram[1][1] == 0);
    CHECK(f2.canonical == std::vector<Int>{Int(-2), Int(-4)});
    CHECK_THROWS_AS(BaseSurface::hirzebruch(-1), std::invalid_argument);

    const BaseSurface custom =
        BaseSurface::from_text("names A B\ngram\n1 0\n0 -1\nk -3 -1\n");
    CHECK(custom.names == std::vector<std::string>{"A", "B"});
    CHECK(custom.gram[1][1] == -1);
    CHECK_THROWS_AS(BaseSurface::from_text("names A\n"), std::invalid_argument);
}

TEST_CASE("blow-up bookkeeping on the plane") {
    SurfaceState s(BaseSurface::plane());
    s.declare_curve("L", {Int(1)}, 0);
    s.declare_curve("C", {Int(3)}, 1);
    CHECK(s.k_selfint() == 9);
    CHECK(s.rank() == 1);
    CHECK(s.pairing("L", "C") == 3);

    const std::string e1 = s.blow_up({{"L", 1}, {"C", 1}});
    CHECK(e1 == "E1");
    CHECK(s.rank() == 2);
    CHECK(s.k_selfint() == 8);
    CHECK(s.self_int("E1") == -1);
    CHECK(s.k_degree("E1") == -1);
    CHECK(s.self_int("L") == 0);
    CHECK(s.pairing("L", "C") == 2);
    CHECK(s.genus("C") == 1);

    // A double point eats genus m(m-1)/2 = 1.
    s.blow_up({{"C", 2}});
    CHECK(s.genus("C") == 0);
    CHECK(s.self_int("C") == 9 - 1 - 4);

    CHECK_THROWS_AS(s.blow_up({{"Zed", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(s.blow_up({{"C", 0}}), std::invalid_argument);
    // A third singular point would push the cubic's genus negative.
    CHECK_THROWS_AS(s.blow_up({{"C", 2}}), GeometryError);

    CHECK_THROWS_AS(s.declare_curve("Q", {Int(2)}, 1), GeometryError);
    CHECK_THROWS_AS(s.declare_curve("E7", {Int(1)}), std::invalid_argument);
}

TEST_CASE("degree;multiplicity declaration") {
    SurfaceState s(BaseSurface::plane());
    s.declare_curve("A", {Int(1)}, 0);
    s.blow_up({{"A", 1}});
    s.blow_up({{"A", 1}});
    s.declare_curve_dm("B", Int(2), {Int(1), Int(1)}, 0);
    CHECK(s.pairing("A", "B") == 0);
    CHECK(s.self_int("B") == 2);
}

TEST_CASE("contraction to a singular model") {
    SurfaceState s(BaseSurface::plane());
    s.declare_curve("L", {Int(1)}, 0);
    s.blow_up({{"L", 1}});
    s.blow_up({{"L", 1}});
    s.blow_up({{"L", 1}});
    CHECK(s.self_int("L") == -2);

    const SingularModel m = contract(s, {"L"});
    CHECK(serialize(dynkin_type(m)) == "[2]");
    CHECK(picard_rank(m) == 3);
    CHECK(anticanonical_selfint(m) == Rat(6));
    CHECK(m.all_klt);
    CHECK(anticanonical_degree(m, "E1") == Rat(1));
    CHECK_THROWS_AS(anticanonical_degree(m, "L"), std::invalid_argument);
    CHECK_THROWS_AS(anticanonical_degree(m, "Zed"), std::invalid_argument);
}

TEST_CASE("contraction validation") {
    SurfaceState s(BaseSurface::plane());
    s.declare_curve("C", {Int(3)}, 1);
    s.declare_curve("L", {Int(1)}, 0);
    // Self-intersection -1 is not contractible here.
    s.blow_up({{"L", 1}});
    s.blow_up({{"L", 1}});
    CHECK_THROWS_AS(contract(s, {"L"}), GeometryError);
    // Non-rational curves are refused.
    CHECK_THROWS_AS(contract(s, {"C"}), GeometryError);
    CHECK_THROWS_AS(contract(s, {"Zed"}), std::invalid_argument);

    // Two curves meeting twice close up a cycle.
    SurfaceState s2(BaseSurface::plane());
    s2.declare_curve("A", {Int(2)}, 0);
    s2.declare_curve("B", {Int(2)}, 0);
    for (int i = 0; i < 6; ++i) s2.blow_up({{"A", 1}});
    for (int i = 0; i < 6; ++i) s2.blow_up({{"B", 1}});
    CHECK(s2.self_int("A") == -2);
    CHECK(s2.pairing("A", "B") == 4);
    CHECK_THROWS_AS(contract(s2, {"A", "B"}), GeometryError);
}

TEST_CASE("rank-one log del Pezzo test on a fence") {
    SurfaceState s(BaseSurface::hirzebruch(2));
    s.declare_curve("Eneg", {Int(1), Int(0)}, 0);
    s.declare_curve("Fib", {Int(0), Int(1)}, 0);
    const SingularModel m = contract(s, {"Eneg"});
    CHECK(picard_rank(m) == 1);
    CHECK(serialize(dynkin_type(m)) == "[2]");
    CHECK(anticanonical_selfint(m) == Rat(8));
    CHECK(anticanonical_degree(m, "Fib") == Rat(2));
    const LogDpResult r = is_rank_one_log_dp(m);
    CHECK(r.value);
    CHECK(r.report.ok());
}

TEST_CASE("construction scripts") {
    const std::string script =
        "# tiny fence\n"
        "base hirzebruch 2\n"
        "curve Eneg class 1 0 genus 0\n"
        "curve Fib class 0 1 genus 0\n"
        "blowup (Fib:1, Eneg:1)\n"
        "blowup (Fib:1, E1:1)\n"
        "contract Eneg, Fib, E1\n"
        "expect rank 1\n"
        "expect dynkin \"[2,3]+[2]\"\n"
        "expect ksq 32/5\n"
        "expect degree E2 4/5\n"
        "expect logdp true\n";
    const Report rep = run_script(script);
    CHECK(rep.checks.size() == 5);
    CHECK(rep.ok());

    const Report bad = run_script(
        "base hirzebruch 2\n"
        "curve Eneg class 1 0 genus 0\n"
        "contract Eneg\n"
        "expect rank 2\n");
    CHECK(bad.failed() == 1);

    CHECK_THROWS_AS(run_script("base p2\nblowup (Zed:1)\n"), std::invalid_argument);
    CHECK_THROWS_AS(run_script("launch missiles\n"), std::invalid_argument);
    CHECK_THROWS_AS(run_script("base p2\nexpect frobnicate 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(run_script("base p2\nexpect degree Zed 1/1\n"), std::invalid_argument);
    // With no contract line, expectations act on the uncontracted surface.
    CHECK(run_script("base p2\nexpect rank 1\nexpect ksq 9/1\n").ok());
}

TEST_CASE("blowup_along shorthand") {
    // Four consecutive blow-ups along a line: the line ends at -3 and the
    // first three exceptionals form a [2^3] chain hanging off E4.
    const std::string longhand =
        "base p2\n"
        "curve L class 1 genus 0\n"
        "blowup (L:1)\n"
        "blowup (L:1, E1:1)\n"
        "blowup (L:1, E2:1)\n"
        "blowup (L:1, E3:1)\n"
        "contract L, E1, E2, E3\n"
        "expect dynkin \"[2^3]+[3]\"\n"
        "expect rank 1\n";
    const std::string shorthand =
        "base p2\n"
        "curve L class 1 genus 0\n"
        "blowup_along L x4 mults 1,1,1,1\n"
        "contract L, E1, E2, E3\n"
        "expect dynkin \"[2^3]+[3]\"\n"
        "expect rank 1\n";
    const Report a = run_script(longhand);
    const Report b = run_script(shorthand);
    CHECK(a.ok());
    CHECK(b.ok());
}

TEST_CASE("construction outcome exposes the model") {
    const auto out = run_construction_full(
        "base hirzebruch 2\n"
        "curve Eneg class 1 0 genus 0\n"
        "contract Eneg\n",
        "inline", no_files);
    REQUIRE(out.model.has_value());
    CHECK(picard_rank(*out.model) == 1);
    const auto none = run_construction_full("base p2\n", "inline", no_files);
    CHECK_FALSE(none.model.has_value());
}
