#include <stdexcept>
#include <string>

#include "doctest.h"
#include "workbench/planecurve.hpp"

namespace {

using namespace workbench;

HomPoly P(const std::string& s) { return parse_hompoly(s); }

const ProjPoint kOrigin{{Rat(0), Rat(0), Rat(1)}};

Mult imult(const FieldSpec& f, const std::string& a, const std::string& b, const ProjPoint& p) {
    return intersection_multiplicity(f, P(a), P(b), p);
}

std::string record(const Report& rep, const std::string& id) {
    for (const auto& c : rep.checks)
        if (c.id == id) return c.actual;
    return "(missing)";
}

std::string record_inputs(const Report& rep, const std::string& id) {
    for (const auto& c : rep.checks)
        if (c.id == id) return c.inputs;
    return "(missing)";
}

}  // namespace

TEST_CASE("field construction") {
    CHECK(rationals().p == 0);
    CHECK(prime_field(7).p == 7);
    CHECK(field_of_characteristic(0).p == 0);
    CHECK(field_of_characteristic(13).p == 13);
    CHECK_THROWS_AS(prime_field(4), std::invalid_argument);
    CHECK_THROWS_AS(prime_field(1), std::invalid_argument);
    CHECK_THROWS_AS(field_of_characteristic(9), std::invalid_argument);
}

TEST_CASE("polynomial parsing") {
    const HomPoly f = P("x^3-y^2*z");
    CHECK(f.degree() == 3);
    CHECK(f.terms.size() == 2);
    CHECK(f.terms.at({3, 0, 0}) == Rat(1));
    CHECK(f.terms.at({0, 2, 1}) == Rat(-1));
    CHECK(P("-45*x^2-5*y^2+z^2+24*x*y+40*y*z-15*z*x").degree() == 2);
    CHECK(P("1/2*x+y").terms.at({1, 0, 0}) == Rat(1, 2));
    CHECK(P("x - x").zero());
    CHECK(P("y*y*y").terms.count({0, 3, 0}) == 1);
    CHECK_THROWS_AS(P("x^2+y"), std::invalid_argument);
    CHECK_THROWS_AS(P("x^2 + + y^2"), std::invalid_argument);
    CHECK_THROWS_AS(P("x^2 + w^2"), std::invalid_argument);
    CHECK_THROWS_AS(P(""), std::invalid_argument);
}

TEST_CASE("polynomial text round-trip") {
    for (const char* s : {"x^3-y^2*z", "-45*x^2-5*y^2+z^2+24*x*y+40*y*z-15*z*x", "y", "x+y+z"}) {
        const HomPoly f = P(s);
        CHECK(parse_hompoly(hompoly_str(f)).terms == f.terms);
    }
}

TEST_CASE("polynomial arithmetic") {
    const HomPoly f = hompoly_mul(P("x+y"), P("x-y"));
    CHECK(f.terms == P("x^2-y^2").terms);
    CHECK(hompoly_eval(P("x^3-y^2*z"), {Rat(1), Rat(1), Rat(1)}) == Rat(0));
    CHECK(hompoly_eval(P("x^3-y^2*z"), {Rat(2), Rat(1), Rat(1)}) == Rat(7));

    std::array<std::array<Rat, 3>, 3> shear{};
    for (int i = 0; i < 3; ++i) shear[i][i] = Rat(1);
    shear[0][2] = Rat(1);  // x -> x + z
    CHECK(substitute_linear(P("x^2-y*z"), shear).terms == P("x^2+2*x*z+z^2-y*z").terms);
}

TEST_CASE("intersection multiplicity basics over the rationals") {
    const FieldSpec q = rationals();
    CHECK(imult(q, "x", "y", kOrigin) == finite_mult(1));
    CHECK(imult(q, "x", "x", kOrigin) == infinite_mult());
    CHECK(imult(q, "x", "2*x", kOrigin) == infinite_mult());
    CHECK(imult(q, "x^3-y^2*z", "y", kOrigin) == finite_mult(3));
    CHECK(imult(q, "x^2-y*z", "y", kOrigin) == finite_mult(2));
    CHECK(imult(q, "x", "y", ProjPoint{{Rat(0), Rat(1), Rat(0)}}) == finite_mult(0));
    // Nodal cubic: a tangent-cone line scores 3, transverse lines score 2.
    CHECK(imult(q, "y^2*z-x^2*z-x^3", "y-x", kOrigin) == finite_mult(3));
    CHECK(imult(q, "y^2*z-x^2*z-x^3", "y", kOrigin) == finite_mult(2));
    CHECK(imult(q, "y^2*z-x^2*z-x^3", "x", kOrigin) == finite_mult(2));
    // Shared component.
    CHECK(imult(q, "x*y", "x*z", kOrigin) == infinite_mult());
    CHECK_THROWS_AS(imult(q, "x-x", "y", kOrigin), std::invalid_argument);
}

TEST_CASE("multiplicity respects the field") {
    const HomPoly cubic = P("x^3-y^2*z");
    const HomPoly conic = P("-45*x^2-5*y^2+z^2+24*x*y+40*y*z-15*z*x");
    const ProjPoint t{{Rat(1), Rat(1), Rat(1)}};
    CHECK(intersection_multiplicity(rationals(), cubic, conic, t) == finite_mult(5));
    CHECK(intersection_multiplicity(prime_field(2), cubic, conic, t) == finite_mult(6));
    CHECK(intersection_multiplicity(prime_field(7), cubic, conic, t) == finite_mult(5));
    // 2*x*y vanishes identically in characteristic 2.
    CHECK_THROWS_AS(intersection_multiplicity(prime_field(2), P("2*x*y"), P("x"), kOrigin),
                    std::invalid_argument);
    CHECK(intersection_multiplicity(prime_field(3), P("x^2-y*z"), P("y"), kOrigin) ==
          finite_mult(2));
}

TEST_CASE("mult text form") {
    CHECK(mult_str(finite_mult(5)) == "5");
    CHECK(mult_str(infinite_mult()) == "infinite");
}

TEST_CASE("line meets conic") {
    const HomPoly conic = P("x*z-y^2");
    CHECK(line_meets_conic(rationals(), conic, P("z")) == ConicMeeting::one_double_point);
    CHECK(line_meets_conic(rationals(), conic, P("x-z")) == ConicMeeting::two_simple_points);
    CHECK(line_meets_conic(rationals(), P("x^2"), P("x")) == ConicMeeting::contained);
    // x*z - y^2 on x = z becomes z^2 - y^2, a perfect square only mod 2.
    CHECK(line_meets_conic(prime_field(2), conic, P("x-z")) == ConicMeeting::one_double_point);
    CHECK(line_meets_conic(prime_field(3), conic, P("x-z")) == ConicMeeting::two_simple_points);
    CHECK_THROWS_AS(line_meets_conic(rationals(), P("x"), P("x")), std::invalid_argument);
    CHECK_THROWS_AS(line_meets_conic(rationals(), conic, conic), std::invalid_argument);
}

TEST_CASE("reference configuration across characteristics") {
    for (long p : {0L, 2L, 3L, 5L, 7L, 11L, 13L}) {
        const Report rep = verify_special_config(field_of_characteristic(p));
        CHECK(rep.ok());
    }
    const Report q = verify_special_config(rationals());
    CHECK(record(q, "tangency-order-at-t") == "5");
    CHECK(record(q, "residual-equals-t-iff-char-2") == "false");
    CHECK(record(q, "cusp-line-tangent-iff-char-5") == "two-simple-points");
    CHECK(record(q, "residual-chord-tangent-iff-char-5") == "1");
    CHECK(record(q, "chord-meets-conic-simply") == "two-simple-points");
    // The residual point is -5 : 1 : -125 up to scaling.
    CHECK(record_inputs(q, "residual-equals-t-iff-char-2").find("s=[1/25:-1/125:1/1]") !=
          std::string::npos);

    const Report f2 = verify_special_config(prime_field(2));
    CHECK(record(f2, "tangency-order-at-t") == "6");
    CHECK(record(f2, "residual-equals-t-iff-char-2") == "true");
    CHECK(record_inputs(f2, "residual-equals-t-iff-char-2").find("s=[1:1:1]") !=
          std::string::npos);

    const Report f5 = verify_special_config(prime_field(5));
    CHECK(record(f5, "cusp-line-tangent-iff-char-5") == "one-double-point");
    CHECK(record(f5, "residual-chord-tangent-iff-char-5") == "2");
    CHECK(record_inputs(f5, "residual-equals-t-iff-char-2").find("s=[0:1:0]") !=
          std::string::npos);

    // Residual points stay on the frozen orbit of -5 : 1 : -125.
    CHECK(record_inputs(verify_special_config(prime_field(7)), "residual-equals-t-iff-char-2")
              .find("s=[2:1:1]") != std::string::npos);
    CHECK(record_inputs(verify_special_config(prime_field(11)), "residual-equals-t-iff-char-2")
              .find("s=[4:8:1]") != std::string::npos);
    CHECK(record_inputs(verify_special_config(prime_field(13)), "residual-equals-t-iff-char-2")
              .find("s=[12:8:1]") != std::string::npos);
    CHECK(record_inputs(verify_special_config(prime_field(3)), "residual-equals-t-iff-char-2")
              .find("s=[2:1:1]") != std::string::npos);
}
