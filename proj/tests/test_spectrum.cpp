#include <doctest.h>
#include "extwb/spectrum.h"

using namespace extwb;

TEST_CASE("stunted builder and library") {
    Spectrum p = build_stunted(14, 23);
    CHECK(p.cells().size() == 10);
    CHECK(p.act(22, 1) == 21);
    CHECK(p.act(22, 7) == 15);
    CHECK(p.act(22, 2) == -1);

    const auto& lib = spectrum_library();
    CHECK(lib.count("X22"));
    CHECK(lib.at("X22").cells() == std::vector<int>{14, 19, 21, 22});
    CHECK(lib.at("W").act(22, 7) == 15);
    CHECK(lib.at("W").act(22, 3) == 19);
    CHECK(lib.at("Y").cells() == std::vector<int>{3, 5, 6});
    CHECK(lib.at("Y").act(6, 3) == 3);
    CHECK(lib.at("Y").act(5, 2) == 3);
    CHECK(lib.at("Ceta").act(2, 2) == 0);
}

TEST_CASE("subquotient closure validation") {
    Spectrum p = build_stunted(14, 23);
    /* removing 21 while keeping 15 loses Sq^6: 21 -> 15 */
    CHECK_THROWS_AS(p.subquotient({15, 22}), ClosureViolation);
    /* the X family is fine */
    CHECK_NOTHROW(p.subquotient({14, 19, 21, 22}));
    CHECK_NOTHROW(p.subquotient({14, 16, 23}));
    /* keeping a missing cell is an error */
    CHECK_THROWS_AS(p.subquotient({7, 14}), Error);
}

TEST_CASE("cofiber ses splits W over the 15 cell") {
    Spectrum w = spectrum_library().at("W");
    CofiberSES ses = cofiber_ses(w, {15});
    CHECK(ses.sub == build_sphere(15));
    CHECK(ses.quot == spectrum_library().at("X22"));
    /* a non-closed sub is rejected: 22 has Sq^1 -> 21 inside W */
    CHECK_THROWS_AS(cofiber_ses(w, {22}), ClosureViolation);
}

TEST_CASE("suspension matches stunted periodicity window") {
    CHECK(build_stunted(16, 23) == build_stunted(0, 7).suspend(16));
    CHECK(james_phi(8) == 8);
    /* shifting by a non-multiple of the period changes the action */
    CHECK_FALSE(build_stunted(3, 8) == build_stunted(2, 7).suspend(1));
}

TEST_CASE("json io") {
    Spectrum w = spectrum_library().at("W");
    Spectrum back = Spectrum::from_json(w.to_json());
    CHECK(back == w);
    CHECK(back.name() == "W");

    Spectrum viaBase = Spectrum::from_json(R"({"name":"w2","base":"P14_23","kept":[14,15,19,21,22]})");
    CHECK(viaBase == w);

    Spectrum susp = Spectrum::from_json(R"({"builtin":"Ceta","suspend":14})");
    CHECK(susp.cells() == std::vector<int>{14, 16});
    CHECK(susp.act(16, 2) == 14);

    CHECK(resolve_spectrum("S5") == build_sphere(5));
    CHECK(resolve_spectrum("P3_9") == build_stunted(3, 9));
    CHECK(resolve_spectrum("Ceta@14") == susp);
}
