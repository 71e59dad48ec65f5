#include "extwb/names.h"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace extwb;

TEST_CASE("name registry: exact and cell-wildcard keys") {
    NameRegistry reg;
    reg.add(3, 8, "l2 l3 l3", "c0");
    reg.add(1, 1, "l1", "h1");
    reg.add(7, 60, "e14*", "B1[14]");

    CHECK(reg.lookup(3, 8, "l2 l3 l3") == "c0");
    CHECK(reg.lookup(3, 8, "l4 l2 l2") == "");
    CHECK(reg.lookup(3, 9, "l2 l3 l3") == "");
    CHECK(reg.lookup(7, 60, "e14*l9 l9 l7 l2 l3 l3 l3") == "B1[14]");
    CHECK(reg.lookup(7, 60, "e16*l9 l9 l7 l2 l3 l3 l3") == "");
    CHECK(reg.size() == 3);

    // exact beats wildcard
    reg.add(7, 60, "e14*l31 l15 l7 l3 l2 l1 l1", "other[14]");
    CHECK(reg.lookup(7, 60, "e14*l31 l15 l7 l3 l2 l1 l1") == "other[14]");
    CHECK(reg.lookup(7, 60, "e14*l9 l9 l7 l2 l3 l3 l3") == "B1[14]");

    CHECK_THROWS_AS(reg.add(4, 4, "l2 l3 l3", "c0"), Error);        // name reuse
    CHECK_THROWS_AS(reg.add(3, 8, "l2 l3 l3", "c0bis"), Error);     // key reuse
    CHECK_THROWS_AS(reg.add(7, 60, "e14*", "B1bis[14]"), Error);    // cell key reuse
    CHECK_THROWS_AS(reg.add(1, 1, "", "empty"), Error);
}

TEST_CASE("name registry: annotate ext groups") {
    NameRegistry reg;
    reg.add(1, 1, "l1", "h1");
    reg.add(3, 8, "l2 l3 l3", "c0");

    ExtGroup g = ext_group(build_sphere(0), 3, 11, ExtOptions{.no_cache = true});
    REQUIRE(g.dim() == 1);
    reg.annotate(g);
    CHECK(g.classes[0].name == "c0");
    CHECK(reg.lookup(g.classes[0]) == "c0");

    // module classes embed the leading cell in the key
    ExtClass sus;
    sus.s = 3;
    sus.t = 25;
    sus.rep = ModChain{{14, parse_chain("l2 l3 l3")}};
    CHECK(sus.leading_str() == "e14*l2 l3 l3");
    CHECK(reg.lookup(sus) == "");
    reg.add(3, 22, "e14*l2 l3 l3", "c0[14]");
    CHECK(reg.lookup(sus) == "c0[14]");
}

TEST_CASE("name registry: json load") {
    const char* path = "names_test_tmp.json";
    {
        std::ofstream out(path);
        out << R"([{"s":1,"stem":3,"leading":"l3","name":"h2"},
                   {"s":6,"stem":60,"leading":"e6*","name":"G[6]","note":"ignored"}])";
    }
    NameRegistry reg;
    reg.load(path);
    CHECK(reg.size() == 2);
    CHECK(reg.lookup(1, 3, "l3") == "h2");
    CHECK(reg.lookup(6, 60, "e6*l2 l4 l7 l11 l15 l15") == "G[6]");
    std::remove(path);

    NameRegistry none;
    CHECK_THROWS_AS(none.load("no_such_file.json"), Error);
}
