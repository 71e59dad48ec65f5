#include "extwb/chart.h"

#include <doctest.h>

using namespace extwb;

static size_t count_sub(const std::string& s, const std::string& pat) {
    size_t n = 0;
    for (size_t at = s.find(pat); at != std::string::npos; at = s.find(pat, at + 1))
        ++n;
    return n;
}

TEST_CASE("chart: sphere text grid shows the h0 tower") {
    ExtOptions opt{.no_cache = true};
    ChartOptions co;
    co.smax = 8;
    co.stem_max = 14;
    std::string txt = chart_render(build_sphere(0), co, opt);

    // every filtration row has a dot in the stem-0 column
    int rows = 0;
    size_t pos = 0;
    for (std::string line; (pos = txt.find('\n')) != std::string::npos;
         txt.erase(0, pos + 1)) {
        line = txt.substr(0, pos);
        if (line.size() > 6 && line[0] == 's' && line[4] == '|') {
            CHECK(line[6] == '1');
            ++rows;
        }
    }
    CHECK(rows == 9);
}

TEST_CASE("chart: svg structure and determinism") {
    ExtOptions opt{.no_cache = true};
    ChartOptions co;
    co.smax = 3;
    co.stem_max = 3;
    co.svg = true;
    std::string svg = chart_render(build_sphere(0), co, opt);

    CHECK(svg.substr(0, 4) == "<svg");
    CHECK(svg.find("</svg>") != std::string::npos);
    // dims over stems 0..3, s 0..3 for the sphere: 1 + 3 + 3 + 2
    CHECK(count_sub(svg, "<circle") == 9);
    CHECK(count_sub(svg, "</circle>") == 9);
    // h0 tower above stem 0 gives three vertical edges
    CHECK(count_sub(svg, "<line") >= 3);

    CHECK(chart_render(build_sphere(0), co, opt) == svg);
}

TEST_CASE("chart: chain and resolution backends agree") {
    ExtOptions opt{.no_cache = true};
    ChartOptions co;
    co.smax = 6;
    co.stem_max = 10;
    co.svg = true;
    std::string chain = chart_render(build_sphere(0), co, opt);
    ExtOptions mopt = opt;
    mopt.force_minres = true;
    std::string res = chart_render(build_sphere(0), co, mopt);
    // every bidegree in this window is at most one-dimensional, so even the
    // edge sets are basis-independent and the renderings match byte-for-byte
    CHECK(chain == res);

    co.svg = false;
    CHECK(chart_render(build_sphere(0), co, opt) ==
          chart_render(build_sphere(0), co, mopt));
}

TEST_CASE("chart: window options") {
    ExtOptions opt{.no_cache = true};
    ChartOptions co;
    co.smax = 2;
    co.stem_min = 5;
    co.stem_max = 9;
    std::string txt = chart_render(resolve_spectrum("Ceta"), co, opt);
    CHECK(txt.find("s 2 |") != std::string::npos);
    ChartOptions bad = co;
    bad.stem_max = 3;
    CHECK_THROWS_AS(chart_render(build_sphere(0), bad, opt), Error);
}
