#include <doctest.h>
#include <extwb/cache.h>
#include <extwb/ext.h>
#include <filesystem>
#include <fstream>

using namespace extwb;
namespace fs = std::filesystem;

TEST_CASE("lambda_dim counts the admissible basis") {
    for (int s = 0; s <= 5; ++s)
        for (int t = s; t <= s + 20; ++t) {
            CHECK(lambda_dim(s, t) == LambdaAlg::basis(s, t).size());
            for (int fm = 0; fm <= t - s; fm += 3)
                CHECK(lambda_dim(s, t, fm) == LambdaAlg::basis(s, t, fm).size());
        }
    CHECK(lambda_dim(0, 0) == 1);
    CHECK(lambda_dim(0, 3) == 0);
    CHECK(lambda_dim(2, 1) == 0);

    Spectrum ceta = resolve_spectrum("Ceta");
    for (int s = 0; s <= 4; ++s)
        for (int t = s; t <= s + 12; ++t)
            CHECK(module_dim(ceta, s, t) == ModuleCtx::make(ceta, s, t).dim);
}

TEST_CASE("ext_group on the sphere matches the classical chart") {
    Spectrum s0 = build_sphere(0);
    // dims by (s, stem), stems 0..12
    const int want[6][13] = {
        {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
        {1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0},
        {1, 0, 1, 1, 0, 0, 1, 1, 1, 0, 0, 0, 0},
        {1, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0},
        {1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0},
        {1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0},
    };
    for (int s = 0; s <= 5; ++s)
        for (int stem = 0; stem <= 12; ++stem) {
            ExtGroup g = ext_group(s0, s, s + stem, {.no_cache = true});
            CHECK(g.backend == "lambda");
            CHECK(int(g.dim()) == want[s][stem]);
            for (const ExtClass& c : g.classes) {
                CHECK(c.has_rep());
                CHECK(module_diff(s0, c.rep).empty());
            }
        }
}

TEST_CASE("canonical representatives and leading terms") {
    Spectrum s0 = build_sphere(0);
    ExtOptions opt{.no_cache = true};

    ExtGroup h3 = ext_group(s0, 1, 8, opt);
    REQUIRE(h3.dim() == 1);
    CHECK(h3.classes[0].rep_str() == "l7");
    CHECK(h3.classes[0].leading_str() == "l7");
    CHECK(h3.classes[0].stem() == 7);

    // at (2,5) the boundary d(la_4) = la_3 la_0 + la_2 la_1 kills the top
    // monomial, leaving la_2 la_1 as the reduced representative of h_0 h_2
    ExtGroup g25 = ext_group(s0, 2, 5, opt);
    REQUIRE(g25.dim() == 1);
    CHECK(g25.classes[0].rep_str() == "l2 l1");

    // h_0 h_3 reduces to la_6 la_1 + la_4 la_3 (la_7 la_0 is the boundary pivot)
    ExtGroup g29 = ext_group(s0, 2, 9, opt);
    REQUIRE(g29.dim() == 1);
    CHECK(g29.classes[0].rep_str() == "l6 l1 + l4 l3");
}

TEST_CASE("reduce_class canonicalizes and rejects non-cycles") {
    Spectrum s0 = build_sphere(0);
    ExtOptions opt{.no_cache = true};

    // h_0 h_3^2 at (3,17)
    ModChain z{{0, parse_chain("l6 l5 l3")}};
    ExtClass c = reduce_class(s0, 3, 17, z, opt);
    CHECK(c.has_rep());
    CHECK(c == ext_group(s0, 3, 17, opt).classes[0]);

    // a boundary reduces to zero
    Chain w = parse_chain("l9 l7");
    ModChain b{{0, lambda().d(w)}};
    if (!b.empty() && !b[0].second.empty()) {
        ExtClass cb = reduce_class(s0, 3, 18, b, opt);
        CHECK(!cb.has_rep());
    }

    ModChain nc{{0, parse_chain("l2")}};
    CHECK_THROWS_AS(reduce_class(s0, 1, 3, nc, opt), NotACycle);
    ModChain mixed{{0, parse_chain("l2 + l0")}};
    CHECK_THROWS_AS(reduce_class(s0, 1, 3, mixed, opt), Error);
}

TEST_CASE("bound_solve finds chain-level nullhomotopies") {
    ExtOptions opt{.no_cache = true};
    Chain z = parse_chain("l5 l0 + l3 l2");  // = d(la_6)
    auto w = bound_solve(2, 7, z, -1, opt);
    REQUIRE(w.has_value());
    CHECK(chain_str(*w) == "l6");
    CHECK(lambda().d(*w) == z);

    // the only source la_6 is excluded by the leading-index window
    CHECK(!bound_solve(2, 7, z, 5, opt).has_value());
    CHECK(bound_solve(2, 7, z, 6, opt).has_value());

    // a nonzero class does not bound
    CHECK(!bound_solve(3, 17, parse_chain("l6 l5 l3"), -1, opt).has_value());

    auto e = bound_solve(3, 9, Chain{}, -1, opt);
    REQUIRE(e.has_value());
    CHECK(e->empty());

    Spectrum ceta = resolve_spectrum("Ceta");
    ModChain src{{2, parse_chain("l5")}};
    ModChain dz = module_diff(ceta, src);
    REQUIRE(!dz.empty());
    auto mw = bound_solve(ceta, 2, 8, dz, opt);
    REQUIRE(mw.has_value());
    ModChain back = module_diff(ceta, *mw);
    CHECK(back == dz);
}

TEST_CASE("h_multiply is multiplication by h_i on representatives") {
    Spectrum s0 = build_sphere(0);
    ExtOptions opt{.no_cache = true};

    ExtClass h3 = ext_group(s0, 1, 8, opt).classes[0];
    ExtClass h0h3 = h_multiply(s0, h3, 0, true, opt);
    CHECK(h0h3.s == 2);
    CHECK(h0h3.t == 9);
    CHECK(h0h3 == ext_group(s0, 2, 9, opt).classes[0]);

    // h_2 h_3 = 0
    ExtClass h2h3 = h_multiply(s0, h3, 2, true, opt);
    CHECK(!h2h3.has_rep());

    // square and cube of h_3: nonzero through (3,17)
    ExtClass h3h3 = h_multiply(s0, h3, 3, true, opt);
    CHECK(h3h3.has_rep());
    ExtClass h0h3h3 = h_multiply(s0, h3h3, 0, true, opt);
    CHECK(h0h3h3 == reduce_class(s0, 3, 17, {{0, parse_chain("l6 l5 l3")}}, opt));

    // right module action: h_0 times the bottom class of C(eta)
    Spectrum ceta = resolve_spectrum("Ceta");
    ExtClass h0b = ext_group(ceta, 1, 1, opt).classes[0];
    ExtClass h0h0b = h_multiply(ceta, h0b, 0, true, opt);
    CHECK(h0h0b.has_rep());
    CHECK(h0h0b == ext_group(ceta, 2, 2, opt).classes[0]);

    ExtClass bare{2, 9, {}, ""};
    CHECK_THROWS_AS(h_multiply(s0, bare, 0, true, opt), Error);
}

TEST_CASE("massey products from chain-level nullhomotopies") {
    ExtOptions opt{.no_cache = true};
    Chain a = make_mono({3}), b = make_mono({1}), c = make_mono({0});

    // <h_2, h_1, h_0> contains zero: the representative is d(la_6)
    Chain t3 = massey_triple(a, b, c, opt);
    CHECK(t3 == parse_chain("l5 l0 + l3 l2"));
    CHECK(bound_solve(2, 7, t3, -1, opt).has_value());

    // <h_2, h_1, h_0, h_1 h_3> = h_0 h_3^2, on the nose at chain level
    Chain d = parse_chain("l5 l3");
    Chain q = massey_four(a, b, c, d, opt);
    CHECK(q == parse_chain("l6 l5 l3"));

    // undefined when a product fails to bound: h_0 h_3 != 0
    CHECK_THROWS_AS(massey_triple(c, make_mono({7}), c, opt), BracketUndefined);
}

TEST_CASE("curtis_table lists survivors and elimination tags") {
    Spectrum s0 = build_sphere(0);
    CurtisTable tbl = curtis_table(s0, 2, 8, {.no_cache = true});
    std::string txt = tbl.text();
    CHECK(txt.find("s=0 stem=0 gen 1") != std::string::npos);
    CHECK(txt.find("s=1 stem=7 gen l7") != std::string::npos);
    CHECK(txt.find("s=2 stem=3 gen l2 l1") != std::string::npos);
    CHECK(txt.find("s=2 stem=3 tag l3 l0 <- l4") != std::string::npos);
    // la_5 survives at stem 4? no: d(la_5) = la_3 la_1, so la_3 la_1 is tagged
    CHECK(txt.find("s=2 stem=4 tag l3 l1 <- l5") != std::string::npos);
    CHECK(txt.find("s=1 stem=4 gen") == std::string::npos);

    // entries come s-major, stems ascending
    for (size_t k = 1; k < tbl.entries.size(); ++k) {
        const auto &p = tbl.entries[k - 1], &q = tbl.entries[k];
        CHECK((p.s < q.s || (p.s == q.s && p.t - p.s < q.t - q.s)));
    }

    Spectrum ceta = resolve_spectrum("Ceta");
    CurtisTable ct = curtis_table(ceta, 1, 4, {.no_cache = true});
    std::string ctxt = ct.text();
    CHECK(ctxt.find("s=0 stem=0 gen e0*1") != std::string::npos);
    // the top cell of C(eta) is not a cycle: no gen at (0, stem 2)
    CHECK(ctxt.find("s=0 stem=2 gen") == std::string::npos);
}

TEST_CASE("backends agree on small spectra") {
    ExtOptions lam{.no_cache = true, .force_lambda = true};
    ExtOptions res{.no_cache = true, .force_minres = true};
    for (const char* name : {"S0", "Ceta"}) {
        Spectrum sp = resolve_spectrum(name);
        for (int s = 0; s <= 4; ++s)
            for (int t = s; t <= s + 10; ++t) {
                ExtGroup a = ext_group(sp, s, t, lam);
                ExtGroup b = ext_group(sp, s, t, res);
                CHECK(a.backend == "lambda");
                CHECK(b.backend == "minres");
                CHECK(a.dim() == b.dim());
            }
    }
}

TEST_CASE("ext cache round-trips groups and resolutions") {
    fs::path dir = fs::temp_directory_path() / "extwb-test-cache";
    fs::remove_all(dir);
    Cache& cc = Cache::inst();
    std::string old_dir = cc.dir();
    bool old_on = cc.enabled();
    cc.set_dir(dir.string());
    cc.set_enabled(true);

    Spectrum s0 = build_sphere(0);
    ExtGroup first = ext_group(s0, 3, 17, {});
    REQUIRE(fs::exists(dir));
    size_t files = Cache::inst().stat().files;
    CHECK(files >= 1);
    ExtGroup again = ext_group(s0, 3, 17, {});
    REQUIRE(again.dim() == first.dim());
    for (size_t k = 0; k < first.dim(); ++k)
        CHECK(again.classes[k].rep == first.classes[k].rep);

    // resolutions persist; unrelated or stale cache entries are ignored
    Spectrum p15 = build_stunted(1, 5);
    ExtOptions fm{.force_minres = true};
    ExtGroup m1 = ext_group(p15, 2, 8, fm);
    {
        std::ofstream out(dir / ("res-garbage-v" + std::to_string(kEngineVersion) + ".txt"));
        out << "minres 12345 0 0\n";
    }
    ExtGroup m2 = ext_group(p15, 2, 8, fm);
    CHECK(m1.dim() == m2.dim());

    // no_cache leaves no trace for a fresh spectrum
    size_t before = Cache::inst().stat().files;
    Spectrum y = resolve_spectrum("Y");
    ext_group(y, 1, 5, {.no_cache = true});
    CHECK(Cache::inst().stat().files == before);

    size_t dropped = Cache::inst().gc(true);
    CHECK(dropped >= files);
    cc.set_dir(old_dir);
    cc.set_enabled(old_on);
    fs::remove_all(dir);
}
