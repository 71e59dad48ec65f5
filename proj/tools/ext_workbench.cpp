#include "extwb/cache.h"
#include "extwb/chart.h"
#include "extwb/ext.h"
#include "extwb/names.h"
#include "extwb/seq.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

using namespace extwb;
using nlohmann::json;

namespace {

struct Gopt {
    std::string spectrum = "S0";
    int smax = 8;
    int stem_max = 20;
    std::string out;
    std::string format = "text";
    std::string names_path;
    int threads = 0;
    ExtOptions eo;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_out(const Gopt& g, const std::string& text) {
    if (g.out.empty()) {
        fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f)
        throw Error("cannot write " + g.out);
    f << text;
}

int resolve_threads(const Gopt& g) {
    if (g.threads > 0)
        return g.threads;
    if (const char* env = std::getenv("EXTWB_THREADS"))
        if (int n = atoi(env); n > 0)
            return n;
    return 1;
}

/* index-sharded worker pool; trims of the shared rewrite cache are deferred
 * while the pool runs (results are handed out by reference) */
void run_pool(int threads, size_t njobs, const std::function<void(size_t)>& job) {
    if (threads <= 1 || njobs <= 1) {
        for (size_t i = 0; i < njobs; ++i)
            job(i);
        return;
    }
    lambda().pin();
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex emu;
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= njobs)
                return;
            try {
                job(i);
            } catch (...) {
                std::lock_guard lk(emu);
                if (!err)
                    err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < threads && size_t(k) < njobs; ++k)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    lambda().unpin();
    if (err)
        std::rethrow_exception(err);
}

bool lam_ok(const Spectrum& sp, int s, int t, const ExtOptions& o) {
    return module_dim(sp, s, t) <= o.lambda_cap &&
           (s == 0 || module_dim(sp, s - 1, t) <= o.lambda_cap);
}

std::string label(const ExtClass& c) {
    std::string l = c.has_rep() ? c.leading_str() : "?";
    if (!c.name.empty())
        l += " [" + c.name + "]";
    return l;
}

void load_names(const Gopt& g) {
    if (!g.names_path.empty())
        names().load(g.names_path);
}

/* ---- ext ---- */

int cmd_ext(const Gopt& g, int s_one, int stem_one, bool reps, bool zeros) {
    Spectrum sp = resolve_spectrum(g.spectrum);
    std::vector<std::pair<int, int>> jobs;  // (s, stem)
    if (s_one >= 0 && stem_one >= 0)
        jobs = {{s_one, stem_one}};
    else
        for (int s = 0; s <= g.smax; ++s)
            for (int n = 0; n <= g.stem_max; ++n)
                jobs.push_back({s, n});

    int threads = resolve_threads(g);
    bool need_res = false;
    int rs = 0, rt = 0;
    for (auto [s, n] : jobs)
        if (!g.eo.force_lambda && !lam_ok(sp, s, s + n, g.eo)) {
            need_res = true;
            rs = std::max(rs, s);
            rt = std::max(rt, s + n);
        }
    if (need_res)
        resolution_for(sp, rs, rt, g.eo);  // serial warm-up, pool reads after

    std::vector<ExtGroup> res(jobs.size());
    run_pool(threads, jobs.size(), [&](size_t i) {
        auto [s, n] = jobs[i];
        res[i] = ext_group(sp, s, s + n, g.eo);
        names().annotate(res[i]);
    });

    if (g.format == "json") {
        json out = json::array();
        for (auto& grp : res) {
            if (grp.dim() == 0 && !zeros)
                continue;
            json e{{"s", grp.s}, {"stem", grp.t - grp.s}, {"dim", grp.dim()}, {"backend", grp.backend}};
            json cls = json::array();
            for (auto& c : grp.classes) {
                json jc;
                if (c.has_rep()) {
                    jc["leading"] = c.leading_str();
                    if (reps)
                        jc["rep"] = c.rep_str();
                }
                if (!c.name.empty())
                    jc["name"] = c.name;
                cls.push_back(jc);
            }
            e["classes"] = cls;
            out.push_back(e);
        }
        write_out(g, out.dump(1) + "\n");
        return 0;
    }

    std::string out = "# ext " + sp.name() + "\n";
    for (auto& grp : res) {
        if (grp.dim() == 0 && !zeros)
            continue;
        char head[64];
        snprintf(head, sizeof head, "s=%d stem=%d dim=%zu", grp.s, grp.t - grp.s, grp.dim());
        out += head;
        out += " (" + grp.backend + ")";
        bool first = true;
        for (auto& c : grp.classes) {
            if (!c.has_rep())
                continue;
            out += first ? ": " : "; ";
            out += reps ? c.rep_str() : c.leading_str();
            if (!c.name.empty())
                out += " [" + c.name + "]";
            first = false;
        }
        out += "\n";
    }
    write_out(g, out);
    return 0;
}

/* ---- curtis ---- */

int cmd_curtis(const Gopt& g) {
    Spectrum sp = resolve_spectrum(g.spectrum);
    CurtisTable tab = curtis_table(sp, g.smax, g.stem_max, g.eo);
    write_out(g, tab.text());
    return 0;
}

/* ---- delta (long exact sequence + connecting images) ---- */

int cmd_delta(const Gopt& g, const std::vector<int>& sub_cells, int s_one, int stem_one,
              const std::string& cls_sel) {
    Spectrum total = resolve_spectrum(g.spectrum);
    CofiberSES ses = cofiber_ses(total, sub_cells);
    std::string out = "# les total=" + ses.total.name() + " sub=" + ses.sub.name() +
                      " quot=" + ses.quot.name() + "\n";

    if (s_one < 0) {
        ExtLES les(ses, g.smax, g.smax + g.stem_max, g.eo);
        size_t bad = 0, rows = 0;
        for (int s = 0; s <= g.smax; ++s)
            for (int n = 0; n <= g.stem_max; ++n) {
                int t = s + n;
                size_t a = les.dim_sub(s, t), b = les.dim_total(s, t), c = les.dim_quot(s, t);
                bool ok = les.exact_at(s, t);
                ++rows;
                if (!ok)
                    ++bad;
                if (a == 0 && b == 0 && c == 0 && ok)
                    continue;
                char line[96];
                snprintf(line, sizeof line, "s=%d stem=%d sub=%zu total=%zu quot=%zu exact=%s\n",
                         s, n, a, b, c, ok ? "yes" : "NO");
                out += line;
            }
        char tail[96];
        snprintf(tail, sizeof tail, "# exactness %zu/%zu bidegrees\n", rows - bad, rows);
        out += tail;
        write_out(g, out);
        return bad ? 1 : 0;
    }

    ConnectingMap cm(ses);
    int t = s_one + stem_one;
    ExtGroup grp = ext_group(ses.quot, s_one, t, g.eo);
    names().annotate(grp);
    for (auto& c : grp.classes) {
        if (!c.has_rep())
            throw Error("connecting needs chain-level classes; raise --lambda-cap");
        if (!cls_sel.empty() && c.leading_str() != cls_sel)
            continue;
        ExtClass img = cm.apply(s_one, t, c, g.eo);
        ExtGroup w;
        w.s = img.s;
        w.t = img.t;
        w.classes = {img};
        names().annotate(w);
        out += "delta(" + label(c) + ") = " + (w.classes[0].has_rep() ? label(w.classes[0]) : "0") +
               "\n";
    }
    write_out(g, out);
    return 0;
}

/* ---- ahss ---- */

int cmd_ahss(const Gopt& g, int pages_r, int sub_cut) {
    Spectrum sp = resolve_spectrum(g.spectrum);
    int tmax = g.smax + g.stem_max;
    std::string out = "# ahss " + sp.name() + "\n";

    if (pages_r > 0) {
        auto pages = ahss_pages(sp, g.smax, tmax, g.eo);
        for (auto& pg : pages) {
            if (pg.r > pages_r)
                break;
            char head[32];
            snprintf(head, sizeof head, "page E%d\n", pg.r);
            out += head;
            for (auto& e : pg.entries) {
                if (e.t - e.s > g.stem_max || e.dim == 0)
                    continue;
                char line[96];
                snprintf(line, sizeof line, "  s=%d stem=%d cell=%d dim=%zu\n", e.s, e.t - e.s,
                         e.p, e.dim);
                out += line;
            }
        }
        write_out(g, out);
        return 0;
    }

    auto einf = ahss_einf(sp, g.smax, tmax, g.eo);
    std::map<std::pair<int, int>, std::vector<std::pair<int, size_t>>> by_bideg;
    for (auto& e : einf)
        if (e.dim)
            by_bideg[{e.s, e.t}].push_back({e.p, e.dim});

    for (int s = 0; s <= g.smax; ++s)
        for (int n = 0; n <= g.stem_max; ++n) {
            auto it = by_bideg.find({s, s + n});
            if (it == by_bideg.end())
                continue;
            size_t total = 0;
            for (auto& [p, d] : it->second)
                total += d;
            char head[48];
            snprintf(head, sizeof head, "s=%d stem=%d dim=%zu: ", s, n, total);
            out += head;

            bool chain = !g.eo.force_minres && lam_ok(sp, s, s + n, g.eo);
            bool first = true;
            if (chain) {
                ExtGroup grp = ext_group(sp, s, s + n, g.eo);
                names().annotate(grp);
                for (auto& c : grp.classes) {
                    out += first ? "" : ", ";
                    bool pushed = sub_cut >= 0 && c.rep.front().first <= sub_cut;
                    if (pushed)
                        out += "_";
                    if (!c.name.empty())
                        out += c.name;
                    else {
                        auto [cell, m] = c.leading();
                        out += "(" + chain_str(Chain{m}) + ")[" + std::to_string(cell) + "]";
                    }
                    first = false;
                }
            } else {
                for (auto& [p, d] : it->second) {
                    out += first ? "" : ", ";
                    std::string nm = names().lookup(s, n, "e" + std::to_string(p) + "*");
                    out += nm.empty() ? "a[" + std::to_string(p) + "]" : nm;
                    if (d > 1)
                        out += "*" + std::to_string(d);
                    first = false;
                }
            }
            out += "\n";
        }
    write_out(g, out);
    return 0;
}

/* ---- transfer ---- */

int cmd_transfer(const Gopt& g, bool surjectivity, int s_one, int stem_one) {
    Spectrum p = resolve_spectrum(g.spectrum);
    Spectrum s0 = build_sphere(0);
    std::string out;

    if (surjectivity) {
        out = "# transfer surjectivity " + p.name() + "\n";
        bool all = true;
        for (int n = 1; n <= g.stem_max; ++n)
            for (int s = 1; s <= g.smax; ++s) {
                size_t d = ext_group(s0, s, s + n, g.eo).dim();
                if (!d)
                    continue;
                bool cov = transfer_surjective(p, s, s + n, g.eo);
                char line[80];
                snprintf(line, sizeof line, "stem=%d s=%d dim=%zu covered=%s\n", n, s, d,
                         cov ? "yes" : "NO");
                out += line;
                all = all && cov;
            }
        out += all ? "# surjective on the window\n" : "# NOT surjective\n";
        write_out(g, out);
        return all ? 0 : 1;
    }

    out = "# transfer " + p.name() + "\n";
    std::vector<std::pair<int, int>> jobs;
    if (s_one >= 0 && stem_one >= 0)
        jobs = {{s_one, stem_one}};
    else
        for (int s = 0; s <= g.smax; ++s)
            for (int n = 0; n <= g.stem_max; ++n)
                jobs.push_back({s, n});
    for (auto [s, n] : jobs) {
        int t = s + n;
        if (!lam_ok(p, s, t, g.eo) || !lam_ok(s0, s + 1, t + 1, g.eo)) {
            if (s_one >= 0)
                throw ResourceCap("window too large for chain-level transfer");
            continue;
        }
        ExtGroup grp = ext_group(p, s, t, g.eo);
        if (!grp.dim())
            continue;
        names().annotate(grp);
        for (auto& c : grp.classes) {
            ExtClass img = transfer_class(p, c, true, g.eo);
            ExtGroup w;
            w.s = img.s;
            w.t = img.t;
            w.classes = {img};
            names().annotate(w);
            char head[40];
            snprintf(head, sizeof head, "s=%d stem=%d ", s, n);
            out += head;
            out += "t(" + label(c) + ") = " +
                   (w.classes[0].has_rep() ? label(w.classes[0]) : "0") + "\n";
        }
    }
    write_out(g, out);
    return 0;
}

/* ---- massey ---- */

Chain parse_class_token(const std::string& tok) {
    if (tok.size() == 2 && tok[0] == 'h' && tok[1] >= '0' && tok[1] <= '5')
        return parse_chain("l" + std::to_string((1 << (tok[1] - '0')) - 1));
    return parse_chain(tok);
}

int cmd_massey(const Gopt& g, const std::vector<std::string>& toks) {
    if (toks.size() != 3 && toks.size() != 4)
        throw CLI::ValidationError("massey", "expects 3 or 4 classes");
    std::vector<Chain> cs;
    int sB = 0, tB = 0;
    for (auto& tok : toks) {
        Chain c = parse_class_token(tok);
        if (c.empty())
            throw Error("zero class in a bracket");
        sB += c.front().s();
        tB += c.front().t();
        cs.push_back(std::move(c));
    }
    sB -= int(toks.size()) - 2;
    Spectrum s0 = build_sphere(0);
    std::string out;
    char head[64];
    snprintf(head, sizeof head, "at (s=%d stem=%d): ", sB, tB - sB);

    try {
        if (toks.size() == 4) {
            Chain rep = massey_four(cs[0], cs[1], cs[2], cs[3], g.eo);
            ExtClass red = reduce_class(s0, sB, tB, rep.empty() ? ModChain{} : ModChain{{0, rep}},
                                        g.eo);
            ExtGroup w;
            w.s = sB;
            w.t = tB;
            w.classes = {red};
            names().annotate(w);
            out = "<" + toks[0] + "," + toks[1] + "," + toks[2] + "," + toks[3] + "> " + head +
                  (w.classes[0].has_rep() ? label(w.classes[0]) : "0") +
                  " (representative only)\n";
            write_out(g, out);
            return 0;
        }

        Chain rep = massey_triple(cs[0], cs[1], cs[2], g.eo);
        ExtClass red = reduce_class(s0, sB, tB, rep.empty() ? ModChain{} : ModChain{{0, rep}},
                                    g.eo);
        ExtGroup grp = ext_group(s0, sB, tB, g.eo);
        names().annotate(grp);

        /* indeterminacy a * Ext^{s_b+s_c-1} + Ext^{s_a+s_b-1} * c */
        std::vector<BitVec> span;
        auto shove = [&](const Chain& fixed, int s2, int t2, bool left) {
            ExtGroup e2 = ext_group(s0, s2, t2, g.eo);
            for (auto& u : e2.classes) {
                Chain p = left ? lambda().mul(fixed, u.rep.at(0).second)
                               : lambda().mul(u.rep.at(0).second, fixed);
                ExtClass r2 = reduce_class(s0, sB, tB, p.empty() ? ModChain{} : ModChain{{0, p}},
                                           g.eo);
                if (!r2.has_rep())
                    continue;
                BitVec v(grp.dim());
                for (int k : basis_coords(grp, r2.rep))
                    v.set(k);
                span.push_back(v);
            }
        };
        int sbc = cs[1].front().s() + cs[2].front().s() - 1;
        int tbc = cs[1].front().t() + cs[2].front().t();
        shove(cs[0], sbc, tbc, true);
        int sab = cs[0].front().s() + cs[1].front().s() - 1;
        int tab = cs[0].front().t() + cs[1].front().t();
        shove(cs[2], sab, tab, false);
        EchelonF2 ech = echelonize(span, grp.dim());

        ExtGroup w;
        w.s = sB;
        w.t = tB;
        w.classes = {red};
        names().annotate(w);
        out = "<" + toks[0] + "," + toks[1] + "," + toks[2] + "> " + head +
              (w.classes[0].has_rep() ? label(w.classes[0]) : "0");
        char tail[96];
        snprintf(tail, sizeof tail, "; indeterminacy dim=%zu in a group of dim=%zu\n",
                 ech.rows.size(), grp.dim());
        out += tail;
        write_out(g, out);
        return 0;
    } catch (const BracketUndefined& e) {
        write_out(g, std::string("undefined: ") + e.what() + "\n");
        return 0;
    }
}

/* ---- chart ---- */

int cmd_chart(const Gopt& g, int stem_min, bool no_edges) {
    Spectrum sp = resolve_spectrum(g.spectrum);
    ChartOptions co;
    co.smax = g.smax;
    co.stem_min = stem_min;
    co.stem_max = g.stem_max;
    co.svg = g.format == "svg";
    co.edges = !no_edges;
    co.reg = names().size() ? &names() : nullptr;
    write_out(g, chart_render(sp, co, g.eo));
    return 0;
}

/* ---- verify-paper ---- */

struct VerifyResult {
    bool pass = false;
    std::string line;
};

std::string names_of(const ExtGroup& g) {
    std::string s = "[";
    bool first = true;
    for (auto& c : g.classes)
        if (!c.name.empty()) {
            s += (first ? "" : ",") + c.name;
            first = false;
        }
    return s + "]";
}

VerifyResult verify_entry(const json& e, const ExtOptions& base) {
    VerifyResult r;
    std::string kind = e.value("kind", "dim");
    ExtOptions opt = base;
    if (e.contains("lambda_cap"))
        opt.lambda_cap = e["lambda_cap"].get<size_t>();
    std::string expected, got;
    Spectrum s0 = build_sphere(0);

    if (kind == "dim") {
        Spectrum sp = resolve_spectrum(e["spectrum"].get<std::string>());
        int s = e["s"], stem = e["stem"], t = s + stem;
        size_t want = e["dim"].get<size_t>();
        std::vector<std::string> want_names = e.value("names", std::vector<std::string>{});
        std::string check = e.value("check", want_names.empty() ? "dim" : "chain");
        expected = "dim=" + std::to_string(want);
        if (!want_names.empty()) {
            expected += " names=[";
            for (size_t i = 0; i < want_names.size(); ++i)
                expected += (i ? "," : "") + want_names[i];
            expected += "]";
        }
        if (check == "chain") {
            ExtGroup grp = ext_group(sp, s, t, opt);
            names().annotate(grp);
            got = "dim=" + std::to_string(grp.dim()) + " names=" + names_of(grp);
            r.pass = grp.dim() == want;
            for (auto& nm : want_names) {
                bool found = false;
                for (auto& c : grp.classes)
                    found = found || c.name == nm;
                r.pass = r.pass && found;
            }
        } else if (check == "cells") {
            ExtGroup grp = ext_group(sp, s, t, opt);
            auto einf = ahss_einf(sp, s, t, opt);
            std::vector<int> want_cells = e.value("cells", std::vector<int>{});
            std::sort(want_cells.begin(), want_cells.end());
            got = "dim=" + std::to_string(grp.dim()) + " cells=[";
            std::vector<std::string> have;
            std::vector<int> prof;
            for (auto& en : einf)
                if (en.s == s && en.t == t && en.dim) {
                    std::string nm = names().lookup(s, stem, "e" + std::to_string(en.p) + "*");
                    for (size_t k = 0; k < en.dim; ++k) {
                        have.push_back(nm.empty() ? "a[" + std::to_string(en.p) + "]" : nm);
                        prof.push_back(en.p);
                    }
                }
            for (size_t i = 0; i < have.size(); ++i)
                got += (i ? "," : "") + have[i];
            got += "]";
            std::sort(prof.begin(), prof.end());
            r.pass = grp.dim() == want;
            if (!want_cells.empty())
                r.pass = r.pass && prof == want_cells;
            for (auto& nm : want_names)
                r.pass = r.pass && std::count(have.begin(), have.end(), nm) > 0;
        } else {
            ExtGroup grp = ext_group(sp, s, t, opt);
            got = "dim=" + std::to_string(grp.dim());
            r.pass = grp.dim() == want;
        }
    } else if (kind == "rewrite") {
        std::istringstream ss(e["word"].get<std::string>());
        std::vector<int> word;
        std::string tok;
        while (ss >> tok)
            word.push_back(atoi(tok.c_str() + 1));
        expected = e["expect"].get<std::string>();
        got = chain_str(lambda().rewrite(word));
        r.pass = got == expected;
    } else if (kind == "diff") {
        expected = e["expect"].get<std::string>();
        got = chain_str(lambda().d(parse_chain(e["chain"].get<std::string>())));
        r.pass = got == expected;
    } else if (kind == "module-diff") {
        Spectrum sp = resolve_spectrum(e["spectrum"].get<std::string>());
        expected = e["expect"].get<std::string>();
        got = mod_chain_str(module_diff(sp, parse_mod_chain(e["chain"].get<std::string>())));
        r.pass = got == expected;
    } else if (kind == "reduce") {
        Spectrum sp = resolve_spectrum(e["spectrum"].get<std::string>());
        int s = e["s"], t = s + e["stem"].get<int>();
        ModChain z = parse_mod_chain(e["chain"].get<std::string>());
        ExtClass red = reduce_class(sp, s, t, z, opt);
        expected = e["expect"].get<std::string>();
        got = red.has_rep() ? red.leading_str() : "0";
        std::string nm = names().lookup(red);
        r.pass = got == expected || (!nm.empty() && nm == expected);
        if (!nm.empty())
            got += " [" + nm + "]";
    } else if (kind == "connecting") {
        Spectrum total = resolve_spectrum(e["total"].get<std::string>());
        CofiberSES ses = cofiber_ses(total, e["sub"].get<std::vector<int>>());
        int s = e["s"], t = s + e["stem"].get<int>();
        ModChain z = parse_mod_chain(e["class"].get<std::string>());
        ExtClass x = reduce_class(ses.quot, s, t, z, opt);
        ConnectingMap cm(ses);
        ExtClass img = cm.apply(s, t, x, opt);
        expected = e["expect"].get<std::string>();
        got = img.has_rep() ? img.leading_str() : "0";
        std::string nm = names().lookup(img);
        r.pass = got == expected || (!nm.empty() && nm == expected);
        if (!nm.empty())
            got += " [" + nm + "]";
    } else if (kind == "transfer") {
        Spectrum p = resolve_spectrum(e["spectrum"].get<std::string>());
        int s = e["s"], t = s + e["stem"].get<int>();
        ExtGroup grp = ext_group(p, s, t, opt);
        std::string sel = e["class"].get<std::string>();
        expected = e["expect"].get<std::string>();
        got = "no class " + sel;
        for (auto& c : grp.classes)
            if (c.leading_str() == sel) {
                ExtClass img = transfer_class(p, c, true, opt);
                got = img.has_rep() ? img.leading_str() : "0";
                std::string nm = names().lookup(img);
                r.pass = got == expected || (!nm.empty() && nm == expected);
                if (!nm.empty())
                    got += " [" + nm + "]";
                break;
            }
    } else if (kind == "massey") {
        std::vector<Chain> cs;
        int sB = 0, tB = 0;
        for (auto& a : e["args"]) {
            Chain c = parse_class_token(a.get<std::string>());
            sB += c.front().s();
            tB += c.front().t();
            cs.push_back(std::move(c));
        }
        sB -= int(cs.size()) - 2;
        Chain rep = cs.size() == 3 ? massey_triple(cs[0], cs[1], cs[2], opt)
                                   : massey_four(cs[0], cs[1], cs[2], cs[3], opt);
        ExtClass red = reduce_class(s0, sB, tB, rep.empty() ? ModChain{} : ModChain{{0, rep}},
                                    opt);
        expected = e["expect"].get<std::string>();
        got = red.has_rep() ? red.leading_str() : "0";
        std::string nm = names().lookup(red);
        r.pass = got == expected || (!nm.empty() && nm == expected);
        if (!nm.empty())
            got += " [" + nm + "]";
    } else {
        throw Error("unknown expectation kind " + kind);
    }

    r.line = std::string(r.pass ? "PASS" : "FAIL") + " " + e["id"].get<std::string>() +
             " expected='" + expected + "' got='" + got + "' anchor='" +
             e.value("anchor", "") + "'\n";
    return r;
}

int cmd_verify(const Gopt& g, const std::string& data_dir, const std::string& tier) {
    std::string exp_path = data_dir + "/expectations.json";
    std::string nm_path = data_dir + "/names.json";
    std::ifstream probe(exp_path);
    if (!probe) {
        fprintf(stderr, "config error: expectations file %s not found\n", exp_path.c_str());
        return 2;
    }
    probe.close();
    if (std::ifstream(nm_path).good())
        names().load(nm_path);

    json all = json::parse(slurp(exp_path));
    std::vector<json> entries;
    for (auto& e : all)
        if (tier == "full" || e.value("tier", "full") == "smoke")
            entries.push_back(e);

    std::vector<VerifyResult> results(entries.size());
    run_pool(resolve_threads(g), entries.size(), [&](size_t i) {
        try {
            results[i] = verify_entry(entries[i], g.eo);
        } catch (const ResourceCap&) {
            throw;
        } catch (const std::exception& ex) {
            results[i].pass = false;
            results[i].line = "FAIL " + entries[i].value("id", "?") + " expected='?' got='error: " +
                              ex.what() + "' anchor='" + entries[i].value("anchor", "") + "'\n";
        }
    });

    std::string out;
    size_t npass = 0;
    for (auto& r : results) {
        out += r.line;
        npass += r.pass;
    }
    char tail[80];
    snprintf(tail, sizeof tail, "# %zu/%zu passed (%s tier)\n", npass, results.size(),
             tier.c_str());
    out += tail;
    write_out(g, out);
    return npass == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ext-workbench: Ext charts over the mod-2 lambda algebra"};
    app.require_subcommand(1);
    Gopt g;
    app.add_option("--out", g.out, "write the report to a file instead of stdout");
    app.add_option("--format", g.format, "text|json (chart: text|svg)")
        ->check(CLI::IsMember({"text", "json", "svg"}));
    app.add_option("--threads", g.threads, "worker threads (default EXTWB_THREADS or 1)");
    app.add_option("--names", g.names_path, "class-name registry JSON");
    app.add_flag("--no-cache", g.eo.no_cache, "bypass the result cache");
    app.add_option("--lambda-cap", g.eo.lambda_cap, "largest chain-level slice");
    app.add_option("--entry-cap", g.eo.entry_cap, "sparse echelon entry budget");
    app.add_flag("--force-lambda", g.eo.force_lambda, "chain-level backend only");
    app.add_flag("--force-minres", g.eo.force_minres, "resolution backend only");

    auto add_common = [&](CLI::App* c, bool window = true) {
        c->add_option("--spectrum", g.spectrum, "builtin name, S<n>, P<a>_<b>, name@k, or JSON file");
        if (window) {
            c->add_option("--smax", g.smax, "filtration bound");
            c->add_option("--stem-max", g.stem_max, "stem bound");
        }
        c->fallthrough();
    };

    int s_one = -1, stem_one = -1;
    bool reps = false, zeros = false;
    auto* c_ext = app.add_subcommand("ext", "Ext groups over a window or a single bidegree");
    add_common(c_ext);
    c_ext->add_option("-s,--s", s_one, "single filtration");
    c_ext->add_option("-n,--stem", stem_one, "single stem");
    c_ext->add_flag("--rep", reps, "print full representatives");
    c_ext->add_flag("--zeros", zeros, "include zero groups");

    auto* c_cur = app.add_subcommand("curtis", "Curtis-style elimination table");
    add_common(c_cur);

    std::vector<int> sub_cells;
    std::string cls_sel;
    auto* c_del = app.add_subcommand("delta", "cell-partition LES and connecting images");
    add_common(c_del);
    c_del->add_option("--sub", sub_cells, "sub-spectrum cells")->delimiter(',')->required();
    c_del->add_option("-s,--s", s_one, "quotient class filtration");
    c_del->add_option("-n,--stem", stem_one, "quotient class stem");
    c_del->add_option("--class", cls_sel, "leading term of the quotient class");

    int pages_r = 0, sub_cut = -1;
    auto* c_ah = app.add_subcommand("ahss", "cell spectral sequence pages / E-infinity labels");
    add_common(c_ah);
    c_ah->add_option("--pages", pages_r, "dump chain-level pages E1..Er");
    c_ah->add_option("--pushforward-below", sub_cut,
                     "underline classes supported on cells <= this");

    bool surj = false;
    auto* c_tr = app.add_subcommand("transfer", "stunted projective transfer images");
    add_common(c_tr);
    c_tr->add_flag("--surjectivity", surj, "check coverage of the sphere window");
    c_tr->add_option("-s,--s", s_one, "single filtration");
    c_tr->add_option("-n,--stem", stem_one, "single stem");

    std::vector<std::string> toks;
    auto* c_ma = app.add_subcommand("massey", "triple/fourfold Massey brackets on the sphere");
    c_ma->add_option("classes", toks, "3 or 4 classes (h0..h5 or chain strings)")->required();
    c_ma->fallthrough();

    int stem_min = 0;
    bool no_edges = false;
    auto* c_ch = app.add_subcommand("chart", "Adams chart (text grid or SVG)");
    add_common(c_ch);
    c_ch->add_option("--stem-min", stem_min, "left edge of the window");
    c_ch->add_flag("--no-edges", no_edges, "dots only");

    std::string data_dir = "data", tier = "smoke";
    auto* c_vp = app.add_subcommand("verify-paper", "run the bundled expectation suite");
    c_vp->add_option("--data", data_dir, "directory with expectations.json / names.json");
    c_vp->add_option("--tier", tier, "smoke|full")->check(CLI::IsMember({"smoke", "full"}));
    c_vp->fallthrough();

    bool gc_all = false;
    auto* c_ca = app.add_subcommand("cache", "cache stat / gc");
    auto* c_ca_stat = c_ca->add_subcommand("stat", "show file count and size");
    auto* c_ca_gc = c_ca->add_subcommand("gc", "drop stale engine versions");
    c_ca_gc->add_flag("--all", gc_all, "drop everything");
    c_ca->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_vp)
            return cmd_verify(g, data_dir, tier);
        load_names(g);
        if (*c_ext)
            return cmd_ext(g, s_one, stem_one, reps, zeros);
        if (*c_cur)
            return cmd_curtis(g);
        if (*c_del)
            return cmd_delta(g, sub_cells, s_one, stem_one, cls_sel);
        if (*c_ah)
            return cmd_ahss(g, pages_r, sub_cut);
        if (*c_tr)
            return cmd_transfer(g, surj, s_one, stem_one);
        if (*c_ma)
            return cmd_massey(g, toks);
        if (*c_ch)
            return cmd_chart(g, stem_min, no_edges);
        if (*c_ca_stat) {
            auto st = Cache::inst().stat();
            printf("dir=%s files=%zu bytes=%zu\n", Cache::inst().dir().c_str(), st.files,
                   st.bytes);
            return 0;
        }
        if (*c_ca_gc) {
            printf("removed=%zu\n", Cache::inst().gc(gc_all));
            return 0;
        }
    } catch (const ResourceCap& e) {
        fprintf(stderr, "resource cap: %s\n", e.what());
        return 3;
    } catch (const CLI::Error& e) {
        fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
