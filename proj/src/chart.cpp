#include "extwb/chart.h"

#include "extwb/minres.h"

#include <algorithm>
#include <map>
#include <sstream>

namespace extwb {

namespace {

struct Dot {
    int s, stem, idx;
    std::string name;
};
/* multiplication edge between dots; i = which h */
struct Edge {
    int s, stem, idx, i, tstem, tidx;
};

}  // namespace

std::string chart_render(const Spectrum& spec, const ChartOptions& co, const ExtOptions& opt) {
    const int smax = co.smax, n0 = std::max(0, co.stem_min), n1 = co.stem_max;
    if (n1 < n0 || smax < 0)
        throw Error("chart: empty window");

    bool chain = !opt.force_minres;
    if (chain && !opt.force_lambda)
        for (int s = 0; s <= smax + 1 && chain; ++s)
            for (int n = n0; n <= n1 + 3; ++n)
                if (module_dim(spec, s, n + s) > opt.lambda_cap) {
                    chain = false;
                    break;
                }

    std::vector<std::vector<int>> dim(smax + 1, std::vector<int>(n1 - n0 + 1, 0));
    std::vector<Dot> dots;
    std::vector<Edge> edges;
    const int hstem[3] = {0, 1, 3};

    if (chain) {
        std::map<std::pair<int, int>, ExtGroup> grp;
        for (int s = 0; s <= smax; ++s)
            for (int n = n0; n <= n1; ++n) {
                ExtGroup g = ext_group(spec, s, n + s, opt);
                if (co.reg)
                    co.reg->annotate(g);
                dim[s][n - n0] = (int)g.dim();
                for (int k = 0; k < (int)g.classes.size(); ++k)
                    dots.push_back({s, n, k, g.classes[k].name});
                grp[{s, n}] = std::move(g);
            }
        if (co.edges)
            for (int s = 0; s + 1 <= smax; ++s)
                for (int n = n0; n <= n1; ++n)
                    for (int k = 0; k < dim[s][n - n0]; ++k)
                        for (int i = 0; i < 3; ++i) {
                            int tn = n + hstem[i];
                            if (tn < n0 || tn > n1)
                                continue;
                            ExtClass p =
                                h_multiply(spec, grp[{s, n}].classes[k], i, true, opt);
                            if (!p.has_rep())
                                continue;
                            for (int tk : basis_coords(grp[{s + 1, tn}], p.rep))
                                edges.push_back({s, n, k, i, tn, tk});
                        }
    } else {
        MinRes& R = resolution_for(spec, smax + 1, n1 + smax + 4, opt);
        for (int s = 0; s <= smax; ++s)
            for (int n = n0; n <= n1; ++n) {
                dim[s][n - n0] = (int)R.ext_dim(s, n + s);
                for (int k = 0; k < dim[s][n - n0]; ++k)
                    dots.push_back({s, n, k, ""});
            }
        if (co.edges) {
            MinRes& S = resolution_for(build_sphere(0), 2, 8, opt);
            for (int s = 0; s + 1 <= smax; ++s)
                for (int n = n0; n <= n1; ++n)
                    for (int k = 0; k < dim[s][n - n0]; ++k) {
                        int t = n + s;
                        ResClass beta{s, t, BitVec(R.ext_dim(s, t))};
                        beta.coef.set(k);
                        ResLift lift(R, S, beta, 1, t + 4);
                        for (int i = 0; i < 3; ++i) {
                            int tn = n + hstem[i];
                            if (tn < n0 || tn > n1)
                                continue;
                            ResClass alpha{1, 1 << i, BitVec(1)};
                            alpha.coef.set(0);
                            ResClass pr = lift.product(alpha);
                            for (size_t tk = 0; tk < pr.coef.size(); ++tk)
                                if (pr.coef.get(tk))
                                    edges.push_back({s, n, k, i, tn, (int)tk});
                        }
                    }
        }
    }

    std::ostringstream out;
    if (!co.svg) {
        for (int s = smax; s >= 0; --s) {
            char pre[16];
            snprintf(pre, sizeof pre, "s%2d |", s);
            out << pre;
            for (int n = n0; n <= n1; ++n) {
                int d = dim[s][n - n0];
                out << ' ' << (d == 0 ? '.' : d <= 9 ? char('0' + d) : '*');
            }
            out << '\n';
        }
        out << "    +" << std::string(2 * (n1 - n0 + 1), '-') << '\n';
        std::string axis(5 + 2 * (n1 - n0 + 1), ' ');
        for (int n = n0; n <= n1; ++n)
            if (n % 5 == 0) {
                std::string lbl = std::to_string(n);
                size_t at = 6 + 2 * (n - n0) - (lbl.size() > 1 ? 1 : 0);
                if (at + lbl.size() <= axis.size())
                    axis.replace(at, lbl.size(), lbl);
            }
        out << axis << '\n';
        bool legend = false;
        for (auto& d : dots)
            if (!d.name.empty()) {
                if (!legend)
                    out << "named:\n";
                legend = true;
                out << "  (" << d.stem << "," << d.s << ") " << d.name << '\n';
            }
        return out.str();
    }

    /* SVG: one <circle> per class, one <line> per multiplication edge */
    const int cell = 44, ml = 52, mb = 36, mt = 16;
    const int W = ml + (n1 - n0 + 1) * cell + 16;
    const int H = mt + (smax + 1) * cell + mb;
    auto px = [&](int n, int idx, int d) {
        return ml + (n - n0) * cell + cell / 2 + (2 * idx - (d - 1)) * 5;
    };
    auto py = [&](int s) { return mt + (smax - s) * cell + cell / 2; };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<path d=\"M" << ml - 8 << " " << mt << " V" << H - mb + 8 << " M" << ml - 8 << " "
        << H - mb + 8 << " H" << W - 8 << "\" stroke=\"#444\" fill=\"none\"/>\n";
    for (int n = n0; n <= n1; ++n)
        if (n % 5 == 0)
            out << "<text x=\"" << ml + (n - n0) * cell + cell / 2 << "\" y=\"" << H - mb + 24
                << "\" font-size=\"11\" text-anchor=\"middle\">" << n << "</text>\n";
    for (int s = 0; s <= smax; ++s)
        out << "<text x=\"" << ml - 14 << "\" y=\"" << py(s) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << s << "</text>\n";
    for (auto& e : edges)
        out << "<line x1=\"" << px(e.stem, e.idx, dim[e.s][e.stem - n0]) << "\" y1=\""
            << py(e.s) << "\" x2=\"" << px(e.tstem, e.tidx, dim[e.s + 1][e.tstem - n0])
            << "\" y2=\"" << py(e.s + 1) << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    for (auto& d : dots) {
        out << "<circle cx=\"" << px(d.stem, d.idx, dim[d.s][d.stem - n0]) << "\" cy=\""
            << py(d.s) << "\" r=\"4\" fill=\"#1a1a1a\">";
        if (!d.name.empty())
            out << "<title>" << d.name << "</title>";
        out << "</circle>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace extwb
