#pragma once

#include "ext.h"
#include "names.h"

namespace extwb {

/* Adams-chart rendering: dims per (stem, s) plus h0/h1/h2 multiplication
 * edges.  Output is deterministic byte-for-byte for a fixed input.
 *
 * Small windows run at chain level (dots carry leading terms and registry
 * names); larger ones fall back to the resolution backend (anonymous dots,
 * edges via chain-map lifts). */
struct ChartOptions {
    int smax = 8;
    int stem_min = 0;
    int stem_max = 20;
    bool svg = false;
    bool edges = true;
    const NameRegistry* reg = nullptr;
};

std::string chart_render(const Spectrum& spec, const ChartOptions& co, const ExtOptions& opt = {});

}  // namespace extwb
