// Deterministic SVG rendering of multicurves on the twice-punctured disk.
//
// Layout: the disk is a rounded rectangle with the U-puncture on the left and
// the Q-puncture on the right; the arc sits vertically in the middle with the
// side points stacked by index. U-face arcs loop left, Q-face arcs right, and
// the change-of-side word is drawn inside the arc neighborhood as crossings
// and crossover arrows. Identical input produces byte-identical output.
#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "iotacx/slide.hpp"

namespace iotacx {

struct RenderOptions {
    int rowHeight = 26;
    int margin = 40;
    bool labels = true;
};

namespace detail {

inline std::string fmt1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

}  // namespace detail

inline std::string renderSvg(const Multicurve& mc, const RenderOptions& opts = {}) {
    using detail::fmt1;
    const int n = std::max(1, mc.size());
    auto word = pwordOf(mc.P);
    int crossings = 0;
    for (const auto& mv : word)
        if (mv.kind == ElementaryMove::Kind::Crossing) ++crossings;
    const double rows = n;
    const double innerH = rows * opts.rowHeight + 20;
    const double wordW = std::max<double>(60, 24.0 * (static_cast<double>(word.size()) + 1));
    const double faceW = 120;
    const double punctureW = 60;
    const double width = 2 * opts.margin + 2 * punctureW + 2 * faceW + wordW;
    const double height = 2 * opts.margin + innerH;
    const double top = opts.margin;
    const double s1x = opts.margin + punctureW + faceW;       // left boundary of N(a)
    const double s2x = s1x + wordW;                            // right boundary of N(a)
    const double ux = opts.margin + punctureW / 2.0;           // U puncture
    const double qx = width - opts.margin - punctureW / 2.0;   // Q puncture
    const double cy = top + innerH / 2.0;
    auto rowY = [&](int idx) { return top + innerH - 10 - (idx + 0.5) * opts.rowHeight; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt1(width) +
           "\" height=\"" + fmt1(height) + "\" viewBox=\"0 0 " + fmt1(width) + " " + fmt1(height) +
           "\">\n";
    out += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
           "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">"
           "<path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#c0392b\"/></marker></defs>\n";
    // disk
    out += "<rect x=\"" + fmt1(opts.margin / 2.0) + "\" y=\"" + fmt1(opts.margin / 2.0) +
           "\" width=\"" + fmt1(width - opts.margin) + "\" height=\"" + fmt1(height - opts.margin) +
           "\" rx=\"24.0\" fill=\"#fdfdfd\" stroke=\"#444444\" stroke-width=\"1.5\"/>\n";
    // punctures
    for (auto [px, name] : {std::pair<double, const char*>{ux, "U"}, {qx, "Q"}}) {
        out += "<circle cx=\"" + fmt1(px) + "\" cy=\"" + fmt1(cy) +
               "\" r=\"7.0\" fill=\"#ffffff\" stroke=\"#222222\" stroke-width=\"1.5\"/>\n";
        out += "<circle cx=\"" + fmt1(px) + "\" cy=\"" + fmt1(cy) + "\" r=\"2.0\" fill=\"#222222\"/>\n";
        if (opts.labels)
            out += "<text x=\"" + fmt1(px) + "\" y=\"" + fmt1(cy - 14) +
                   "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"monospace\">" + name +
                   "</text>\n";
    }
    // the arc neighborhood
    out += "<rect x=\"" + fmt1(s1x) + "\" y=\"" + fmt1(top) + "\" width=\"" + fmt1(wordW) +
           "\" height=\"" + fmt1(innerH) +
           "\" fill=\"#f4f6fa\" stroke=\"#99a3b0\" stroke-width=\"1.0\" stroke-dasharray=\"4,3\"/>\n";

    // side points, stacked by index
    for (int i = 0; i < mc.size(); ++i) {
        double y = rowY(i);
        out += "<circle cx=\"" + fmt1(s1x) + "\" cy=\"" + fmt1(y) + "\" r=\"2.5\" fill=\"#1a5276\"/>\n";
        out += "<circle cx=\"" + fmt1(s2x) + "\" cy=\"" + fmt1(y) + "\" r=\"2.5\" fill=\"#7d3c98\"/>\n";
        if (opts.labels)
            out += "<text x=\"" + fmt1(s1x - 6) + "\" y=\"" + fmt1(y - 6) +
                   "\" font-size=\"10\" text-anchor=\"end\" font-family=\"monospace\">" +
                   mc.gens[i].name + "</text>\n";
    }

    // face arcs: U side loops left, Q side right, reach grows with the wrap count
    auto faceArcs = [&](const std::vector<FaceArc>& arcs, bool left, const char* varName) {
        int idx = 0;
        for (const auto& a : arcs) {
            double x0 = left ? s1x : s2x;
            double ys = rowY(a.src), yd = rowY(a.dst);
            double reach = 28.0 + 16.0 * a.k + 5.0 * idx;
            double cx1 = left ? x0 - reach : x0 + reach;
            out += "<path d=\"M " + fmt1(x0) + " " + fmt1(ys) + " C " + fmt1(cx1) + " " + fmt1(ys) +
                   " " + fmt1(cx1) + " " + fmt1(yd) + " " + fmt1(x0) + " " + fmt1(yd) +
                   "\" fill=\"none\" stroke=\"#1a5276\" stroke-width=\"1.5\"/>\n";
            if (opts.labels) {
                std::string label = varName;
                if (a.k != 1) label += "^" + std::to_string(a.k);
                double lx = left ? cx1 + (left ? -4 : 4) : cx1 + 4;
                out += "<text x=\"" + fmt1(lx) + "\" y=\"" + fmt1((ys + yd) / 2.0) +
                       "\" font-size=\"10\" text-anchor=\"" + (left ? "end" : "start") +
                       "\" font-family=\"monospace\">" + label + "</text>\n";
            }
            ++idx;
        }
    };
    faceArcs(mc.uMatch, true, "U");
    faceArcs(mc.qMatch, false, "Q");

    // puncture connections for unmatched side points
    for (int i = 0; i < mc.size(); ++i) {
        if (incidenceOf(mc.uMatch, i).kind == PointIncidence::Kind::None)
            out += "<path d=\"M " + fmt1(s1x) + " " + fmt1(rowY(i)) + " L " + fmt1(ux) + " " +
                   fmt1(cy) + "\" fill=\"none\" stroke=\"#1a5276\" stroke-width=\"1.5\"/>\n";
        if (incidenceOf(mc.qMatch, i).kind == PointIncidence::Kind::None)
            out += "<path d=\"M " + fmt1(s2x) + " " + fmt1(rowY(i)) + " L " + fmt1(qx) + " " +
                   fmt1(cy) + "\" fill=\"none\" stroke=\"#7d3c98\" stroke-width=\"1.5\"/>\n";
    }

    // the word inside N(a): crossings and crossover arrows at successive slots;
    // upper arrows are indexed by s1 rows and lower arrows by s2 rows, and the
    // word keeps all arrows outside the crossing block
    {
        double xStep = wordW / (static_cast<double>(word.size()) + 1);
        double x = s1x;
        auto hline = [&](int row, double xa, double xb) {
            out += "<path d=\"M " + fmt1(xa) + " " + fmt1(rowY(row)) + " L " + fmt1(xb) + " " +
                   fmt1(rowY(row)) + "\" fill=\"none\" stroke=\"#5d6d7e\" stroke-width=\"1.2\"/>\n";
        };
        for (const auto& mv : word) {
            double xNext = x + xStep;
            if (mv.kind == ElementaryMove::Kind::Crossing) {
                for (int r = 0; r < mc.size(); ++r)
                    if (r != mv.i && r != mv.j) hline(r, x, xNext);
                out += "<path d=\"M " + fmt1(x) + " " + fmt1(rowY(mv.i)) + " L " + fmt1(xNext) + " " +
                       fmt1(rowY(mv.j)) + "\" fill=\"none\" stroke=\"#5d6d7e\" stroke-width=\"1.2\"/>\n";
                out += "<path d=\"M " + fmt1(x) + " " + fmt1(rowY(mv.j)) + " L " + fmt1(xNext) + " " +
                       fmt1(rowY(mv.i)) + "\" fill=\"none\" stroke=\"#5d6d7e\" stroke-width=\"1.2\"/>\n";
            } else {
                for (int r = 0; r < mc.size(); ++r) hline(r, x, xNext);
                double mid = x + xStep / 2.0;
                out += "<path d=\"M " + fmt1(mid) + " " + fmt1(rowY(mv.i)) + " L " + fmt1(mid) + " " +
                       fmt1(rowY(mv.j)) +
                       "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.3\" "
                       "marker-end=\"url(#arrow)\"/>\n";
            }
            x = xNext;
        }
        for (int r = 0; r < mc.size(); ++r) hline(r, x, s2x);
    }
    out += "</svg>\n";
    return out;
}

}  // namespace iotacx
