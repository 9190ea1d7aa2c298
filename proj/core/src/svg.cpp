#include "qvord/svg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qvord/error.hpp"
#include "qvord/theory.hpp"
#include "text_format.hpp"

namespace qvord {

namespace {

using detail::format_double;
using detail::format_fixed;

constexpr double kWidth = 720.0;
constexpr double kHeight = 520.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 50.0;
constexpr int kTicks = 6;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Range {
    double lo, hi;
    double span() const { return hi - lo; }
};

// Pad the data extent by 10% per side; a collapsed extent becomes a fixed
// window around the value so single points still render.
Range padded(double lo, double hi) {
    if (hi - lo < 1e-12) {
        const double center = (lo + hi) / 2.0;
        const double half = std::max(0.5, std::abs(center) * 0.1);
        return {center - half, center + half};
    }
    const double pad = (hi - lo) * 0.1;
    return {lo - pad, hi + pad};
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

struct Px {
    double x, y;
};

// Andrew's monotone chain; counter-clockwise hull, collinear points dropped.
std::vector<Px> convex_hull(std::vector<Px> pts) {
    std::sort(pts.begin(), pts.end(), [](const Px& a, const Px& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Px& a, const Px& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() <= 2)
        return pts;
    auto cross = [](const Px& o, const Px& a, const Px& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Px> hull(2 * pts.size());
    std::size_t h = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (h >= 2 && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0)
            --h;
        hull[h++] = pts[i];
    }
    const std::size_t lower = h + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        while (h >= lower && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0)
            --h;
        hull[h++] = pts[i];
    }
    hull.resize(h - 1);
    return hull;
}

// Intersection of the line y = a*x + b with a data-space rectangle.
std::vector<Px> clip_line(double a, double b, const Range& xr, const Range& yr) {
    const double eps = 1e-9 * (std::abs(xr.span()) + std::abs(yr.span()));
    std::vector<Px> pts;
    auto push = [&](double x, double y) {
        for (const Px& p : pts)
            if (std::abs(p.x - x) <= eps && std::abs(p.y - y) <= eps)
                return;
        pts.push_back({x, y});
    };
    for (double x : {xr.lo, xr.hi}) {
        const double y = a * x + b;
        if (y >= yr.lo - eps && y <= yr.hi + eps)
            push(x, std::clamp(y, yr.lo, yr.hi));
    }
    if (a != 0.0) {
        for (double y : {yr.lo, yr.hi}) {
            const double x = (y - b) / a;
            if (x >= xr.lo - eps && x <= xr.hi + eps)
                push(std::clamp(x, xr.lo, xr.hi), y);
        }
    }
    if (pts.size() > 2) {
        std::sort(pts.begin(), pts.end(),
                  [](const Px& p, const Px& q) { return p.x != q.x ? p.x < q.x : p.y < q.y; });
        pts = {pts.front(), pts.back()};
    }
    return pts;
}

} // namespace

std::string render_scatter(const PointSet& points, const ClusterResult* clusters,
                           bool overlay) {
    if (points.dim() != 2)
        throw ValueError("scatter rendering requires 2-D points, got dimension " +
                         std::to_string(points.dim()));
    for (const auto& p : points.points())
        for (double v : p)
            if (!std::isfinite(v))
                throw ValueError("non-finite coordinate");

    std::vector<int> labels(points.size(), 0);
    int k = 1;
    if (clusters != nullptr) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            auto it = clusters->assignment.find(points.ids()[i]);
            if (it == clusters->assignment.end())
                throw ValueError("cluster assignment is missing id '" + points.ids()[i] +
                                 "'");
            if (it->second < 0)
                throw ValueError("negative cluster index for id '" + points.ids()[i] + "'");
            labels[i] = it->second;
            k = std::max(k, it->second + 1);
        }
    }

    double xmin = points.points()[0][0], xmax = xmin;
    double ymin = points.points()[0][1], ymax = ymin;
    for (const auto& p : points.points()) {
        xmin = std::min(xmin, p[0]);
        xmax = std::max(xmax, p[0]);
        ymin = std::min(ymin, p[1]);
        ymax = std::max(ymax, p[1]);
    }
    const Range xr = padded(xmin, xmax);
    const Range yr = padded(ymin, ymax);

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - xr.lo) / xr.span() * plot_w; };
    auto py = [&](double y) { return kMarginTop + (yr.hi - y) / yr.span() * plot_h; };
    auto fx = [&](double v) { return format_fixed(v, 2); };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"520\" "
           "viewBox=\"0 0 720 520\">\n";
    svg += "<rect width=\"720\" height=\"520\" fill=\"#ffffff\"/>\n";
    svg += "<rect x=\"" + fx(kMarginLeft) + "\" y=\"" + fx(kMarginTop) + "\" width=\"" +
           fx(plot_w) + "\" height=\"" + fx(plot_h) +
           "\" fill=\"none\" stroke=\"#333333\"/>\n";

    svg += "<g class=\"ticks\" font-family=\"monospace\" font-size=\"11\" "
           "fill=\"#333333\" stroke=\"none\">\n";
    for (int t = 0; t < kTicks; ++t) {
        const double frac = static_cast<double>(t) / (kTicks - 1);
        const double xv = xr.lo + frac * xr.span();
        const double yv = yr.lo + frac * yr.span();
        const std::string tx = fx(px(xv));
        const std::string ty = fx(py(yv));
        svg += "<line x1=\"" + tx + "\" y1=\"" + fx(kMarginTop + plot_h) + "\" x2=\"" + tx +
               "\" y2=\"" + fx(kMarginTop + plot_h + 5) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + tx + "\" y=\"" + fx(kMarginTop + plot_h + 18) +
               "\" text-anchor=\"middle\">" + format_double(xv, 4) + "</text>\n";
        svg += "<line x1=\"" + fx(kMarginLeft - 5) + "\" y1=\"" + ty + "\" x2=\"" +
               fx(kMarginLeft) + "\" y2=\"" + ty + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + fx(kMarginLeft - 8) + "\" y=\"" + fx(py(yv) + 4) +
               "\" text-anchor=\"end\">" + format_double(yv, 4) + "</text>\n";
    }
    svg += "</g>\n";

    if (overlay) {
        svg += "<g class=\"overlay\" stroke=\"#999999\" fill=\"#999999\" "
               "font-family=\"monospace\" font-size=\"11\">\n";
        // The GP line S = 2I - 1 and the S = 1 line, clipped to the viewport.
        const auto gp = clip_line(2.0, -1.0, xr, yr);
        if (gp.size() == 2)
            svg += "<line class=\"refline\" x1=\"" + fx(px(gp[0].x)) + "\" y1=\"" +
                   fx(py(gp[0].y)) + "\" x2=\"" + fx(px(gp[1].x)) + "\" y2=\"" +
                   fx(py(gp[1].y)) + "\" stroke-dasharray=\"6 3\"/>\n";
        const auto s1 = clip_line(0.0, 1.0, xr, yr);
        if (s1.size() == 2)
            svg += "<line class=\"refline\" x1=\"" + fx(px(s1[0].x)) + "\" y1=\"" +
                   fx(py(s1[0].y)) + "\" x2=\"" + fx(px(s1[1].x)) + "\" y2=\"" +
                   fx(py(s1[1].y)) + "\" stroke-dasharray=\"6 3\"/>\n";
        const struct {
            const char* name;
            OrdPoint at;
        } landmarks[] = {{"A", kLandmarkA}, {"G", kLandmarkG}, {"J", kLandmarkJ},
                         {"P", kLandmarkP}};
        for (const auto& lm : landmarks) {
            if (lm.at.i < xr.lo || lm.at.i > xr.hi || lm.at.s < yr.lo || lm.at.s > yr.hi)
                continue;
            const std::string cx = fx(px(lm.at.i));
            const std::string cy = fx(py(lm.at.s));
            svg += "<circle class=\"landmark\" cx=\"" + cx + "\" cy=\"" + cy +
                   "\" r=\"3\" fill=\"none\"/>\n";
            svg += "<text x=\"" + fx(px(lm.at.i) + 5) + "\" y=\"" + fx(py(lm.at.s) - 5) +
                   "\" stroke=\"none\">" + lm.name + "</text>\n";
        }
        svg += "</g>\n";
    }

    if (clusters != nullptr) {
        svg += "<g class=\"hulls\">\n";
        for (int c = 0; c < k; ++c) {
            std::vector<Px> members;
            for (std::size_t i = 0; i < points.size(); ++i)
                if (labels[i] == c)
                    members.push_back(
                        {px(points.points()[i][0]), py(points.points()[i][1])});
            if (members.empty())
                continue;
            const char* color = kPalette[static_cast<std::size_t>(c) % 10];
            const auto hull = convex_hull(members);
            if (hull.size() == 1) {
                svg += std::string("<circle class=\"hull\" cx=\"") + fx(hull[0].x) +
                       "\" cy=\"" + fx(hull[0].y) + "\" r=\"9\" fill=\"none\" stroke=\"" +
                       color + "\"/>\n";
            } else if (hull.size() == 2) {
                svg += std::string("<line class=\"hull\" x1=\"") + fx(hull[0].x) +
                       "\" y1=\"" + fx(hull[0].y) + "\" x2=\"" + fx(hull[1].x) +
                       "\" y2=\"" + fx(hull[1].y) + "\" stroke=\"" + color + "\"/>\n";
            } else {
                std::string pts_attr;
                for (const Px& p : hull) {
                    if (!pts_attr.empty())
                        pts_attr += ' ';
                    pts_attr += fx(p.x) + "," + fx(p.y);
                }
                svg += std::string("<polygon class=\"hull\" points=\"") + pts_attr +
                       "\" fill=\"" + color + "\" fill-opacity=\"0.12\" stroke=\"" + color +
                       "\"/>\n";
            }
        }
        svg += "</g>\n";
    }

    svg += "<g class=\"points\" font-family=\"monospace\" font-size=\"11\" "
           "fill=\"#111111\">\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const char* color =
            clusters != nullptr ? kPalette[static_cast<std::size_t>(labels[i]) % 10]
                                : "#1f77b4";
        const std::string cx = fx(px(points.points()[i][0]));
        const std::string cy = fx(py(points.points()[i][1]));
        svg += std::string("<circle class=\"pt\" cx=\"") + cx + "\" cy=\"" + cy +
               "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
        svg += "<text class=\"lbl\" x=\"" + fx(px(points.points()[i][0]) + 6) + "\" y=\"" +
               fx(py(points.points()[i][1]) - 6) + "\">" + xml_escape(points.ids()[i]) +
               "</text>\n";
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

} // namespace qvord
