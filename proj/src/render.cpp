#include "hept/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hept {

RenderStyle RenderStyle::defaults() {
    RenderStyle st;
    st.role_fill = {
        {Role::Root, "#e8b22a"},
        {Role::RootHalt, "#c79312"},
        {Role::BorderL, "#2e7d32"},
        {Role::BorderR, "#1b5e20"},
        {Role::BorderRChordStart, "#388e3c"},
        {Role::BorderRExec, "#00796b"},
        {Role::Inside, "#d9d4c7"},
        {Role::ChordPass, "#90b8e0"},
        {Role::ChordExec, "#d84334"},
        {Role::TransitSignal, "#ef8c3b"},
        {Role::SilverEmit, "#f2f2f7"},
        {Role::SilverTransit, "#bfc2cc"},
        {Role::SilverChordCross, "#a3a8ba"},
        {Role::CornerLeftM, "#868c9e"},
        {Role::CornerRightN, "#6f7588"},
        {Role::BorderSilverEnd, "#9a9fae"},
    };
    return st;
}

std::vector<LayoutTile> layout(const AdjacencyMap& patch) {
    std::vector<LayoutTile> out;
    out.reserve(patch.size());
    for (const auto& t : patch.tiles()) {
        LayoutTile lt;
        lt.address = t.address;
        lt.ring = t.ring;
        for (int i = 0; i < 7; ++i)
            lt.vertices[i] = to_disc_point(t.vertices[i]);
        out.push_back(std::move(lt));
    }
    return out;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string to_svg(const std::vector<LayoutTile>& tiles, const Configuration* cfg,
                   const TileSet* ts, const RenderStyle& style) {
    const double r = style.disc_px;
    auto px = [&](const DiscPoint& p) {
        return std::pair<double, double>{(p.x + 1.0) * r, (1.0 - p.y) * r};
    };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(2 * r) << "\" height=\""
        << fmt(2 * r) << "\" viewBox=\"0 0 " << fmt(2 * r) << " " << fmt(2 * r) << "\">\n";
    out << "<circle cx=\"" << fmt(r) << "\" cy=\"" << fmt(r) << "\" r=\"" << fmt(r)
        << "\" fill=\"#ffffff\" stroke=\"#222222\" stroke-width=\"1\"/>\n";

    const double stroke_px = style.stroke_width * r;
    for (const auto& t : tiles) {
        if (style.depth_limit >= 0 && t.ring > style.depth_limit)
            continue;
        std::string fill = style.neutral_fill;
        if (cfg != nullptr) {
            const auto it = cfg->cells.find(t.address);
            if (it != cfg->cells.end()) {
                if (ts == nullptr)
                    throw std::invalid_argument("to_svg: configuration given without a tile set");
                const TilePrototype* proto = ts->find(it->second.tile);
                if (proto == nullptr)
                    throw std::invalid_argument("to_svg: placement uses unknown tile '" +
                                                it->second.tile + "'");
                const auto fit = style.role_fill.find(proto->role);
                if (fit == style.role_fill.end())
                    throw std::invalid_argument(std::string("to_svg: no color for role ") +
                                                role_name(proto->role));
                fill = fit->second;
            }
        }
        out << "<polygon points=\"";
        for (int i = 0; i < 7; ++i) {
            const auto [x, y] = px(t.vertices[i]);
            if (i)
                out << " ";
            out << fmt(x) << "," << fmt(y);
        }
        out << "\" fill=\"" << fill << "\" stroke=\"" << style.stroke_color
            << "\" stroke-width=\"" << fmt(stroke_px) << "\"/>\n";
    }

    if (style.guides) {
        // Decorative sector guides: rays through the edge midpoints between
        // consecutive sector trees, drawn as polylines over the rendered rings.
        for (const auto& t : tiles) {
            if (!t.address.is_center())
                continue;
            for (int e = 0; e < 7; ++e) {
                const DiscPoint a = t.vertices[e];
                const auto [x, y] = px(a);
                out << "<line x1=\"" << fmt(r) << "\" y1=\"" << fmt(r) << "\" x2=\"" << fmt(x)
                    << "\" y2=\"" << fmt(y) << "\" stroke=\"#caa83e\" stroke-width=\""
                    << fmt(stroke_px * 2.0) << "\" stroke-dasharray=\"4 3\"/>\n";
            }
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace hept
