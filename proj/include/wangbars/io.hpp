#pragma once

// Line-oriented file formats, key=value reports, and SVG / ASCII renderers.
//
//   tiles       tile <name> <N> <E> <S> <W>
//   bars        bar <name> left=<c> right=<c> top=<c,...> bottom=<c,...>
//   placements  domain torus|rect <W> <H> | domain free, then place <name> <x> <y>
//   lattice     lattice <P> <Q>, then row <y> <name>... for y = 0..Q-1
//   manifest    key=value
//
// '#' starts a comment; blank lines are ignored.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wangbars/core.hpp"
#include "wangbars/reduction.hpp"

namespace wangbars {

class ParseError : public Error {
public:
    ParseError(int line, const std::string& msg) : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

namespace detail {

struct Line {
    int number;
    std::vector<std::string> words;
};

inline std::vector<Line> logical_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ws(raw);
        Line l{number, {}};
        for (std::string w; ws >> w;) l.words.push_back(w);
        if (!l.words.empty()) out.push_back(std::move(l));
    }
    return out;
}

inline int parse_int(const Line& l, const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size() || v < INT32_MIN || v > INT32_MAX) throw std::invalid_argument(s);
        return static_cast<int>(v);
    } catch (const std::logic_error&) {
        throw ParseError(l.number, std::string("bad ") + what + " '" + s + "'");
    }
}

inline const std::string& symbol(const Line& l, const std::string& s, const char* what) {
    if (!is_symbol(s)) throw ParseError(l.number, std::string("bad ") + what + " '" + s + "'");
    return s;
}

inline const std::string& color(const Line& l, const std::string& s) {
    if (!is_color_token(s)) throw ParseError(l.number, "bad color '" + s + "'");
    return s;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

} // namespace detail

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

// ---------------------------------------------------------------------------
// tiles

inline TileSet parse_tiles(const std::string& text) {
    std::vector<Tile> tiles;
    std::set<std::string> names;
    for (const auto& l : detail::logical_lines(text)) {
        if (l.words[0] != "tile") throw ParseError(l.number, "expected 'tile', got '" + l.words[0] + "'");
        if (l.words.size() != 6) throw ParseError(l.number, "tile needs a name and four colors");
        Tile t{detail::symbol(l, l.words[1], "tile name"), detail::color(l, l.words[2]), detail::color(l, l.words[3]),
               detail::color(l, l.words[4]), detail::color(l, l.words[5])};
        if (!names.insert(t.name).second) throw ParseError(l.number, "duplicate tile '" + t.name + "'");
        tiles.push_back(std::move(t));
    }
    if (tiles.empty()) throw ParseError(0, "no tiles");
    return TileSet(std::move(tiles));
}

inline std::string format_tiles(const TileSet& tiles) {
    std::string out;
    for (const auto& t : tiles.tiles()) out += "tile " + t.name + ' ' + t.north + ' ' + t.east + ' ' + t.south + ' ' + t.west + '\n';
    return out;
}

// ---------------------------------------------------------------------------
// bars

inline BarSet parse_bars(const std::string& text) {
    std::vector<Bar> bars;
    std::set<std::string> names;
    for (const auto& l : detail::logical_lines(text)) {
        if (l.words[0] != "bar") throw ParseError(l.number, "expected 'bar', got '" + l.words[0] + "'");
        if (l.words.size() != 6) throw ParseError(l.number, "bar needs a name and left=, right=, top=, bottom=");
        Bar b;
        b.name = detail::symbol(l, l.words[1], "bar name");
        std::map<std::string, std::string> fields;
        for (std::size_t i = 2; i < 6; ++i) {
            const auto eq = l.words[i].find('=');
            if (eq == std::string::npos) throw ParseError(l.number, "expected key=value, got '" + l.words[i] + "'");
            const std::string key = l.words[i].substr(0, eq);
            if (key != "left" && key != "right" && key != "top" && key != "bottom") throw ParseError(l.number, "unknown key '" + key + "'");
            if (!fields.emplace(key, l.words[i].substr(eq + 1)).second) throw ParseError(l.number, "duplicate key '" + key + "'");
        }
        b.left = detail::color(l, fields["left"]);
        b.right = detail::color(l, fields["right"]);
        for (const auto& c : detail::split(fields["top"], ',')) b.top.push_back(detail::color(l, c));
        for (const auto& c : detail::split(fields["bottom"], ',')) b.bottom.push_back(detail::color(l, c));
        if (b.top.size() != b.bottom.size()) throw ParseError(l.number, "top and bottom lengths differ");
        if (!names.insert(b.name).second) throw ParseError(l.number, "duplicate bar '" + b.name + "'");
        bars.push_back(std::move(b));
    }
    if (bars.empty()) throw ParseError(0, "no bars");
    return BarSet(std::move(bars));
}

inline std::string format_bars(const BarSet& bars) {
    std::string out;
    for (const auto& b : bars.bars())
        out += "bar " + b.name + " left=" + b.left + " right=" + b.right + " top=" + detail::join(b.top, ",") +
               " bottom=" + detail::join(b.bottom, ",") + '\n';
    return out;
}

// ---------------------------------------------------------------------------
// placements

inline Tiling parse_placements(const std::string& text) {
    const auto lines = detail::logical_lines(text);
    if (lines.empty()) throw ParseError(0, "missing domain line");
    const auto& h = lines[0];
    if (h.words[0] != "domain") throw ParseError(h.number, "expected 'domain' first");
    Tiling t;
    if (h.words.size() == 2 && h.words[1] == "free") {
        t.domain = Domain::unbounded();
    } else if (h.words.size() == 4 && (h.words[1] == "torus" || h.words[1] == "rect")) {
        const int w = detail::parse_int(h, h.words[2], "width"), hh = detail::parse_int(h, h.words[3], "height");
        if (w < 1 || hh < 1) throw ParseError(h.number, "domain dimensions must be positive");
        t.domain = h.words[1] == "torus" ? Domain::torus(w, hh) : Domain::rect(w, hh);
    } else {
        throw ParseError(h.number, "domain must be 'torus W H', 'rect W H' or 'free'");
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.words[0] != "place") throw ParseError(l.number, "expected 'place', got '" + l.words[0] + "'");
        if (l.words.size() != 4) throw ParseError(l.number, "place needs a name and two coordinates");
        Placement p{detail::symbol(l, l.words[1], "bar name"), detail::parse_int(l, l.words[2], "x"), detail::parse_int(l, l.words[3], "y")};
        if (t.domain.kind == DomainKind::torus) {
            p.x = floor_mod(p.x, t.domain.width);
            p.y = floor_mod(p.y, t.domain.height);
        }
        t.placements.push_back(std::move(p));
    }
    return t;
}

/// Placements sorted by (y, x, name); torus coordinates reduced.
inline std::string format_placements(const Tiling& t) {
    std::string out;
    switch (t.domain.kind) {
    case DomainKind::free: out += "domain free\n"; break;
    case DomainKind::torus: out += "domain torus " + std::to_string(t.domain.width) + ' ' + std::to_string(t.domain.height) + '\n'; break;
    case DomainKind::rect: out += "domain rect " + std::to_string(t.domain.width) + ' ' + std::to_string(t.domain.height) + '\n'; break;
    }
    std::vector<Placement> ps = t.placements;
    if (t.domain.kind == DomainKind::torus)
        for (auto& p : ps) {
            p.x = floor_mod(p.x, t.domain.width);
            p.y = floor_mod(p.y, t.domain.height);
        }
    std::sort(ps.begin(), ps.end(), [](const Placement& a, const Placement& b) {
        return std::tie(a.y, a.x, a.item) < std::tie(b.y, b.x, b.item);
    });
    for (const auto& p : ps) out += "place " + p.item + ' ' + std::to_string(p.x) + ' ' + std::to_string(p.y) + '\n';
    return out;
}

// ---------------------------------------------------------------------------
// lattice

inline TileGrid parse_lattice(const std::string& text) {
    const auto lines = detail::logical_lines(text);
    if (lines.empty()) throw ParseError(0, "missing lattice line");
    const auto& h = lines[0];
    if (h.words[0] != "lattice" || h.words.size() != 3) throw ParseError(h.number, "expected 'lattice P Q'");
    const int P = detail::parse_int(h, h.words[1], "width"), Q = detail::parse_int(h, h.words[2], "height");
    if (P < 1 || Q < 1) throw ParseError(h.number, "lattice dimensions must be positive");
    if (lines.size() != static_cast<std::size_t>(Q) + 1) throw ParseError(h.number, "expected " + std::to_string(Q) + " rows");
    std::vector<std::string> cells;
    for (int y = 0; y < Q; ++y) {
        const auto& l = lines[static_cast<std::size_t>(y) + 1];
        if (l.words[0] != "row" || l.words.size() != static_cast<std::size_t>(P) + 2)
            throw ParseError(l.number, "expected 'row <y>' and " + std::to_string(P) + " tile names");
        if (detail::parse_int(l, l.words[1], "row index") != y) throw ParseError(l.number, "rows must be listed as 0.." + std::to_string(Q - 1));
        for (int x = 0; x < P; ++x) cells.push_back(detail::symbol(l, l.words[static_cast<std::size_t>(x) + 2], "tile name"));
    }
    return TileGrid(P, Q, true, std::move(cells));
}

inline std::string format_lattice(const TileGrid& g) {
    std::string out = "lattice " + std::to_string(g.width) + ' ' + std::to_string(g.height) + '\n';
    for (int y = 0; y < g.height; ++y) {
        out += "row " + std::to_string(y);
        for (int x = 0; x < g.width; ++x) out += ' ' + g.at(x, y);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// key=value

using KeyValues = std::vector<std::pair<std::string, std::string>>;

inline std::string format_kv(const KeyValues& kv) {
    std::string out;
    for (const auto& [k, v] : kv) out += k + '=' + v + '\n';
    return out;
}

inline KeyValues parse_kv(const std::string& text) {
    KeyValues out;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    std::set<std::string> seen;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        while (!raw.empty() && (raw.back() == ' ' || raw.back() == '\t' || raw.back() == '\r')) raw.pop_back();
        std::size_t lead = raw.find_first_not_of(" \t");
        if (lead == std::string::npos) continue;
        raw.erase(0, lead);
        const auto eq = raw.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError(number, "expected key=value");
        std::string key = raw.substr(0, eq);
        if (!seen.insert(key).second) throw ParseError(number, "duplicate key '" + key + "'");
        out.emplace_back(std::move(key), raw.substr(eq + 1));
    }
    return out;
}

// ---------------------------------------------------------------------------
// manifest

inline std::string format_manifest(const ReductionManifest& mf) {
    KeyValues kv;
    kv.emplace_back("format_version", std::to_string(ReductionManifest::format_version));
    kv.emplace_back("n", std::to_string(mf.n));
    kv.emplace_back("m", std::to_string(mf.m));
    kv.emplace_back("order", detail::join(mf.order.colors, ","));
    for (std::size_t i = 0; i < mf.tiles.size(); ++i) {
        const Tile& t = mf.tiles[i];
        kv.emplace_back("tile." + std::to_string(i), detail::join({t.name, t.north, t.east, t.south, t.west}, ","));
    }
    const auto names = Palette::canonical_names();
    const auto tokens = mf.palette.tokens();
    for (std::size_t i = 0; i < names.size(); ++i) kv.emplace_back("palette." + names[i], tokens[i]);
    for (const auto& [name, role] : mf.roles) kv.emplace_back("role." + name, role.str());
    const Geometry& g = mf.geometry;
    kv.emplace_back("geometry.section_length", std::to_string(g.section_length));
    kv.emplace_back("geometry.encoder_length", std::to_string(g.encoder_length));
    kv.emplace_back("geometry.linker_length", std::to_string(g.linker_length));
    kv.emplace_back("geometry.row_pitch", std::to_string(g.row_pitch));
    kv.emplace_back("geometry.column_pitch", std::to_string(g.column_pitch));
    kv.emplace_back("geometry.row_shift", std::to_string(g.row_shift));
    return format_kv(kv);
}

inline ReductionManifest parse_manifest(const std::string& text) {
    const KeyValues kv = parse_kv(text);
    std::map<std::string, std::string> map(kv.begin(), kv.end());
    auto need = [&](const std::string& k) -> const std::string& {
        auto it = map.find(k);
        if (it == map.end()) throw Error("manifest: missing key '" + k + "'");
        return it->second;
    };
    auto number = [&](const std::string& k) {
        const std::string& v = need(k);
        try {
            std::size_t used = 0;
            const int x = std::stoi(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::logic_error&) {
            throw Error("manifest: key '" + k + "' is not an integer");
        }
    };
    if (number("format_version") != ReductionManifest::format_version)
        throw Error("manifest: unsupported format_version " + need("format_version"));

    ReductionManifest mf;
    mf.n = number("n");
    mf.m = number("m");
    if (mf.n < 1 || mf.m < 1) throw Error("manifest: n and m must be positive");
    mf.order.colors = detail::split(need("order"), ',');
    if (static_cast<int>(mf.order.colors.size()) != mf.m) throw Error("manifest: order does not list m colors");

    std::vector<Tile> tiles;
    for (int i = 0; i < mf.n; ++i) {
        auto f = detail::split(need("tile." + std::to_string(i)), ',');
        if (f.size() != 5) throw Error("manifest: tile." + std::to_string(i) + " needs name and four colors");
        tiles.push_back({f[0], f[1], f[2], f[3], f[4]});
    }
    mf.tiles = TileSet(std::move(tiles));
    mf.order = enumerate_colors(mf.tiles, mf.order.colors);

    std::vector<Color> tokens;
    for (const auto& name : Palette::canonical_names()) tokens.push_back(need("palette." + name));
    mf.palette = Palette::from_tokens(tokens);

    for (const auto& [k, v] : kv)
        if (k.rfind("role.", 0) == 0) mf.roles.emplace_back(k.substr(5), BarRole::parse(v));

    mf.geometry = Geometry::of(mf.n, mf.m);
    const Geometry& g = mf.geometry;
    if (number("geometry.section_length") != g.section_length || number("geometry.encoder_length") != g.encoder_length ||
        number("geometry.linker_length") != g.linker_length || number("geometry.row_pitch") != g.row_pitch ||
        number("geometry.column_pitch") != g.column_pitch || number("geometry.row_shift") != g.row_shift)
        throw Error("manifest: geometry does not match n and m");

    for (const auto& [k, v] : kv) {
        const bool known = k == "format_version" || k == "n" || k == "m" || k == "order" || k.rfind("tile.", 0) == 0 ||
                           k.rfind("palette.", 0) == 0 || k.rfind("role.", 0) == 0 || k.rfind("geometry.", 0) == 0;
        if (!known) throw Error("manifest: unknown key '" + k + "'");
    }
    bars_from_manifest(mf); // checks the role map against the rebuilt bars
    return mf;
}

// ---------------------------------------------------------------------------
// rendering

namespace detail {

inline std::uint32_t fnv1a(std::string_view s) {
    std::uint32_t h = 2166136261u;
    for (unsigned char c : s) {
        h ^= c;
        h *= 16777619u;
    }
    return h;
}

/// Stable fill color for a token: hue from the hash, fixed saturation and
/// lightness, written as #rrggbb.
inline std::string color_hex(std::string_view token) {
    const double hue = static_cast<double>(fnv1a(token) % 360u);
    const double s = 0.6, l = 0.6;
    const double c = (1 - std::abs(2 * l - 1)) * s;
    const double hp = hue / 60.0;
    const double x = c * (1 - std::abs(std::fmod(hp, 2.0) - 1));
    double r = 0, g = 0, b = 0;
    if (hp < 1) r = c, g = x;
    else if (hp < 2) r = x, g = c;
    else if (hp < 3) g = c, b = x;
    else if (hp < 4) g = x, b = c;
    else if (hp < 5) r = x, b = c;
    else r = c, b = x;
    const double mm = l - c / 2;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>((r + mm) * 255 + 0.5), static_cast<int>((g + mm) * 255 + 0.5),
                  static_cast<int>((b + mm) * 255 + 0.5));
    return buf;
}

inline std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Frame {
    int x0, y0, width, height;
};

inline Frame frame_of(const BarSet& bars, const Tiling& t) {
    if (t.domain.bounded()) return {0, 0, t.domain.width, t.domain.height};
    if (t.placements.empty()) return {0, 0, 1, 1};
    int x0 = INT32_MAX, y0 = INT32_MAX, x1 = INT32_MIN, y1 = INT32_MIN;
    for (const auto& p : t.placements) {
        x0 = std::min(x0, p.x);
        y0 = std::min(y0, p.y);
        x1 = std::max(x1, p.x + bars.at(p.item).length() - 1);
        y1 = std::max(y1, p.y);
    }
    return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

} // namespace detail

/// Optional per-bar labels (e.g. roles from a manifest) replace bar names.
using BarLabels = std::map<std::string, std::string>;

inline BarLabels role_labels(const ReductionManifest& mf) {
    BarLabels out;
    for (const auto& [name, role] : mf.roles) out[name] = role.str();
    return out;
}

/// One 24x24 box per covered cell: top and bottom strips carry the segment
/// colors, bar ends get side strips, the bar label sits on its first cell.
/// Torus placements wrap. Rows are drawn with y increasing upwards.
inline std::string render_svg(const BarSet& bars, const Tiling& t, const BarLabels& labels = {}) {
    const int U = 24;
    const auto f = detail::frame_of(bars, t);
    const bool wrap = t.domain.kind == DomainKind::torus;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << f.width * U << "\" height=\"" << f.height * U
        << "\" viewBox=\"0 0 " << f.width * U << ' ' << f.height * U << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << f.width * U << "\" height=\"" << f.height * U << "\" fill=\"#ffffff\"/>\n";

    std::vector<Placement> ps = t.placements;
    std::sort(ps.begin(), ps.end(), [](const Placement& a, const Placement& b) { return std::tie(a.y, a.x, a.item) < std::tie(b.y, b.x, b.item); });
    auto rect = [&](int px, int py, int w, int h, const std::string& fill) {
        out << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << w << "\" height=\"" << h << "\" fill=\"" << fill << "\"/>\n";
    };
    for (const auto& p : ps) {
        const Bar& b = bars.at(p.item);
        const int L = b.length();
        for (int k = 0; k < L; ++k) {
            int cx = p.x + k - f.x0, cy = p.y - f.y0;
            if (wrap) {
                cx = floor_mod(cx, f.width);
                cy = floor_mod(cy, f.height);
            }
            const int px = cx * U, py = (f.height - 1 - cy) * U;
            const auto kk = static_cast<std::size_t>(k);
            rect(px, py, U, U, "#f4f4f4");
            rect(px, py, U, U / 3, detail::color_hex(b.top[kk]));
            rect(px, py + U - U / 3, U, U / 3, detail::color_hex(b.bottom[kk]));
            if (k == 0) rect(px, py, U / 6, U, detail::color_hex(b.left));
            if (k == L - 1) rect(px + U - U / 6, py, U / 6, U, detail::color_hex(b.right));
            out << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << U << "\" height=\"" << U
                << "\" fill=\"none\" stroke=\"#c8c8c8\" stroke-width=\"0.5\"/>\n";
            out << "<text x=\"" << px + U / 2 << "\" y=\"" << py + 4 + U / 3 - 1 << "\" font-size=\"5\" text-anchor=\"middle\">"
                << detail::xml_escape(b.top[kk]) << "</text>\n";
            if (k == 0) {
                auto it = labels.find(b.name);
                out << "<text x=\"" << px + U / 6 + 1 << "\" y=\"" << py + U / 2 + 3 << "\" font-size=\"6\">"
                    << detail::xml_escape(it == labels.end() ? b.name : it->second) << "</text>\n";
            }
        }
        // outline of the whole bar when it does not wrap
        int bx = p.x - f.x0, by = p.y - f.y0;
        if (wrap) {
            bx = floor_mod(bx, f.width);
            by = floor_mod(by, f.height);
        }
        if (!wrap || bx + L <= f.width)
            out << "<rect x=\"" << bx * U << "\" y=\"" << (f.height - 1 - by) * U << "\" width=\"" << L * U << "\" height=\"" << U
                << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

/// Fixed-width text: one 3-character column per cell, top row first. A
/// bar's first cell shows its two-digit index in the bar set, later cells
/// show "==", and uncovered cells show "..". A legend follows.
inline std::string render_ascii(const BarSet& bars, const Tiling& t, const BarLabels& labels = {}) {
    const auto f = detail::frame_of(bars, t);
    const bool wrap = t.domain.kind == DomainKind::torus;
    std::vector<std::string> grid(static_cast<std::size_t>(f.width) * f.height, "..");
    for (const auto& p : t.placements) {
        const auto bi = *bars.index_of(p.item);
        for (int k = 0; k < bars[bi].length(); ++k) {
            int cx = p.x + k - f.x0, cy = p.y - f.y0;
            if (wrap) {
                cx = floor_mod(cx, f.width);
                cy = floor_mod(cy, f.height);
            }
            char buf[4];
            std::snprintf(buf, sizeof buf, "%02zu", bi % 100);
            grid[static_cast<std::size_t>(cy) * f.width + cx] = k == 0 ? std::string(buf) : "==";
        }
    }
    std::string out;
    for (int y = f.height - 1; y >= 0; --y) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%5d |", y + f.y0);
        out += buf;
        for (int x = 0; x < f.width; ++x) out += ' ' + grid[static_cast<std::size_t>(y) * f.width + x];
        out += '\n';
    }
    for (std::size_t i = 0; i < bars.size(); ++i) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "%02zu", i % 100);
        auto it = labels.find(bars[i].name);
        out += std::string(buf) + ' ' + bars[i].name;
        if (it != labels.end()) out += " (" + it->second + ')';
        out += '\n';
    }
    return out;
}

/// A bar set laid out one bar per row, in file order from the top.
inline Tiling bars_catalogue(const BarSet& bars) {
    Tiling t{Domain::unbounded(), {}};
    const int n = static_cast<int>(bars.size());
    for (int i = 0; i < n; ++i) t.placements.push_back({bars[static_cast<std::size_t>(i)].name, 0, 2 * (n - 1 - i)});
    return t;
}

} // namespace wangbars
