#pragma once

// Compiles a Wang tile set into the fixed 29-bar set and converts between
// tilings of the two (pattern construction and pattern decoding).

#include "wangbars/core.hpp"

#include <array>
#include <numeric>
#include <sstream>

namespace wangbars {

/// The 26 colors shared by every reduced bar set.
struct Palette {
    std::array<Color, 8> a;
    std::array<Color, 8> b;
    std::array<Color, 6> s;
    Color x, y, z, zero;

    static std::vector<std::string> canonical_names() {
        std::vector<std::string> out;
        for (int i = 1; i <= 8; ++i) out.push_back("a" + std::to_string(i));
        for (int i = 1; i <= 8; ++i) out.push_back("b" + std::to_string(i));
        out.insert(out.end(), {"x", "y", "z", "zero"});
        for (int i = 1; i <= 6; ++i) out.push_back("s" + std::to_string(i));
        return out;
    }

    // `@name`, suffixed `_k` while the token is taken.
    static Palette fresh(const std::set<Color>& taken) {
        std::vector<Color> tokens;
        std::set<Color> used = taken;
        for (const auto& name : canonical_names()) {
            Color t = "@" + name;
            for (int k = 1; used.count(t); ++k) t = "@" + name + "_" + std::to_string(k);
            used.insert(t);
            tokens.push_back(t);
        }
        return from_tokens(tokens);
    }

    // Tokens in canonical_names() order.
    static Palette from_tokens(const std::vector<Color>& t) {
        if (t.size() != 26) throw Error("palette needs 26 tokens");
        Palette p;
        for (int i = 0; i < 8; ++i) p.a[i] = t[i];
        for (int i = 0; i < 8; ++i) p.b[i] = t[8 + i];
        p.x = t[16];
        p.y = t[17];
        p.z = t[18];
        p.zero = t[19];
        for (int i = 0; i < 6; ++i) p.s[i] = t[20 + i];
        if (std::set<Color>(t.begin(), t.end()).size() != 26) throw Error("palette tokens are not distinct");
        return p;
    }

    std::vector<Color> tokens() const {
        std::vector<Color> out(a.begin(), a.end());
        out.insert(out.end(), b.begin(), b.end());
        out.insert(out.end(), {x, y, z, zero});
        out.insert(out.end(), s.begin(), s.end());
        return out;
    }

    // 1-based accessors matching the usual a1..a8 / b1..b8 naming.
    const Color& A(int i) const { return a.at(i - 1); }
    const Color& B(int i) const { return b.at(i - 1); }
    const Color& S(int i) const { return s.at(i - 1); }

    friend bool operator==(const Palette&, const Palette&) = default;
};

struct ColorOrder {
    std::vector<Color> colors;

    int size() const { return static_cast<int>(colors.size()); }

    int index_of(const Color& c) const {
        auto it = std::find(colors.begin(), colors.end(), c);
        if (it == colors.end()) throw Error("color '" + c + "' is not in the color order");
        return static_cast<int>(it - colors.begin());
    }

    friend bool operator==(const ColorOrder&, const ColorOrder&) = default;
};

enum class Group { encoder, selector, aligner, linker_small_down, linker_small_up, linker_long_dr, linker_long_dl, filler1, filler2 };

/// Group plus 1-based index inside multi-bar groups (selector, fillers).
struct BarRole {
    Group group;
    int index = 0;

    std::string str() const {
        switch (group) {
        case Group::encoder: return "encoder";
        case Group::selector: return "selector-" + std::to_string(index);
        case Group::aligner: return "aligner";
        case Group::linker_small_down: return "linker-small-down";
        case Group::linker_small_up: return "linker-small-up";
        case Group::linker_long_dr: return "linker-long-dr";
        case Group::linker_long_dl: return "linker-long-dl";
        case Group::filler1: return "filler1-" + std::to_string(index);
        case Group::filler2: return "filler2-" + std::to_string(index);
        }
        return "?";
    }

    static BarRole parse(const std::string& s) {
        auto indexed = [&](const std::string& prefix, Group g, int max) -> std::optional<BarRole> {
            if (s.rfind(prefix, 0) != 0) return std::nullopt;
            const std::string digits = s.substr(prefix.size());
            if (digits.size() != 1 || digits[0] < '1' || digits[0] > '0' + max) return std::nullopt;
            return BarRole{g, digits[0] - '0'};
        };
        if (s == "encoder") return {Group::encoder};
        if (s == "aligner") return {Group::aligner};
        if (s == "linker-small-down") return {Group::linker_small_down};
        if (s == "linker-small-up") return {Group::linker_small_up};
        if (s == "linker-long-dr") return {Group::linker_long_dr};
        if (s == "linker-long-dl") return {Group::linker_long_dl};
        if (auto r = indexed("selector-", Group::selector, 7)) return *r;
        if (auto r = indexed("filler1-", Group::filler1, 8)) return *r;
        if (auto r = indexed("filler2-", Group::filler2, 8)) return *r;
        throw Error("unknown bar role '" + s + "'");
    }

    friend bool operator==(const BarRole&, const BarRole&) = default;
};

struct Geometry {
    int section_length = 0; // 2m+1
    int encoder_length = 0; // n(2m+1)
    int linker_length = 0;  // (n-1)(2m+1)+m+1
    int row_pitch = 4;
    int column_pitch = 0;   // 2n(2m+1)
    int row_shift = 0;      // n(2m+1)

    static Geometry of(int n, int m) {
        Geometry g;
        g.section_length = 2 * m + 1;
        g.encoder_length = n * g.section_length;
        g.linker_length = (n - 1) * g.section_length + m + 1;
        g.row_pitch = 4;
        g.column_pitch = 2 * g.encoder_length;
        g.row_shift = g.encoder_length;
        return g;
    }

    friend bool operator==(const Geometry&, const Geometry&) = default;
};

struct ReductionManifest {
    static constexpr int format_version = 1;

    int n = 0;
    int m = 0;
    TileSet tiles; // section i of the encoder encodes tiles[i]
    ColorOrder order;
    Palette palette;
    std::vector<std::pair<std::string, BarRole>> roles; // in bar order
    Geometry geometry;

    const std::string& bar(BarRole r) const {
        for (const auto& [name, role] : roles)
            if (role == r) return name;
        throw Error("manifest has no bar with role " + r.str());
    }

    std::optional<BarRole> role_of(std::string_view name) const {
        for (const auto& [bar_name, role] : roles)
            if (bar_name == name) return role;
        return std::nullopt;
    }

    friend bool operator==(const ReductionManifest&, const ReductionManifest&) = default;
};

struct Reduction {
    BarSet bars;
    ReductionManifest manifest;
};

/// First occurrence scanning tiles in order, edges in N, E, S, W order.
/// An override must list every color of the set exactly once.
inline ColorOrder enumerate_colors(const TileSet& tiles, const std::optional<std::vector<Color>>& override_order = {}) {
    ColorOrder order;
    if (override_order) {
        const std::set<Color> given(override_order->begin(), override_order->end());
        if (given.size() != override_order->size()) throw Error("color order override repeats a color");
        if (given != tiles.colors()) throw Error("color order override does not match the tile set's colors");
        order.colors = *override_order;
        return order;
    }
    std::set<Color> seen;
    for (const auto& t : tiles.tiles()) {
        for (const Color* c : {&t.north, &t.east, &t.south, &t.west}) {
            if (seen.insert(*c).second) order.colors.push_back(*c);
        }
    }
    return order;
}

namespace detail {

inline std::vector<Color> unary(int m, int hit_index, const Color& hit, const Color& miss) {
    std::vector<Color> out(static_cast<std::size_t>(m), miss);
    out[static_cast<std::size_t>(hit_index)] = hit;
    return out;
}

inline std::vector<Color> repeat(const Color& c, int k) { return std::vector<Color>(static_cast<std::size_t>(k), c); }

inline Bar unit(std::string name, Color top, Color bottom, Color left, Color right) {
    return Bar{std::move(name), {std::move(top)}, {std::move(bottom)}, std::move(left), std::move(right)};
}

} // namespace detail

/// One section of length 2m+1 per tile: left arm, locator, right arm.
/// Arm tops encode north (left) and east (right); arm bottoms encode
/// west (left) and south (right).
inline Bar build_encoder(const TileSet& tiles, const ColorOrder& order, const Palette& p) {
    const int m = order.size();
    Bar enc{"encoder", {}, {}, p.z, p.z};
    for (const auto& t : tiles.tiles()) {
        auto append = [](std::vector<Color>& dst, const std::vector<Color>& src) { dst.insert(dst.end(), src.begin(), src.end()); };
        append(enc.top, detail::unary(m, order.index_of(t.north), p.A(3), p.A(5)));
        enc.top.push_back(p.A(1));
        append(enc.top, detail::unary(m, order.index_of(t.east), p.A(3), p.A(5)));
        append(enc.bottom, detail::unary(m, order.index_of(t.west), p.A(4), p.A(6)));
        enc.bottom.push_back(p.A(2));
        append(enc.bottom, detail::unary(m, order.index_of(t.south), p.A(4), p.A(6)));
    }
    return enc;
}

/// Seven bars, listed top to bottom; the 4th is the long middle bar.
inline std::vector<Bar> build_selector(int m, const Palette& p) {
    if (m < 1) throw Error("selector needs m >= 1");
    using detail::unit;
    std::vector<Bar> out;
    out.push_back(unit("selector_1", p.A(2), p.S(1), p.zero, p.zero));
    out.push_back(unit("selector_2", p.S(1), p.S(2), p.x, p.y));
    out.push_back(unit("selector_3", p.S(2), p.S(3), p.zero, p.zero));
    Bar mid{"selector_4", detail::repeat(p.A(7), m), detail::repeat(p.A(8), m), p.z, p.z};
    mid.top.push_back(p.S(3));
    mid.bottom.push_back(p.S(4));
    for (int i = 0; i < m; ++i) {
        mid.top.push_back(p.A(7));
        mid.bottom.push_back(p.A(8));
    }
    out.push_back(std::move(mid));
    out.push_back(unit("selector_5", p.S(4), p.S(5), p.zero, p.zero));
    out.push_back(unit("selector_6", p.S(5), p.S(6), p.x, p.y));
    out.push_back(unit("selector_7", p.S(6), p.A(1), p.zero, p.zero));
    return out;
}

inline Bar build_aligner(int m, const Palette& p) {
    if (m < 1) throw Error("aligner needs m >= 1");
    return Bar{"aligner", detail::repeat(p.A(5), 2 * m + 1), detail::repeat(p.A(6), 2 * m + 1), p.z, p.z};
}

/// small-down, small-up, long-down-right, long-down-left.
inline std::vector<Bar> build_linkers(int n, int m, const Palette& p) {
    if (n < 1 || m < 1) throw Error("linkers need n, m >= 1");
    const int len = Geometry::of(n, m).linker_length;
    using detail::repeat;
    std::vector<Bar> out;
    out.push_back(detail::unit("linker_down", p.A(4), p.B(1), p.zero, p.zero));
    out.push_back(detail::unit("linker_up", p.B(2), p.A(3), p.zero, p.zero));

    Bar dr{"linker_long_dr", {p.B(1)}, repeat(p.B(4), len - 1), p.y, p.x};
    auto tail = repeat(p.B(3), len - 1);
    dr.top.insert(dr.top.end(), tail.begin(), tail.end());
    dr.bottom.push_back(p.B(2));

    Bar dl{"linker_long_dl", repeat(p.B(3), len - 1), {p.B(2)}, p.y, p.x};
    dl.top.push_back(p.B(1));
    auto rest = repeat(p.B(4), len - 1);
    dl.bottom.insert(dl.bottom.end(), rest.begin(), rest.end());

    out.push_back(std::move(dr));
    out.push_back(std::move(dl));
    return out;
}

inline std::vector<Bar> build_fillers_g1(const Palette& p) {
    std::vector<Bar> out;
    for (int k = 0; k < 4; ++k)
        out.push_back(detail::unit("filler1_" + std::to_string(k + 1), p.A(2 * k + 2), p.B(3), p.zero, p.zero));
    for (int k = 0; k < 4; ++k)
        out.push_back(detail::unit("filler1_" + std::to_string(k + 5), p.B(4), p.A(2 * k + 1), p.zero, p.zero));
    return out;
}

/// Pieces of the height-3 stacks: (a8 .. a5) with x or y middles, then
/// (a6 .. a7) with x or y middles.
inline std::vector<Bar> build_fillers_g2(const Palette& p) {
    using detail::unit;
    return {
        unit("filler2_1", p.A(8), p.B(5), p.zero, p.zero),
        unit("filler2_2", p.B(5), p.B(6), p.x, p.x),
        unit("filler2_3", p.B(5), p.B(6), p.y, p.y),
        unit("filler2_4", p.B(6), p.A(5), p.zero, p.zero),
        unit("filler2_5", p.A(6), p.B(7), p.zero, p.zero),
        unit("filler2_6", p.B(7), p.B(8), p.x, p.x),
        unit("filler2_7", p.B(7), p.B(8), p.y, p.y),
        unit("filler2_8", p.B(8), p.A(7), p.zero, p.zero),
    };
}

namespace detail {

inline void assemble(ReductionManifest& mf, std::vector<Bar>& bars) {
    mf.roles.clear();
    bars.clear();
    auto add = [&](Bar b, BarRole r) {
        mf.roles.emplace_back(b.name, r);
        bars.push_back(std::move(b));
    };
    add(build_encoder(mf.tiles, mf.order, mf.palette), {Group::encoder});
    auto sel = build_selector(mf.m, mf.palette);
    for (int i = 0; i < 7; ++i) add(std::move(sel[static_cast<std::size_t>(i)]), {Group::selector, i + 1});
    add(build_aligner(mf.m, mf.palette), {Group::aligner});
    auto links = build_linkers(mf.n, mf.m, mf.palette);
    add(std::move(links[0]), {Group::linker_small_down});
    add(std::move(links[1]), {Group::linker_small_up});
    add(std::move(links[2]), {Group::linker_long_dr});
    add(std::move(links[3]), {Group::linker_long_dl});
    auto g1 = build_fillers_g1(mf.palette);
    for (int i = 0; i < 8; ++i) add(std::move(g1[static_cast<std::size_t>(i)]), {Group::filler1, i + 1});
    auto g2 = build_fillers_g2(mf.palette);
    for (int i = 0; i < 8; ++i) add(std::move(g2[static_cast<std::size_t>(i)]), {Group::filler2, i + 1});
}

} // namespace detail

inline Reduction reduce(const TileSet& tiles, const std::optional<std::vector<Color>>& order_override = {}) {
    if (tiles.size() == 0) throw Error("tile set is empty");
    ReductionManifest mf;
    mf.tiles = tiles;
    mf.order = enumerate_colors(tiles, order_override);
    mf.n = static_cast<int>(tiles.size());
    mf.m = mf.order.size();
    mf.palette = Palette::fresh(tiles.colors());
    mf.geometry = Geometry::of(mf.n, mf.m);
    std::vector<Bar> bars;
    detail::assemble(mf, bars);
    return Reduction{BarSet(std::move(bars)), std::move(mf)};
}

/// Rebuilds the bar set a manifest describes.
inline BarSet bars_from_manifest(const ReductionManifest& mf) {
    ReductionManifest copy = mf;
    std::vector<Bar> bars;
    detail::assemble(copy, bars);
    if (copy.roles != mf.roles) throw Error("manifest role map does not match the construction");
    return BarSet(std::move(bars));
}

class StructureError : public Error {
public:
    using Error::Error;
};

namespace detail {

// Torus canvas used while laying out the pattern.
class Canvas {
public:
    Canvas(const BarSet& bars, int w, int h)
        : bars_(bars), w_(w), h_(h), cells_(static_cast<std::size_t>(w) * h, {-1, 0}) {}

    void place(const std::string& name, int x, int y) {
        const auto idx = static_cast<int>(*bars_.index_of(name));
        x = floor_mod(x, w_);
        y = floor_mod(y, h_);
        for (int k = 0; k < bars_[static_cast<std::size_t>(idx)].length(); ++k) {
            auto& c = cell(x + k, y);
            if (c.first >= 0) throw Error("pattern layout overlaps at (" + std::to_string(floor_mod(x + k, w_)) + "," + std::to_string(y) + ")");
            c = {idx, k};
        }
        placements_.push_back({name, x, y});
    }

    bool covered(int x, int y) const { return cell(x, y).first >= 0; }
    const Bar& bar_at(int x, int y) const { return bars_[static_cast<std::size_t>(cell(x, y).first)]; }
    const Color& top(int x, int y) const { return bar_at(x, y).top[static_cast<std::size_t>(cell(x, y).second)]; }
    const Color& bottom(int x, int y) const { return bar_at(x, y).bottom[static_cast<std::size_t>(cell(x, y).second)]; }
    bool is_end(int x, int y) const { return cell(x, y).second == bar_at(x, y).length() - 1; }

    std::vector<Placement> take() { return std::move(placements_); }

private:
    std::pair<int, int>& cell(int x, int y) {
        return cells_[static_cast<std::size_t>(floor_mod(y, h_)) * w_ + floor_mod(x, w_)];
    }
    const std::pair<int, int>& cell(int x, int y) const {
        return cells_[static_cast<std::size_t>(floor_mod(y, h_)) * w_ + floor_mod(x, w_)];
    }

    const BarSet& bars_;
    int w_, h_;
    std::vector<std::pair<int, int>> cells_;
    std::vector<Placement> placements_;
};

} // namespace detail

/// Lattice slot (i, j) holds the tile at Wang cell (i + j, -i): its selector
/// is centred on column 2N*i + N*j of backbone row 4j and its encoder's
/// selected locator sits N columns to the right (N = n(2m+1)). The torus is
/// 2N*l wide and 8l tall, l = lcm(P, Q).
inline Tiling simulate_tiling(const ReductionManifest& mf, const TileGrid& lattice) {
    if (!lattice.torus) throw Error("lattice assignment must be a torus");
    if (!validate_tile_tiling(mf.tiles, lattice).ok()) throw Error("lattice assignment is not a valid tiling");

    const BarSet bars = bars_from_manifest(mf);
    const int n = mf.n, m = mf.m;
    const Geometry g = mf.geometry;
    const int sec = g.section_length, N = g.encoder_length, lam = g.linker_length;
    const int l = std::lcm(lattice.width, lattice.height);
    const int W = 2 * N * l, H = 8 * l;
    const Palette& p = mf.palette;

    detail::Canvas canvas(bars, W, H);
    auto name = [&](BarRole r) -> const std::string& { return mf.bar(r); };

    struct Slot {
        int center, row, section, west, south;
    };
    std::vector<Slot> slots;
    for (int j = 0; j < 2 * l; ++j) {
        for (int i = 0; i < l; ++i) {
            const Tile& t = mf.tiles.at(lattice.at(i + j, -i));
            slots.push_back({2 * N * i + N * j, 4 * j, static_cast<int>(*mf.tiles.index_of(t.name)),
                             mf.order.index_of(t.west), mf.order.index_of(t.south)});
        }
    }

    // Backbone rows and selector stacks.
    for (const auto& s : slots) {
        const int c = s.center, y = s.row;
        canvas.place(name({Group::selector, 4}), c - m, y);
        for (int k = 1; k <= 3; ++k) {
            canvas.place(name({Group::selector, k}), c, y + 4 - k);
            canvas.place(name({Group::selector, 4 + k}), c, y - k);
        }
        const int enc_x = c + N - s.section * sec - m;
        canvas.place(name({Group::encoder}), enc_x, y);
        for (int k = 0; k < n - 1 - s.section; ++k) canvas.place(name({Group::aligner}), c + m + 1 + k * sec, y);
        for (int k = 0; k < s.section; ++k) canvas.place(name({Group::aligner}), enc_x + N + k * sec, y);
    }

    // Linkers: the left-arm a4 meets the right-arm a3 one row down and N
    // columns left; the right-arm a4 meets the left-arm a3 N columns right.
    for (const auto& s : slots) {
        const int loc = s.center + N, y = s.row;
        const int left_col = loc - m + s.west;
        canvas.place(name({Group::linker_small_down}), left_col, y - 1);
        canvas.place(name({Group::linker_long_dl}), left_col - lam + 1, y - 2);
        canvas.place(name({Group::linker_small_up}), left_col - lam + 1, y - 3);
        const int right_col = loc + 1 + s.south;
        canvas.place(name({Group::linker_small_down}), right_col, y - 1);
        canvas.place(name({Group::linker_long_dr}), right_col, y - 2);
        canvas.place(name({Group::linker_small_up}), right_col + lam - 1, y - 3);
    }

    // Middle row of each band: the remaining cells take height-3 stacks whose
    // x/y variant continues the side color to their left.
    for (int j = 0; j < 2 * l; ++j) {
        const int y = 4 * j, mid = y - 2, start = slots[static_cast<std::size_t>(j * l)].center;
        for (int dx = 1; dx < W; ++dx) {
            const int x = start + dx;
            if (canvas.covered(x, mid)) continue;
            const Color side = canvas.bar_at(x - 1, mid).right;
            const bool xs = side == p.x;
            if (!xs && side != p.y) throw Error("pattern layout: unexpected side color in band");
            const Color& above = canvas.bottom(x, y);
            if (above == p.A(8)) {
                canvas.place(name({Group::filler2, 1}), x, y - 1);
                canvas.place(name({Group::filler2, xs ? 2 : 3}), x, mid);
                canvas.place(name({Group::filler2, 4}), x, y - 3);
            } else if (above == p.A(6)) {
                canvas.place(name({Group::filler2, 5}), x, y - 1);
                canvas.place(name({Group::filler2, xs ? 6 : 7}), x, mid);
                canvas.place(name({Group::filler2, 8}), x, y - 3);
            } else {
                throw Error("pattern layout: no stack fits under " + above);
            }
        }
    }

    // Single-cell fillers against the backbone above and below each band.
    for (int j = 0; j < 2 * l; ++j) {
        const int y = 4 * j;
        for (int x = 0; x < W; ++x) {
            if (!canvas.covered(x, y - 1)) {
                const Color& above = canvas.bottom(x, y);
                int k = 0;
                for (int i = 1; i <= 4; ++i)
                    if (above == p.A(2 * i)) k = i;
                if (k == 0) throw Error("pattern layout: no filler fits under " + above);
                canvas.place(name({Group::filler1, k}), x, y - 1);
            }
            if (!canvas.covered(x, y - 3)) {
                const Color& below = canvas.top(x, y - 4);
                int k = 0;
                for (int i = 1; i <= 4; ++i)
                    if (below == p.A(2 * i - 1)) k = i;
                if (k == 0) throw Error("pattern layout: no filler fits over " + below);
                canvas.place(name({Group::filler1, 4 + k}), x, y - 3);
            }
        }
    }

    return Tiling{Domain::torus(W, H), canvas.take()};
}

/// Smallest rectangular period of a torus grid, as a torus grid.
inline TileGrid minimal_period(const TileGrid& g) {
    auto periodic = [&](int dx, int dy) {
        for (int y = 0; y < g.height; ++y)
            for (int x = 0; x < g.width; ++x)
                if (g.at(x, y) != g.at(x + dx, y + dy)) return false;
        return true;
    };
    int pw = g.width, ph = g.height;
    for (int d = 1; d <= g.width; ++d)
        if (g.width % d == 0 && periodic(d, 0)) {
            pw = d;
            break;
        }
    for (int d = 1; d <= g.height; ++d)
        if (g.height % d == 0 && periodic(0, d)) {
            ph = d;
            break;
        }
    TileGrid out = TileGrid::filled(pw, ph, true, "");
    for (int y = 0; y < ph; ++y)
        for (int x = 0; x < pw; ++x) out.at(x, y) = g.at(x, y);
    return out;
}

/// Equality of two torus assignments as periodic plane tilings, up to translation.
inline bool same_up_to_translation(const TileGrid& a, const TileGrid& b) {
    const TileGrid ma = minimal_period(a), mb = minimal_period(b);
    if (ma.width != mb.width || ma.height != mb.height) return false;
    for (int dy = 0; dy < ma.height; ++dy) {
        for (int dx = 0; dx < ma.width; ++dx) {
            bool same = true;
            for (int y = 0; y < ma.height && same; ++y)
                for (int x = 0; x < ma.width && same; ++x) same = ma.at(x + dx, y + dy) == mb.at(x, y);
            if (same) return true;
        }
    }
    return false;
}

/// Recovers the simulated Wang tiling from a torus tiling of the reduced set.
/// Each encoder is a lattice node; its two bottom linkers point at its west
/// and south neighbours. Throws StructureError when the forced pattern is
/// not present.
inline TileGrid decode_tiling(const ReductionManifest& mf, const Tiling& tiling) {
    if (tiling.domain.kind != DomainKind::torus) throw StructureError("decode needs a torus tiling");
    const BarSet bars = bars_from_manifest(mf);
    const int W = tiling.domain.width, H = tiling.domain.height;
    const int m = mf.m, sec = mf.geometry.section_length, lam = mf.geometry.linker_length;

    struct Cell {
        int placement = -1;
        int offset = 0;
    };
    std::vector<Cell> cells(static_cast<std::size_t>(W) * H);
    auto cell = [&](int x, int y) -> Cell& { return cells[static_cast<std::size_t>(floor_mod(y, H)) * W + floor_mod(x, W)]; };
    std::vector<std::optional<BarRole>> role(tiling.placements.size());
    for (std::size_t i = 0; i < tiling.placements.size(); ++i) {
        const auto& pl = tiling.placements[i];
        role[i] = mf.role_of(pl.item);
        if (!role[i]) throw StructureError("placement of unknown bar '" + pl.item + "'");
        const int len = bars.at(pl.item).length();
        for (int k = 0; k < len; ++k) {
            Cell& c = cell(pl.x + k, pl.y);
            if (c.placement >= 0) throw StructureError("overlapping placements");
            c = {static_cast<int>(i), k};
        }
    }
    auto role_at = [&](int x, int y) -> std::optional<BarRole> {
        const Cell& c = cell(x, y);
        if (c.placement < 0) return std::nullopt;
        return role[static_cast<std::size_t>(c.placement)];
    };
    auto is = [&](int x, int y, BarRole r) { return role_at(x, y) == std::optional<BarRole>(r); };

    std::vector<int> encoders; // placement indices
    std::map<int, int> node_of;
    for (std::size_t i = 0; i < role.size(); ++i) {
        if (role[i]->group == Group::encoder) {
            node_of[static_cast<int>(i)] = static_cast<int>(encoders.size());
            encoders.push_back(static_cast<int>(i));
        }
    }
    if (encoders.empty()) throw StructureError("no encoder placements");

    std::vector<int> section(encoders.size(), -1);
    for (std::size_t e = 0; e < encoders.size(); ++e) {
        const auto& pl = tiling.placements[static_cast<std::size_t>(encoders[e])];
        for (int s = 0; s < mf.n; ++s) {
            const int loc = pl.x + s * sec + m;
            if (is(loc, pl.y + 1, {Group::selector, 7}) && is(loc, pl.y - 1, {Group::selector, 1})) {
                if (section[e] >= 0) throw StructureError("encoder selected twice");
                section[e] = s;
            }
        }
        if (section[e] < 0) {
            throw StructureError("encoder at (" + std::to_string(pl.x) + "," + std::to_string(pl.y) +
                                 ") is not gripped by selectors");
        }
    }

    const Bar& enc = bars.at(mf.bar({Group::encoder}));
    auto arm_hit = [&](int s, int arm_start, const std::vector<Color>& side, const Color& hit) {
        for (int k = 0; k < m; ++k)
            if (side[static_cast<std::size_t>(s * sec + arm_start + k)] == hit) return k;
        throw StructureError("arm without encoding color");
    };
    // Node reached by following a linker down to the row below.
    auto landing = [&](int x, int y, bool right_arm) {
        const Cell& c = cell(x, y);
        if (c.placement < 0 || role[static_cast<std::size_t>(c.placement)]->group != Group::encoder)
            throw StructureError("linker does not land on an encoder");
        const int node = node_of.at(c.placement);
        const int rel = c.offset - section[static_cast<std::size_t>(node)] * sec;
        const bool ok = right_arm ? (rel > m && rel < sec) : (rel >= 0 && rel < m);
        if (!ok) throw StructureError("linker lands outside the selected section's arm");
        return node;
    };

    std::vector<int> west(encoders.size()), south(encoders.size());
    for (std::size_t e = 0; e < encoders.size(); ++e) {
        const auto& pl = tiling.placements[static_cast<std::size_t>(encoders[e])];
        const int s = section[e], y = pl.y;
        const int lc = pl.x + s * sec + arm_hit(s, 0, enc.bottom, mf.palette.A(4));
        if (!is(lc, y - 1, {Group::linker_small_down}) || !is(lc, y - 2, {Group::linker_long_dl}) ||
            cell(lc, y - 2).offset != lam - 1 || !is(lc - lam + 1, y - 3, {Group::linker_small_up}))
            throw StructureError("left arm is not linked");
        west[e] = landing(lc - lam + 1, y - 4, true);

        const int rc = pl.x + s * sec + m + 1 + arm_hit(s, m + 1, enc.bottom, mf.palette.A(4));
        if (!is(rc, y - 1, {Group::linker_small_down}) || !is(rc, y - 2, {Group::linker_long_dr}) ||
            cell(rc, y - 2).offset != 0 || !is(rc + lam - 1, y - 3, {Group::linker_small_up}))
            throw StructureError("right arm is not linked");
        south[e] = landing(rc + lam - 1, y - 4, false);
    }

    auto invert = [&](const std::vector<int>& f) {
        std::vector<int> inv(f.size(), -1);
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (inv[static_cast<std::size_t>(f[i])] >= 0) throw StructureError("two encoders share a neighbour");
            inv[static_cast<std::size_t>(f[i])] = static_cast<int>(i);
        }
        return inv;
    };
    const std::vector<int> east = invert(west), north = invert(south);
    for (std::size_t i = 0; i < encoders.size(); ++i) {
        if (west[static_cast<std::size_t>(south[i])] != south[static_cast<std::size_t>(west[i])])
            throw StructureError("neighbour relations do not commute");
    }

    // Start from the encoder with the smallest (y, x).
    int v0 = 0;
    auto key = [&](int e) {
        const auto& pl = tiling.placements[static_cast<std::size_t>(encoders[static_cast<std::size_t>(e)])];
        return std::pair{floor_mod(pl.y, H), floor_mod(pl.x, W)};
    };
    for (int e = 1; e < static_cast<int>(encoders.size()); ++e)
        if (key(e) < key(v0)) v0 = e;

    auto order = [&](const std::vector<int>& f) {
        int k = 1;
        for (int v = f[static_cast<std::size_t>(v0)]; v != v0; v = f[static_cast<std::size_t>(v)]) ++k;
        return k;
    };
    const int P = order(east), Q = order(north);
    TileGrid grid = TileGrid::filled(P, Q, true, "");
    std::set<int> seen;
    int row = v0;
    for (int y = 0; y < Q; ++y) {
        int v = row;
        for (int x = 0; x < P; ++x) {
            seen.insert(v);
            grid.at(x, y) = mf.tiles[static_cast<std::size_t>(section[static_cast<std::size_t>(v)])].name;
            v = east[static_cast<std::size_t>(v)];
        }
        row = north[static_cast<std::size_t>(row)];
    }
    if (seen.size() != encoders.size()) throw StructureError("encoders form more than one lattice");
    return minimal_period(grid);
}

} // namespace wangbars
