#pragma once

// Domain model: Wang tiles, Wang bars, tilings of rect/torus/free domains,
// and the matching semantics every other module builds on.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wangbars {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Color = std::string;

// User-supplied symbols are [A-Za-z0-9_]+. Generated colors (palette,
// cut glue, junk) carry a leading '@' so they can never clash with input.
inline bool is_symbol(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
}

inline bool is_color_token(std::string_view s) {
    if (!s.empty() && s.front() == '@') s.remove_prefix(1);
    return is_symbol(s);
}

struct Tile {
    std::string name;
    Color north, east, south, west;

    friend bool operator==(const Tile&, const Tile&) = default;
};

class TileSet {
public:
    TileSet() = default;
    explicit TileSet(std::vector<Tile> tiles) : tiles_(std::move(tiles)) {
        if (tiles_.empty()) throw Error("tile set is empty");
        std::set<std::string> seen;
        for (const auto& t : tiles_) {
            if (!seen.insert(t.name).second) throw Error("duplicate tile name '" + t.name + "'");
        }
    }

    const std::vector<Tile>& tiles() const { return tiles_; }
    std::size_t size() const { return tiles_.size(); }
    const Tile& operator[](std::size_t i) const { return tiles_[i]; }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < tiles_.size(); ++i)
            if (tiles_[i].name == name) return i;
        return std::nullopt;
    }

    const Tile& at(std::string_view name) const {
        auto i = index_of(name);
        if (!i) throw Error("unknown tile '" + std::string(name) + "'");
        return tiles_[*i];
    }

    std::set<Color> colors() const {
        std::set<Color> out;
        for (const auto& t : tiles_) out.insert({t.north, t.east, t.south, t.west});
        return out;
    }

    friend bool operator==(const TileSet&, const TileSet&) = default;

private:
    std::vector<Tile> tiles_;
};

/// A horizontal 1xL bar. Segment k has colors top[k] (facing y+1) and
/// bottom[k] (facing y-1); `left`/`right` color the two unit-height ends.
struct Bar {
    std::string name;
    std::vector<Color> top;
    std::vector<Color> bottom;
    Color left, right;

    int length() const { return static_cast<int>(top.size()); }

    friend bool operator==(const Bar&, const Bar&) = default;
};

class BarSet {
public:
    BarSet() = default;
    explicit BarSet(std::vector<Bar> bars) : bars_(std::move(bars)) {
        if (bars_.empty()) throw Error("bar set is empty");
        std::set<std::string> seen;
        for (const auto& b : bars_) {
            if (!seen.insert(b.name).second) throw Error("duplicate bar name '" + b.name + "'");
            if (b.top.empty() || b.top.size() != b.bottom.size())
                throw Error("bar '" + b.name + "' has inconsistent segment lists");
        }
    }

    const std::vector<Bar>& bars() const { return bars_; }
    std::size_t size() const { return bars_.size(); }
    const Bar& operator[](std::size_t i) const { return bars_[i]; }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < bars_.size(); ++i)
            if (bars_[i].name == name) return i;
        return std::nullopt;
    }

    const Bar& at(std::string_view name) const {
        auto i = index_of(name);
        if (!i) throw Error("unknown bar '" + std::string(name) + "'");
        return bars_[*i];
    }

    int max_length() const {
        int out = 0;
        for (const auto& b : bars_) out = std::max(out, b.length());
        return out;
    }

    std::set<Color> colors() const {
        std::set<Color> out;
        for (const auto& b : bars_) {
            out.insert(b.top.begin(), b.top.end());
            out.insert(b.bottom.begin(), b.bottom.end());
            out.insert(b.left);
            out.insert(b.right);
        }
        return out;
    }

    friend bool operator==(const BarSet&, const BarSet&) = default;

private:
    std::vector<Bar> bars_;
};

enum class DomainKind { rect, torus, free };

struct Domain {
    DomainKind kind = DomainKind::free;
    int width = 0;
    int height = 0;

    static Domain rect(int w, int h) { return checked({DomainKind::rect, w, h}); }
    static Domain torus(int w, int h) { return checked({DomainKind::torus, w, h}); }
    static Domain unbounded() { return {DomainKind::free, 0, 0}; }

    bool bounded() const { return kind != DomainKind::free; }

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    static Domain checked(Domain d) {
        if (d.width < 1 || d.height < 1) throw Error("domain dimensions must be positive");
        return d;
    }
};

inline int floor_mod(long long a, long long m) {
    long long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

/// Leftmost cell of a bar (or a tile, as a length-1 bar). y is the row.
struct Placement {
    std::string item;
    int x = 0;
    int y = 0;

    friend bool operator==(const Placement&, const Placement&) = default;
};

struct Tiling {
    Domain domain;
    std::vector<Placement> placements;

    friend bool operator==(const Tiling&, const Tiling&) = default;
};

enum class ViolationKind { overlap, gap, h_mismatch, v_mismatch, out_of_bounds };

inline std::string_view to_string(ViolationKind k) {
    switch (k) {
    case ViolationKind::overlap: return "overlap";
    case ViolationKind::gap: return "gap";
    case ViolationKind::h_mismatch: return "h-mismatch";
    case ViolationKind::v_mismatch: return "v-mismatch";
    case ViolationKind::out_of_bounds: return "out-of-bounds";
    }
    return "?";
}

struct Violation {
    ViolationKind kind;
    int x = 0;
    int y = 0;
    std::vector<std::string> placements;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }

    std::size_t count(ViolationKind k) const {
        return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                       [k](const Violation& v) { return v.kind == k; }));
    }
};

/// Square-grid assignment of tile names. Row-major with y growing north.
struct TileGrid {
    int width = 0;
    int height = 0;
    bool torus = true;
    std::vector<std::string> cells;

    TileGrid() = default;
    TileGrid(int w, int h, bool wrap, std::vector<std::string> names)
        : width(w), height(h), torus(wrap), cells(std::move(names)) {
        if (w < 1 || h < 1) throw Error("grid dimensions must be positive");
        if (cells.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h))
            throw Error("grid cell count does not match its dimensions");
    }

    static TileGrid filled(int w, int h, bool wrap, const std::string& name) {
        return TileGrid(w, h, wrap, std::vector<std::string>(static_cast<std::size_t>(w) * h, name));
    }

    const std::string& at(int x, int y) const {
        return cells[static_cast<std::size_t>(floor_mod(y, height)) * width + floor_mod(x, width)];
    }
    std::string& at(int x, int y) {
        return cells[static_cast<std::size_t>(floor_mod(y, height)) * width + floor_mod(x, width)];
    }

    friend bool operator==(const TileGrid&, const TileGrid&) = default;
};

inline Bar tile_as_bar(const Tile& t) {
    return Bar{t.name, {t.north}, {t.south}, t.west, t.east};
}

inline BarSet tiles_as_bars(const TileSet& tiles) {
    std::vector<Bar> bars;
    bars.reserve(tiles.size());
    for (const auto& t : tiles.tiles()) bars.push_back(tile_as_bar(t));
    return BarSet(std::move(bars));
}

namespace detail {

struct Cover {
    std::size_t placement;
    int offset;
};

// Cell occupancy keyed by (y, x) so iteration runs row-major.
class CellMap {
public:
    explicit CellMap(const Domain& d) : domain_(d) {}

    std::pair<int, int> normalize(int x, int y) const {
        if (domain_.kind == DomainKind::torus) return {floor_mod(x, domain_.width), floor_mod(y, domain_.height)};
        return {x, y};
    }

    bool inside(int x, int y) const {
        if (domain_.kind != DomainKind::rect) return true;
        return x >= 0 && y >= 0 && x < domain_.width && y < domain_.height;
    }

    void add(int x, int y, Cover c) {
        auto [nx, ny] = normalize(x, y);
        cells_[{ny, nx}].push_back(c);
    }

    const std::vector<Cover>* find(int x, int y) const {
        if (!inside(x, y)) return nullptr;
        auto [nx, ny] = normalize(x, y);
        auto it = cells_.find({ny, nx});
        return it == cells_.end() ? nullptr : &it->second;
    }

    const std::map<std::pair<int, int>, std::vector<Cover>>& cells() const { return cells_; }

private:
    Domain domain_;
    std::map<std::pair<int, int>, std::vector<Cover>> cells_;
};

} // namespace detail

/// Checks single coverage (rect/torus), end-to-end horizontal matching and
/// per-segment vertical matching. Free domains only constrain covered pairs.
inline ValidationReport validate_bar_tiling(const BarSet& bars, const Tiling& tiling) {
    ValidationReport report;
    const Domain& dom = tiling.domain;
    std::vector<const Bar*> bar_of;
    bar_of.reserve(tiling.placements.size());
    for (const auto& p : tiling.placements) bar_of.push_back(&bars.at(p.item));

    detail::CellMap map(dom);
    for (std::size_t i = 0; i < tiling.placements.size(); ++i) {
        const auto& p = tiling.placements[i];
        const int len = bar_of[i]->length();
        if (dom.kind == DomainKind::rect &&
            (p.x < 0 || p.y < 0 || p.y >= dom.height || p.x + len > dom.width)) {
            report.violations.push_back({ViolationKind::out_of_bounds, p.x, p.y, {p.item}});
        }
        for (int k = 0; k < len; ++k) {
            if (map.inside(p.x + k, p.y)) map.add(p.x + k, p.y, {i, k});
        }
    }

    auto name = [&](std::size_t i) { return tiling.placements[i].item; };

    if (dom.bounded()) {
        for (int y = 0; y < dom.height; ++y)
            for (int x = 0; x < dom.width; ++x)
                if (!map.find(x, y)) report.violations.push_back({ViolationKind::gap, x, y, {}});
    }

    for (const auto& [key, covers] : map.cells()) {
        const auto [y, x] = key;
        if (covers.size() > 1) {
            Violation v{ViolationKind::overlap, x, y, {}};
            for (const auto& c : covers) v.placements.push_back(name(c.placement));
            report.violations.push_back(std::move(v));
        }
        const auto& here = covers.front();
        const Bar& bar = *bar_of[here.placement];

        if (here.offset == bar.length() - 1) {
            if (const auto* right = map.find(x + 1, y)) {
                const auto& r = right->front();
                if (r.offset == 0 && bar_of[r.placement]->left != bar.right) {
                    report.violations.push_back(
                        {ViolationKind::h_mismatch, x, y, {name(here.placement), name(r.placement)}});
                }
            }
        }
        if (const auto* above = map.find(x, y + 1)) {
            const auto& a = above->front();
            if (bar_of[a.placement]->bottom[a.offset] != bar.top[here.offset]) {
                report.violations.push_back(
                    {ViolationKind::v_mismatch, x, y, {name(here.placement), name(a.placement)}});
            }
        }
    }
    return report;
}

/// Edge-to-edge check of a square grid: north(x,y)=south(x,y+1) and
/// east(x,y)=west(x+1,y), wrapping when the grid is a torus.
inline ValidationReport validate_tile_tiling(const TileSet& tiles, const TileGrid& grid) {
    if (grid.width < 1 || grid.height < 1) throw Error("grid dimensions must be positive");
    std::vector<const Tile*> cell(grid.cells.size());
    for (std::size_t i = 0; i < grid.cells.size(); ++i) cell[i] = &tiles.at(grid.cells[i]);
    auto at = [&](int x, int y) { return cell[static_cast<std::size_t>(y) * grid.width + x]; };

    ValidationReport report;
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x) {
            const Tile* t = at(x, y);
            if (x + 1 < grid.width || grid.torus) {
                const Tile* r = at((x + 1) % grid.width, y);
                if (t->east != r->west) report.violations.push_back({ViolationKind::h_mismatch, x, y, {t->name, r->name}});
            }
            if (y + 1 < grid.height || grid.torus) {
                const Tile* u = at(x, (y + 1) % grid.height);
                if (t->north != u->south) report.violations.push_back({ViolationKind::v_mismatch, x, y, {t->name, u->name}});
            }
        }
    }
    return report;
}

/// One length-1 placement per grid cell.
inline Tiling grid_as_tiling(const TileGrid& grid) {
    Tiling t{grid.torus ? Domain::torus(grid.width, grid.height) : Domain::rect(grid.width, grid.height), {}};
    for (int y = 0; y < grid.height; ++y)
        for (int x = 0; x < grid.width; ++x) t.placements.push_back({grid.at(x, y), x, y});
    return t;
}

} // namespace wangbars
