#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace oracle {

using namespace wangbars;

bool torus_tileable(const TileSet& tiles, int w, int h) {
    const std::size_t T = tiles.size();
    const std::size_t cells = static_cast<std::size_t>(w) * h;
    std::vector<std::size_t> a(cells, 0);
    while (true) {
        bool good = true;
        for (int y = 0; y < h && good; ++y) {
            for (int x = 0; x < w && good; ++x) {
                const Tile& t = tiles[a[y * w + x]];
                const Tile& r = tiles[a[y * w + (x + 1) % w]];
                const Tile& u = tiles[a[((y + 1) % h) * w + x]];
                if (t.east != r.west || t.north != u.south) good = false;
            }
        }
        if (good) return true;
        std::size_t i = 0;
        while (i < cells && ++a[i] == T) a[i++] = 0;
        if (i == cells) return false;
    }
}

bool bars_tileable(const BarSet& bars, const Domain& d) {
    const int W = d.width, H = d.height;
    const bool wrap = d.kind == DomainKind::torus;
    struct Seg {
        int bar = -1, off = 0;
    };
    std::vector<Seg> g(static_cast<std::size_t>(W) * H);
    auto at = [&](int x, int y) -> Seg& { return g[static_cast<std::size_t>(y) * W + x]; };
    auto bar = [&](const Seg& s) -> const Bar& { return bars[static_cast<std::size_t>(s.bar)]; };

    // l directly left of r
    auto joins = [&](const Seg& l, const Seg& r) {
        if (r.off > 0) return l.bar == r.bar && l.off == r.off - 1;
        return l.off == bar(l).length() - 1 && bar(l).right == bar(r).left;
    };
    // d directly below u
    auto stacks = [&](const Seg& dn, const Seg& up) {
        return bar(dn).top[static_cast<std::size_t>(dn.off)] == bar(up).bottom[static_cast<std::size_t>(up.off)];
    };

    // everything decidable once (x, y) and all earlier cells are set
    auto ok_at = [&](int x, int y) {
        const Seg& s = at(x, y);
        if (x > 0 && !joins(at(x - 1, y), s)) return false;
        if (x == 0 && !wrap && s.off > 0) return false;
        if (x == W - 1) {
            if (wrap && !joins(s, at(0, y))) return false;
            if (!wrap && s.off != bar(s).length() - 1) return false;
        }
        if (y > 0 && !stacks(at(x, y - 1), s)) return false;
        if (y == H - 1 && wrap && !stacks(s, at(x, 0))) return false;
        return true;
    };

    std::function<bool(int)> rec = [&](int i) {
        if (i == W * H) return true;
        const int x = i % W, y = i / W;
        for (std::size_t b = 0; b < bars.size(); ++b) {
            if (bars[b].length() > W) continue;
            for (int k = 0; k < bars[b].length(); ++k) {
                at(x, y) = {static_cast<int>(b), k};
                if (ok_at(x, y) && rec(i + 1)) return true;
            }
        }
        at(x, y) = {};
        return false;
    };
    return rec(0);
}

bool same_up_to_translation(const TileGrid& a, const TileGrid& b) {
    // compare on the common period
    int W = a.width, H = a.height;
    while (W % b.width) W += a.width;
    while (H % b.height) H += a.height;
    for (int dy = 0; dy < H; ++dy)
        for (int dx = 0; dx < W; ++dx) {
            bool eq = true;
            for (int y = 0; y < H && eq; ++y)
                for (int x = 0; x < W && eq; ++x)
                    if (a.at(x, y) != b.at(x + dx, y + dy)) eq = false;
            if (eq) return true;
        }
    return false;
}

std::vector<int> direction_counts(const TileSet& tiles) {
    std::vector<int> out;
    for (int dir = 0; dir < 4; ++dir) {
        std::vector<std::string> v;
        for (const auto& t : tiles.tiles()) v.push_back(dir == 0 ? t.north : dir == 1 ? t.east : dir == 2 ? t.south : t.west);
        std::sort(v.begin(), v.end());
        out.push_back(static_cast<int>(std::unique(v.begin(), v.end()) - v.begin()));
    }
    return out;
}

std::vector<TileSet> all_tile_sets(int max_tiles, int colors) {
    std::vector<Tile> all;
    int total = 1;
    for (int i = 0; i < 4; ++i) total *= colors;
    for (int code = 0; code < total; ++code) {
        int c = code;
        std::string e[4];
        for (auto& s : e) {
            s = "c" + std::to_string(c % colors);
            c /= colors;
        }
        all.push_back({"t" + std::to_string(code), e[0], e[1], e[2], e[3]});
    }
    std::vector<TileSet> out;
    std::vector<Tile> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (!pick.empty()) out.emplace_back(pick);
        if (static_cast<int>(pick.size()) == max_tiles) return;
        for (std::size_t i = from; i < all.size(); ++i) {
            pick.push_back(all[i]);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return out;
}

TileSet random_tile_set(std::mt19937& rng, int n, int m) {
    if (m > 4 * n) throw Error("too many colors for the tile count");
    std::vector<int> edges(static_cast<std::size_t>(4 * n));
    for (std::size_t i = 0; i < edges.size(); ++i)
        edges[i] = i < static_cast<std::size_t>(m) ? static_cast<int>(i) : static_cast<int>(rng() % static_cast<unsigned>(m));
    std::shuffle(edges.begin(), edges.end(), rng);
    std::vector<Tile> tiles;
    for (int i = 0; i < n; ++i) {
        auto c = [&](int k) { return "c" + std::to_string(edges[static_cast<std::size_t>(4 * i + k)]); };
        tiles.push_back({"t" + std::to_string(i), c(0), c(1), c(2), c(3)});
    }
    return TileSet(std::move(tiles));
}

bool cnf_satisfiable(int vars, const std::vector<std::vector<int>>& clauses) {
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << vars); ++a) {
        bool all = true;
        for (const auto& c : clauses) {
            bool any = false;
            for (int lit : c) {
                const bool v = (a >> (std::abs(lit) - 1)) & 1;
                if ((lit > 0) == v) any = true;
            }
            if (!any) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

} // namespace oracle
