#pragma once

// Exhaustive tiling search for finite domains and bounded region completion.
//
// Every cell carries a domain of candidate (bar, offset) segments. Search
// branches on the first undecided cell in row-major order, trying segments
// in (bar order, offset) order, and keeps all domains arc consistent with
// respect to the horizontal (bar continuity / end colors) and vertical
// (segment colors) constraints. Branching order and value order are those
// of plain scanline backtracking, so the first witness is the canonical one.

#include "wangbars/core.hpp"

#include <chrono>
#include <cstdint>
#include <deque>

namespace wangbars {

struct SearchConfig {
    std::set<std::string> excluded;
    std::optional<std::uint64_t> node_budget;
    std::optional<std::chrono::milliseconds> time_budget;
    bool deterministic = true;
};

enum class Verdict { sat, unsat, exhausted_budget };

inline std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::sat: return "sat";
    case Verdict::unsat: return "unsat";
    case Verdict::exhausted_budget: return "exhausted-budget";
    }
    return "?";
}

struct SearchStats {
    std::uint64_t nodes = 0;
    std::chrono::microseconds elapsed{0};
};

struct SolveResult {
    Verdict verdict = Verdict::unsat;
    std::optional<Tiling> witness;
    SearchStats stats;
};

struct Region {
    int x0 = 0;
    int y0 = 0;
    int width = 1;
    int height = 1;

    bool contains(int x, int y) const { return x >= x0 && y >= y0 && x < x0 + width && y < y0 + height; }
};

namespace detail {

class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t words) : w_(words, 0) {}

    void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }
    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }
    bool intersects(const std::uint64_t* d) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & d[i]) return true;
        return false;
    }
    const std::uint64_t* data() const { return w_.data(); }
    std::uint64_t* data() { return w_.data(); }
    std::size_t words() const { return w_.size(); }
    void clear() { std::fill(w_.begin(), w_.end(), 0); }
    Bits& operator|=(const Bits& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }

private:
    std::vector<std::uint64_t> w_;
};

// Segment catalogue: value v = base[bar] + offset; the optional last value
// stands for an uncovered cell (free domains only).
struct Catalogue {
    std::size_t values = 0;
    std::size_t words = 0;
    std::optional<std::size_t> empty;
    std::vector<int> bar_of, offset_of;
    std::vector<int> base;
    std::size_t colors = 0;

    Bits all, allowed, start, end, non_start, non_end;
    std::vector<Bits> start_left, end_right, by_top, by_bottom;

    Catalogue(const BarSet& bars, const std::set<std::string>& excluded, bool with_empty) {
        std::map<Color, int> ids;
        auto id = [&](const Color& c) {
            auto [it, fresh] = ids.emplace(c, static_cast<int>(ids.size()));
            return it->second;
        };
        for (std::size_t b = 0; b < bars.size(); ++b) {
            base.push_back(static_cast<int>(values));
            for (int o = 0; o < bars[b].length(); ++o) {
                bar_of.push_back(static_cast<int>(b));
                offset_of.push_back(o);
                ++values;
            }
        }
        if (with_empty) empty = values++;
        words = (values + 63) / 64;
        for (const auto& b : bars.bars()) {
            id(b.left);
            id(b.right);
            for (const auto& c : b.top) id(c);
            for (const auto& c : b.bottom) id(c);
        }
        colors = ids.size();
        for (Bits* m : {&all, &allowed, &start, &end, &non_start, &non_end}) *m = Bits(words);
        for (auto* v : {&start_left, &end_right, &by_top, &by_bottom}) v->assign(colors, Bits(words));

        for (std::size_t v = 0; v < bar_of.size(); ++v) {
            const Bar& b = bars[static_cast<std::size_t>(bar_of[v])];
            const int o = offset_of[v];
            all.set(v);
            if (!excluded.count(b.name)) allowed.set(v);
            if (o == 0) {
                start.set(v);
                start_left[static_cast<std::size_t>(id(b.left))].set(v);
            } else {
                non_start.set(v);
            }
            if (o == b.length() - 1) {
                end.set(v);
                end_right[static_cast<std::size_t>(id(b.right))].set(v);
            } else {
                non_end.set(v);
            }
            by_top[static_cast<std::size_t>(id(b.top[static_cast<std::size_t>(o)]))].set(v);
            by_bottom[static_cast<std::size_t>(id(b.bottom[static_cast<std::size_t>(o)]))].set(v);
        }
        if (empty) {
            all.set(*empty);
            allowed.set(*empty);
        }
    }
};

class BudgetExceeded {};

class Search {
public:
    enum Dir { left = 0, right = 1, down = 2, up = 3 };

    Search(const BarSet& bars, const SearchConfig& cfg, bool with_empty)
        : bars_(bars), cfg_(cfg), cat_(bars, cfg.excluded, with_empty), W_(cat_.words), tmp_(W_) {}

    // Board layout: cells, coordinates, neighbours (-1 = none).
    void add_cell(int x, int y) {
        xs_.push_back(x);
        ys_.push_back(y);
    }
    void set_neighbours(std::vector<std::array<int, 4>> nb) { nb_ = std::move(nb); }
    void init_domains() { dom_.assign(xs_.size() * W_, 0); }
    std::uint64_t* dom(std::size_t c) { return dom_.data() + c * W_; }
    const std::uint64_t* dom(std::size_t c) const { return dom_.data() + c * W_; }
    void fill(std::size_t c, const Bits& b) { std::copy(b.data(), b.data() + W_, dom(c)); }
    void restrict(std::size_t c, const Bits& b) {
        for (std::size_t i = 0; i < W_; ++i) dom(c)[i] &= b.data()[i];
    }
    void set_single(std::size_t c, std::size_t v) {
        std::fill(dom(c), dom(c) + W_, 0);
        dom(c)[v / 64] |= std::uint64_t{1} << (v % 64);
    }
    const Catalogue& catalogue() const { return cat_; }
    std::size_t cell_count() const { return xs_.size(); }
    int x_of(std::size_t c) const { return xs_[c]; }
    int y_of(std::size_t c) const { return ys_[c]; }

    /// Cells to branch on, in order; `empty_first` cells try "uncovered" first.
    void set_branch_order(std::vector<std::size_t> order, std::vector<bool> empty_first) {
        order_ = std::move(order);
        empty_first_ = std::move(empty_first);
    }

    SolveResult run() {
        const auto t0 = std::chrono::steady_clock::now();
        start_ = t0;
        SolveResult result;
        bool found = false;
        try {
            std::vector<std::size_t> all(xs_.size());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
            found = propagate(all) && dfs(0);
            result.verdict = found ? Verdict::sat : Verdict::unsat;
        } catch (const BudgetExceeded&) {
            result.verdict = Verdict::exhausted_budget;
        }
        result.stats.nodes = nodes_;
        result.stats.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);
        return result;
    }

    std::optional<std::size_t> value_of(std::size_t c) const {
        std::optional<std::size_t> out;
        for (std::size_t i = 0; i < W_; ++i) {
            std::uint64_t w = dom(c)[i];
            while (w) {
                const std::size_t v = i * 64 + static_cast<std::size_t>(__builtin_ctzll(w));
                if (out) return std::nullopt;
                out = v;
                w &= w - 1;
            }
        }
        return out;
    }

private:
    bool singleton_or_empty(std::size_t c) const {
        int count = 0;
        for (std::size_t i = 0; i < W_; ++i) count += __builtin_popcountll(dom(c)[i]);
        return count <= 1;
    }

    bool has(const std::uint64_t* d, std::size_t v) const { return (d[v / 64] >> (v % 64)) & 1U; }

    // Values of the neighbour in direction `dir` supported by domain `d`.
    void support(const std::uint64_t* d, Dir dir, Bits& out) const {
        out.clear();
        std::uint64_t* o = out.data();
        const bool free = cat_.empty.has_value();
        auto any = [&](const Bits& m) { return m.intersects(d); };
        switch (dir) {
        case right: {
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < W_; ++i) {
                const std::uint64_t x = d[i] & cat_.non_end.data()[i];
                o[i] = (x << 1) | carry;
                carry = x >> 63;
            }
            for (std::size_t c = 0; c < cat_.colors; ++c)
                if (any(cat_.end_right[c])) out |= cat_.start_left[c];
            if (free) {
                if (has(d, *cat_.empty)) out |= cat_.start;
                if (has(d, *cat_.empty) || any(cat_.end)) out.set(*cat_.empty);
            }
            break;
        }
        case left: {
            std::uint64_t carry = 0;
            for (std::size_t i = W_; i-- > 0;) {
                const std::uint64_t x = d[i] & cat_.non_start.data()[i];
                o[i] = (x >> 1) | carry;
                carry = x << 63;
            }
            for (std::size_t c = 0; c < cat_.colors; ++c)
                if (any(cat_.start_left[c])) out |= cat_.end_right[c];
            if (free) {
                if (has(d, *cat_.empty)) out |= cat_.end;
                if (has(d, *cat_.empty) || any(cat_.start)) out.set(*cat_.empty);
            }
            break;
        }
        case up:
        case down: {
            const auto& mine = dir == up ? cat_.by_top : cat_.by_bottom;
            const auto& theirs = dir == up ? cat_.by_bottom : cat_.by_top;
            for (std::size_t c = 0; c < cat_.colors; ++c)
                if (any(mine[c])) out |= theirs[c];
            if (free) {
                if (has(d, *cat_.empty)) out |= cat_.all;
                out.set(*cat_.empty);
            }
            break;
        }
        }
    }

    void write(std::size_t c, std::size_t i, std::uint64_t v) {
        std::uint64_t& slot = dom_[c * W_ + i];
        trail_.emplace_back(c * W_ + i, slot);
        slot = v;
    }

    bool propagate(const std::vector<std::size_t>& seeds) {
        queue_.clear();
        queued_.assign(xs_.size(), false);
        for (auto c : seeds) {
            queue_.push_back(c);
            queued_[c] = true;
        }
        while (!queue_.empty()) {
            const std::size_t c = queue_.front();
            queue_.pop_front();
            queued_[c] = false;
            for (int dir = 0; dir < 4; ++dir) {
                const int nb = nb_[c][static_cast<std::size_t>(dir)];
                if (nb < 0) continue;
                const auto n = static_cast<std::size_t>(nb);
                support(dom(c), static_cast<Dir>(dir), tmp_);
                bool changed = false, nonempty = false;
                for (std::size_t i = 0; i < W_; ++i) {
                    const std::uint64_t old = dom(n)[i];
                    const std::uint64_t now = old & tmp_.data()[i];
                    if (now != old) {
                        write(n, i, now);
                        changed = true;
                    }
                    nonempty |= now != 0;
                }
                if (!nonempty) return false;
                if (changed && !queued_[n]) {
                    queue_.push_back(n);
                    queued_[n] = true;
                }
            }
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            dom_[trail_.back().first] = trail_.back().second;
            trail_.pop_back();
        }
    }

    void charge() {
        ++nodes_;
        if (cfg_.node_budget && nodes_ > *cfg_.node_budget) throw BudgetExceeded{};
        if (cfg_.time_budget && (nodes_ & 255U) == 0 &&
            std::chrono::steady_clock::now() - start_ > *cfg_.time_budget)
            throw BudgetExceeded{};
    }

    bool dfs(std::size_t pos) {
        while (pos < order_.size() && singleton_or_empty(order_[pos])) ++pos;
        if (pos == order_.size()) return true;
        const std::size_t c = order_[pos];

        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < W_; ++i) {
            std::uint64_t w = dom(c)[i];
            while (w) {
                candidates.push_back(i * 64 + static_cast<std::size_t>(__builtin_ctzll(w)));
                w &= w - 1;
            }
        }
        if (empty_first_[pos] && cat_.empty) {
            auto it = std::find(candidates.begin(), candidates.end(), *cat_.empty);
            if (it != candidates.end()) std::rotate(candidates.begin(), it, it + 1);
        }

        for (std::size_t v : candidates) {
            charge();
            const std::size_t mark = trail_.size();
            for (std::size_t i = 0; i < W_; ++i) {
                const std::uint64_t want = (v / 64 == i) ? (std::uint64_t{1} << (v % 64)) : 0;
                if (dom(c)[i] != want) write(c, i, want);
            }
            if (propagate({c}) && dfs(pos + 1)) return true;
            undo(mark);
        }
        return false;
    }

    const BarSet& bars_;
    const SearchConfig& cfg_;
    Catalogue cat_;
    std::size_t W_;
    Bits tmp_;
    std::vector<int> xs_, ys_;
    std::vector<std::array<int, 4>> nb_;
    std::vector<std::uint64_t> dom_;
    std::vector<std::pair<std::size_t, std::uint64_t>> trail_;
    std::deque<std::size_t> queue_;
    std::vector<bool> queued_;
    std::vector<std::size_t> order_;
    std::vector<bool> empty_first_;
    std::uint64_t nodes_ = 0;
    std::chrono::steady_clock::time_point start_;
};

inline void check_excluded(const BarSet& bars, const SearchConfig& cfg) {
    for (const auto& name : cfg.excluded)
        if (!bars.index_of(name)) throw Error("excluded bar '" + name + "' is not in the bar set");
}

inline void check_domain(const BarSet& bars, const Domain& domain) {
    if (!domain.bounded()) throw Error("solve needs a rect or torus domain");
    if (domain.width < 1 || domain.height < 1) throw Error("domain dimensions must be positive");
    if (domain.kind == DomainKind::torus && domain.width < bars.max_length())
        throw Error("torus width " + std::to_string(domain.width) + " is narrower than the longest bar (" +
                    std::to_string(bars.max_length()) + ")");
}

inline void verify_witness(const BarSet& bars, const Tiling& t) {
    if (!validate_bar_tiling(bars, t).ok()) throw std::logic_error("search produced an invalid witness");
}

} // namespace detail

/// Decides whether `bars` tile a finite rect or torus domain.
inline SolveResult solve(const BarSet& bars, const Domain& domain, const SearchConfig& config = {}) {
    detail::check_excluded(bars, config);
    detail::check_domain(bars, domain);
    const int W = domain.width, H = domain.height;
    const bool torus = domain.kind == DomainKind::torus;

    detail::Search s(bars, config, false);
    std::vector<std::array<int, 4>> nb;
    auto idx = [&](int x, int y) { return y * W + x; };
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            s.add_cell(x, y);
            std::array<int, 4> n{-1, -1, -1, -1};
            if (torus) {
                n = {idx(floor_mod(x - 1, W), y), idx(floor_mod(x + 1, W), y), idx(x, floor_mod(y - 1, H)),
                     idx(x, floor_mod(y + 1, H))};
            } else {
                if (x > 0) n[0] = idx(x - 1, y);
                if (x + 1 < W) n[1] = idx(x + 1, y);
                if (y > 0) n[2] = idx(x, y - 1);
                if (y + 1 < H) n[3] = idx(x, y + 1);
            }
            nb.push_back(n);
        }
    }
    s.set_neighbours(std::move(nb));
    s.init_domains();
    const auto& cat = s.catalogue();
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < s.cell_count(); ++c) {
        s.fill(c, cat.allowed);
        if (!torus) {
            if (s.x_of(c) == 0) s.restrict(c, cat.start);
            if (s.x_of(c) == W - 1) s.restrict(c, cat.end);
        }
        order.push_back(c);
    }
    s.set_branch_order(std::move(order), std::vector<bool>(s.cell_count(), false));

    SolveResult r = s.run();
    if (r.verdict == Verdict::sat) {
        Tiling t{domain, {}};
        for (std::size_t c = 0; c < s.cell_count(); ++c) {
            const auto v = *s.value_of(c);
            if (cat.offset_of[v] == 0) t.placements.push_back({bars[static_cast<std::size_t>(cat.bar_of[v])].name, s.x_of(c), s.y_of(c)});
        }
        detail::verify_witness(bars, t);
        r.witness = std::move(t);
    }
    return r;
}

/// Searches for placements covering every uncovered cell of `region` that
/// extend `pins`. Bars may stick out of the region; colors are only matched
/// between covered cells, so unsat certifies a dead end for the pins.
inline SolveResult complete_region(const BarSet& bars, const std::vector<Placement>& pins, const Region& region,
                                   const SearchConfig& config = {}) {
    detail::check_excluded(bars, config);
    if (region.width < 1 || region.height < 1) throw Error("region dimensions must be positive");
    if (!validate_bar_tiling(bars, Tiling{Domain::unbounded(), pins}).ok()) throw Error("inconsistent pins");

    const int L = bars.max_length();
    int x_lo = region.x0, x_hi = region.x0 + region.width - 1;
    int y_lo = region.y0, y_hi = region.y0 + region.height - 1;
    for (const auto& p : pins) {
        x_lo = std::min(x_lo, p.x);
        x_hi = std::max(x_hi, p.x + bars.at(p.item).length() - 1);
        y_lo = std::min(y_lo, p.y);
        y_hi = std::max(y_hi, p.y);
    }
    x_lo -= L;
    x_hi += L;
    --y_lo;
    ++y_hi;
    const int BW = x_hi - x_lo + 1;

    detail::Search s(bars, config, true);
    auto idx = [&](int x, int y) { return (y - y_lo) * BW + (x - x_lo); };
    std::vector<std::array<int, 4>> nb;
    for (int y = y_lo; y <= y_hi; ++y) {
        for (int x = x_lo; x <= x_hi; ++x) {
            s.add_cell(x, y);
            std::array<int, 4> n{-1, -1, -1, -1};
            if (x > x_lo) n[0] = idx(x - 1, y);
            if (x < x_hi) n[1] = idx(x + 1, y);
            if (y > y_lo) n[2] = idx(x, y - 1);
            if (y < y_hi) n[3] = idx(x, y + 1);
            nb.push_back(n);
        }
    }
    s.set_neighbours(std::move(nb));
    s.init_domains();
    const auto& cat = s.catalogue();

    detail::Bits only_empty(cat.words), start_or_empty = cat.start, end_or_empty = cat.end;
    only_empty.set(*cat.empty);
    start_or_empty.set(*cat.empty);
    end_or_empty.set(*cat.empty);
    detail::Bits solid = cat.allowed;
    solid.data()[*cat.empty / 64] &= ~(std::uint64_t{1} << (*cat.empty % 64));

    for (std::size_t c = 0; c < s.cell_count(); ++c) {
        const int x = s.x_of(c), y = s.y_of(c);
        if (region.contains(x, y)) {
            s.fill(c, solid);
        } else if (y >= region.y0 && y < region.y0 + region.height) {
            s.fill(c, cat.allowed);
        } else {
            s.fill(c, only_empty);
        }
        if (x == x_lo) s.restrict(c, start_or_empty);
        if (x == x_hi) s.restrict(c, end_or_empty);
    }
    for (const auto& p : pins) {
        const auto b = *bars.index_of(p.item);
        for (int k = 0; k < bars[b].length(); ++k)
            s.set_single(static_cast<std::size_t>(idx(p.x + k, p.y)), static_cast<std::size_t>(cat.base[b] + k));
    }

    std::vector<std::size_t> order;
    std::vector<bool> empty_first;
    for (std::size_t c = 0; c < s.cell_count(); ++c)
        if (region.contains(s.x_of(c), s.y_of(c))) {
            order.push_back(c);
            empty_first.push_back(false);
        }
    for (std::size_t c = 0; c < s.cell_count(); ++c)
        if (!region.contains(s.x_of(c), s.y_of(c))) {
            order.push_back(c);
            empty_first.push_back(true);
        }
    s.set_branch_order(std::move(order), std::move(empty_first));

    SolveResult r = s.run();
    if (r.verdict == Verdict::sat) {
        Tiling t{Domain::unbounded(), {}};
        for (std::size_t c = 0; c < s.cell_count(); ++c) {
            const auto v = *s.value_of(c);
            if (v != *cat.empty && cat.offset_of[v] == 0)
                t.placements.push_back({bars[static_cast<std::size_t>(cat.bar_of[v])].name, s.x_of(c), s.y_of(c)});
        }
        detail::verify_witness(bars, t);
        for (int y = region.y0; y < region.y0 + region.height; ++y)
            for (int x = region.x0; x < region.x0 + region.width; ++x)
                if (!s.value_of(static_cast<std::size_t>(idx(x, y))) ||
                    *s.value_of(static_cast<std::size_t>(idx(x, y))) == *cat.empty)
                    throw std::logic_error("completion left a region cell uncovered");
        r.witness = std::move(t);
    }
    return r;
}

} // namespace wangbars
