#pragma once

// CNF export of bounded tiling instances, DIMACS text in both directions,
// and a small DPLL routine used to cross-check the search.

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wangbars/core.hpp"

namespace wangbars {

struct CnfDocument {
    int variables = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<Placement> vars;  // vars[id - 1] is the placement of variable id
};

/// One variable per placement (bar, x, y) on a bounded domain.
inline CnfDocument export_cnf(const BarSet& bars, const Domain& domain) {
    if (!domain.bounded()) throw Error("CNF export needs a bounded domain");
    if (domain.width < 1 || domain.height < 1) throw Error("domain dimensions must be positive");
    if (domain.kind == DomainKind::torus && domain.width < bars.max_length())
        throw Error("torus width " + std::to_string(domain.width) + " is narrower than the longest bar (" +
                    std::to_string(bars.max_length()) + ")");
    const int W = domain.width, H = domain.height;
    const bool wrap = domain.kind == DomainKind::torus;

    CnfDocument doc;
    // covering[cell] = (variable, offset)
    std::vector<std::vector<std::pair<int, int>>> covering(static_cast<std::size_t>(W) * H);
    std::vector<std::vector<int>> starting(static_cast<std::size_t>(W) * H);
    auto cell = [&](int x, int y) { return static_cast<std::size_t>(y) * W + x; };

    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            for (std::size_t b = 0; b < bars.size(); ++b) {
                const int L = bars[b].length();
                if (!wrap && x + L > W) continue;
                doc.vars.push_back({bars[b].name, x, y});
                const int id = static_cast<int>(doc.vars.size());
                starting[cell(x, y)].push_back(id);
                for (int k = 0; k < L; ++k) covering[cell((x + k) % W, y)].push_back({id, k});
            }
        }
    }
    doc.variables = static_cast<int>(doc.vars.size());

    auto bar_of = [&](int id) -> const Bar& { return bars.at(doc.vars[id - 1].item); };

    for (const auto& c : covering) {
        std::vector<int> clause;
        for (auto [id, k] : c) clause.push_back(id);
        doc.clauses.push_back(clause);
    }

    std::set<std::pair<int, int>> conflicts;
    auto forbid = [&](int a, int b) { conflicts.insert(std::minmax(a, b)); };

    for (const auto& c : covering)
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (c[i].first != c[j].first) forbid(c[i].first, c[j].first);

    for (int id = 1; id <= doc.variables; ++id) {
        const Bar& b = bar_of(id);
        const auto& p = doc.vars[id - 1];
        const int L = b.length();
        if (wrap || p.x + L < W) {
            for (int q : starting[cell((p.x + L) % W, p.y)])
                if (bar_of(q).left != b.right) forbid(id, q);
        }
        if (wrap || p.y + 1 < H) {
            const int up = (p.y + 1) % H;
            for (int k = 0; k < L; ++k)
                for (auto [q, kq] : covering[cell((p.x + k) % W, up)])
                    if (bar_of(q).bottom[static_cast<std::size_t>(kq)] != b.top[static_cast<std::size_t>(k)]) forbid(id, q);
        }
    }
    for (auto [a, b] : conflicts) {
        if (a == b) doc.clauses.push_back({-a});
        else doc.clauses.push_back({-a, -b});
    }
    return doc;
}

inline std::string to_dimacs(const CnfDocument& doc) {
    std::ostringstream out;
    for (std::size_t i = 0; i < doc.vars.size(); ++i)
        out << "c var " << i + 1 << " = " << doc.vars[i].item << ' ' << doc.vars[i].x << ' ' << doc.vars[i].y << '\n';
    out << "p cnf " << doc.variables << ' ' << doc.clauses.size() << '\n';
    for (const auto& c : doc.clauses) {
        for (int lit : c) out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

inline CnfDocument parse_dimacs(const std::string& text) {
    CnfDocument doc;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    std::size_t expected = 0;
    std::vector<int> pending;
    int lineno = 0;
    auto fail = [&](const std::string& msg) { throw Error("dimacs line " + std::to_string(lineno) + ": " + msg); };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "c") {
            std::string tag, eq, name;
            int id = 0, x = 0, y = 0;
            if (ls >> tag && tag == "var") {
                if (!(ls >> id >> eq >> name >> x >> y) || eq != "=" || id < 1) fail("malformed variable comment");
                if (doc.vars.size() < static_cast<std::size_t>(id)) doc.vars.resize(static_cast<std::size_t>(id));
                doc.vars[static_cast<std::size_t>(id) - 1] = {name, x, y};
            }
            continue;
        }
        if (head == "p") {
            std::string fmt;
            long long v = 0, c = 0;
            if (header || !(ls >> fmt >> v >> c) || fmt != "cnf" || v < 0 || c < 0) fail("malformed problem line");
            header = true;
            doc.variables = static_cast<int>(v);
            expected = static_cast<std::size_t>(c);
            continue;
        }
        if (!header) fail("clause before problem line");
        std::istringstream cs(line);
        long long lit = 0;
        while (cs >> lit) {
            if (lit == 0) {
                doc.clauses.push_back(pending);
                pending.clear();
            } else {
                if (std::llabs(lit) > doc.variables) fail("literal out of range");
                pending.push_back(static_cast<int>(lit));
            }
        }
        if (!cs.eof()) fail("unexpected token");
    }
    if (!header) throw Error("dimacs: missing problem line");
    if (!pending.empty()) throw Error("dimacs: unterminated clause");
    if (doc.clauses.size() != expected) throw Error("dimacs: clause count does not match the problem line");
    if (!doc.vars.empty() && doc.vars.size() != static_cast<std::size_t>(doc.variables))
        throw Error("dimacs: variable map does not cover all variables");
    return doc;
}

/// Returns a model (index = variable id, slot 0 unused) or nothing if unsatisfiable.
inline std::optional<std::vector<bool>> dpll(const CnfDocument& doc) {
    const int V = doc.variables;
    auto index = [&](int lit) { return lit > 0 ? 2 * lit : 2 * -lit + 1; };
    std::vector<std::vector<int>> clauses;
    std::vector<int> units;
    for (const auto& c : doc.clauses) {
        std::vector<int> cl(c.begin(), c.end());
        std::sort(cl.begin(), cl.end());
        cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
        bool taut = false;
        for (std::size_t i = 0; i + 1 < cl.size(); ++i)
            for (std::size_t j = i + 1; j < cl.size(); ++j)
                if (cl[i] == -cl[j]) taut = true;
        if (taut) continue;
        if (cl.empty()) return std::nullopt;
        if (cl.size() == 1) units.push_back(cl[0]);
        else clauses.push_back(std::move(cl));
    }

    std::vector<signed char> value(static_cast<std::size_t>(V) + 1, 0);  // 0 unset, 1 true, -1 false
    auto lit_value = [&](int lit) { signed char v = value[static_cast<std::size_t>(std::abs(lit))]; return lit > 0 ? v : -v; };
    std::vector<std::vector<int>> watches(static_cast<std::size_t>(2 * V + 2));
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        watches[index(clauses[i][0])].push_back(static_cast<int>(i));
        watches[index(clauses[i][1])].push_back(static_cast<int>(i));
    }

    std::vector<int> trail;
    std::vector<std::size_t> levels;  // trail position of each decision
    std::size_t head = 0;

    auto assign = [&](int lit) {
        value[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? 1 : -1;
        trail.push_back(lit);
    };
    auto propagate = [&]() -> bool {
        while (head < trail.size()) {
            const int falsified = -trail[head++];
            auto& ws = watches[index(falsified)];
            for (std::size_t w = 0; w < ws.size();) {
                auto& cl = clauses[static_cast<std::size_t>(ws[w])];
                if (cl[0] == falsified) std::swap(cl[0], cl[1]);
                if (lit_value(cl[0]) == 1) { ++w; continue; }
                bool moved = false;
                for (std::size_t k = 2; k < cl.size(); ++k) {
                    if (lit_value(cl[k]) != -1) {
                        std::swap(cl[1], cl[k]);
                        watches[index(cl[1])].push_back(ws[w]);
                        ws[w] = ws.back();
                        ws.pop_back();
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                if (lit_value(cl[0]) == -1) return false;
                assign(cl[0]);
                ++w;
            }
        }
        return true;
    };

    for (int u : units) {
        if (lit_value(u) == -1) return std::nullopt;
        if (lit_value(u) == 0) assign(u);
    }
    if (!propagate()) return std::nullopt;

    int next = 1;
    while (true) {
        while (next <= V && value[static_cast<std::size_t>(next)] != 0) ++next;
        if (next > V) break;
        levels.push_back(trail.size());
        assign(next);
        while (!propagate()) {
            // chronological backtracking: flip the latest decision that was not flipped yet
            int flipped = 0;
            while (!levels.empty()) {
                const std::size_t pos = levels.back();
                const int decision = trail[pos];
                for (std::size_t i = pos; i < trail.size(); ++i) value[static_cast<std::size_t>(std::abs(trail[i]))] = 0;
                trail.resize(pos);
                levels.pop_back();
                if (decision > 0) { flipped = -decision; break; }
            }
            if (flipped == 0) return std::nullopt;
            // a flipped decision is recorded as a negative literal on its own level
            levels.push_back(trail.size());
            assign(flipped);
            head = trail.size() - 1;
            next = 1;
        }
    }
    std::vector<bool> model(static_cast<std::size_t>(V) + 1, false);
    for (int v = 1; v <= V; ++v) model[static_cast<std::size_t>(v)] = value[static_cast<std::size_t>(v)] == 1;
    return model;
}

inline Tiling decode_model(const CnfDocument& doc, const std::vector<bool>& model, const Domain& domain) {
    if (doc.vars.size() != static_cast<std::size_t>(doc.variables)) throw Error("CNF document has no variable map");
    Tiling t{domain, {}};
    for (int v = 1; v <= doc.variables; ++v)
        if (model.at(static_cast<std::size_t>(v))) t.placements.push_back(doc.vars[static_cast<std::size_t>(v) - 1]);
    return t;
}

} // namespace wangbars
