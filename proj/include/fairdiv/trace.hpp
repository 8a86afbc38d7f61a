#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "envy_graph.hpp"

namespace fairdiv {

// Append-only log of everything an algorithm run did to the allocation.
// Replaying a trace from the empty allocation reproduces the final result;
// tests replay prefixes to audit every intermediate state.

struct ItemAssigned {
    int item = 0;
    int agent = 0;
};

struct CycleResolved {
    GraphVariant variant = GraphVariant::Plain;
    std::vector<int> cycle; // agent sequence; each takes successor's bundle
};

struct MatchingRound {
    std::vector<std::pair<int, int>> pairs; // (agent, item), sorted by agent
};

struct CakeAllocated {
    std::vector<int> agents;              // the addable set served this round
    Interval prefix;                      // the stretch of cake consumed
    std::vector<CakePiece> pieces;        // one piece per listed agent
    bool worthless = false;               // remainder had zero value for all
};

using TraceEvent = std::variant<ItemAssigned, CycleResolved, MatchingRound, CakeAllocated>;

struct RunTrace {
    std::vector<TraceEvent> events;

    void assigned(int item, int agent) { events.push_back(ItemAssigned{item, agent}); }
    void resolved(GraphVariant v, std::vector<int> cycle) {
        events.push_back(CycleResolved{v, std::move(cycle)});
    }
};

// Rebuilds the item allocation after the first `upTo` events. Items with
// index >= m are padding internals and are dropped.
inline Allocation replay_allocation(int n, int m, const RunTrace& trace,
                                    std::size_t upTo = static_cast<std::size_t>(-1)) {
    Allocation a(n);
    std::size_t limit = std::min(upTo, trace.events.size());
    for (std::size_t t = 0; t < limit; ++t) {
        const auto& ev = trace.events[t];
        if (const auto* e = std::get_if<ItemAssigned>(&ev)) {
            if (e->item < m) a.add(e->agent, e->item);
        } else if (const auto* e = std::get_if<CycleResolved>(&ev)) {
            resolve_cycle(a, e->cycle);
        } else if (const auto* e = std::get_if<MatchingRound>(&ev)) {
            for (auto [agent, item] : e->pairs)
                if (item < m) a.add(agent, item);
        }
        // CakeAllocated does not move items
    }
    return a;
}

inline MixedAllocation replay_mixed(int n, int m, const RunTrace& trace,
                                    std::size_t upTo = static_cast<std::size_t>(-1)) {
    MixedAllocation a(n);
    std::size_t limit = std::min(upTo, trace.events.size());
    for (std::size_t t = 0; t < limit; ++t) {
        const auto& ev = trace.events[t];
        if (const auto* e = std::get_if<ItemAssigned>(&ev)) {
            if (e->item < m) a.items.add(e->agent, e->item);
        } else if (const auto* e = std::get_if<CycleResolved>(&ev)) {
            resolve_cycle(a, e->cycle);
        } else if (const auto* e = std::get_if<MatchingRound>(&ev)) {
            for (auto [agent, item] : e->pairs)
                if (item < m) a.items.add(agent, item);
        } else if (const auto* e = std::get_if<CakeAllocated>(&ev)) {
            for (std::size_t t2 = 0; t2 < e->agents.size(); ++t2)
                a.cake[e->agents[t2]].unite(e->pieces[t2]);
        }
    }
    return a;
}

namespace detail {

inline const char* variant_name(GraphVariant v) {
    switch (v) {
        case GraphVariant::Plain: return "plain";
        case GraphVariant::TopTrading: return "top-trading";
        case GraphVariant::Generalized: return "generalized";
        default: return "tt-generalized";
    }
}

inline GraphVariant variant_from_name(const std::string& s) {
    if (s == "plain") return GraphVariant::Plain;
    if (s == "top-trading") return GraphVariant::TopTrading;
    if (s == "generalized") return GraphVariant::Generalized;
    if (s == "tt-generalized") return GraphVariant::TopTradingGeneralized;
    throw InputError("unknown graph variant in trace: " + s);
}

inline std::string join_ints(const std::vector<int>& xs, int offset) {
    std::string out;
    for (std::size_t t = 0; t < xs.size(); ++t) {
        if (t) out += ",";
        out += std::to_string(xs[t] + offset);
    }
    return out;
}

inline std::vector<int> split_ints(const std::string& s, int offset) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(std::stoi(tok) + offset);
    return out;
}

// intervals render as "lo..hi"; multiple intervals in a piece join with "+"
inline std::string interval_text(const Interval& iv) {
    return to_string(iv.lo) + ".." + to_string(iv.hi);
}

inline Interval interval_from_text(const std::string& s) {
    auto dots = s.find("..");
    require(dots != std::string::npos, "malformed interval: " + s);
    return Interval{parse_rational(s.substr(0, dots)), parse_rational(s.substr(dots + 2))};
}

inline std::string piece_text(const CakePiece& p) {
    std::string out;
    for (std::size_t t = 0; t < p.intervals.size(); ++t) {
        if (t) out += "+";
        out += interval_text(p.intervals[t]);
    }
    if (p.intervals.empty()) out = "none";
    return out;
}

inline CakePiece piece_from_text(const std::string& s) {
    CakePiece p;
    if (s == "none") return p;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, '+'))
        p.intervals.push_back(interval_from_text(tok));
    p.normalize();
    return p;
}

} // namespace detail

// One line per event; all indices are 1-based in the text form.
inline std::string serialize_trace(const RunTrace& trace) {
    std::string out;
    for (const auto& ev : trace.events) {
        if (const auto* e = std::get_if<ItemAssigned>(&ev)) {
            out += "assign item=" + std::to_string(e->item + 1) +
                   " agent=" + std::to_string(e->agent + 1) + "\n";
        } else if (const auto* e = std::get_if<CycleResolved>(&ev)) {
            out += std::string("cycle variant=") + detail::variant_name(e->variant) +
                   " agents=" + detail::join_ints(e->cycle, 1) + "\n";
        } else if (const auto* e = std::get_if<MatchingRound>(&ev)) {
            out += "match pairs=";
            for (std::size_t t = 0; t < e->pairs.size(); ++t) {
                if (t) out += ",";
                out += std::to_string(e->pairs[t].first + 1) + ":" +
                       std::to_string(e->pairs[t].second + 1);
            }
            out += "\n";
        } else if (const auto* e = std::get_if<CakeAllocated>(&ev)) {
            out += "cake agents=" + detail::join_ints(e->agents, 1) +
                   " prefix=" + detail::interval_text(e->prefix) + " pieces=";
            for (std::size_t t = 0; t < e->pieces.size(); ++t) {
                if (t) out += ",";
                out += detail::piece_text(e->pieces[t]);
            }
            out += e->worthless ? " worthless=true\n" : " worthless=false\n";
        }
    }
    return out;
}

inline RunTrace parse_trace(const std::string& text) {
    RunTrace trace;
    std::stringstream lines(text);
    std::string line;
    auto field = [](const std::string& l, const std::string& key) {
        auto pos = l.find(key + "=");
        require(pos != std::string::npos, "trace line missing field " + key + ": " + l);
        pos += key.size() + 1;
        auto end = l.find(' ', pos);
        return l.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    };
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        auto kind = line.substr(0, line.find(' '));
        if (kind == "assign") {
            trace.assigned(std::stoi(field(line, "item")) - 1,
                           std::stoi(field(line, "agent")) - 1);
        } else if (kind == "cycle") {
            trace.resolved(detail::variant_from_name(field(line, "variant")),
                           detail::split_ints(field(line, "agents"), -1));
        } else if (kind == "match") {
            MatchingRound round;
            std::stringstream ss(field(line, "pairs"));
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                auto colon = tok.find(':');
                require(colon != std::string::npos, "malformed match pair: " + tok);
                round.pairs.emplace_back(std::stoi(tok.substr(0, colon)) - 1,
                                         std::stoi(tok.substr(colon + 1)) - 1);
            }
            trace.events.push_back(std::move(round));
        } else if (kind == "cake") {
            CakeAllocated ev;
            ev.agents = detail::split_ints(field(line, "agents"), -1);
            ev.prefix = detail::interval_from_text(field(line, "prefix"));
            std::stringstream ss(field(line, "pieces"));
            std::string tok;
            while (std::getline(ss, tok, ','))
                ev.pieces.push_back(detail::piece_from_text(tok));
            ev.worthless = field(line, "worthless") == "true";
            trace.events.push_back(std::move(ev));
        } else {
            throw InputError("unknown trace line: " + line);
        }
    }
    return trace;
}

} // namespace fairdiv
