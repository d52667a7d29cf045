#include "deccsp/explorer.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "deccsp/print.hpp"

namespace deccsp {

const char* completion_name(Completion c) {
    switch (c) {
        case Completion::Done: return "DONE";
        case Completion::Fault: return "FAULT";
        case Completion::Yielded: return "YIELDED";
        case Completion::Deadlock: return "DEADLOCK";
        case Completion::Truncated: return "TRUNCATED";
    }
    return "?";
}

namespace {

std::string path_str(const std::vector<Label>& labels) {
    if (labels.empty()) return "⟨⟩";
    std::string out = "⟨";
    for (size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ",";
        out += labels[i].str();
    }
    return out + "⟩";
}

Completion completion_of(const std::vector<Label>& labels) {
    if (!labels.empty() && labels.back().is_terminal()) {
        switch (labels.back().term) {
            case TerminalEvent::Done: return Completion::Done;
            case TerminalEvent::Fault: return Completion::Fault;
            case TerminalEvent::Yield: return Completion::Yielded;
        }
    }
    return Completion::Deadlock;
}

}  // namespace

Lts build_lts(const Configuration& init, const ModelDefinition& model,
              const EngineOptions& opts, const Bounds& bounds) {
    Lts lts;
    std::unordered_map<Configuration, int, ConfigHash, ConfigEq> index;

    lts.states.push_back(init);
    lts.out.emplace_back();
    lts.depth.push_back(0);
    index.emplace(init, 0);

    std::vector<int> parent_edge(1, -1);
    std::deque<int> frontier{0};

    auto path_to = [&](int state) {
        std::vector<Label> labels;
        for (int e = parent_edge[state]; e >= 0; e = parent_edge[lts.edges[e].src])
            labels.push_back(lts.edges[e].label);
        std::reverse(labels.begin(), labels.end());
        return labels;
    };

    while (!frontier.empty()) {
        int cur = frontier.front();
        frontier.pop_front();
        if (lts.depth[cur] >= bounds.max_depth) {
            lts.truncated.insert(cur);
            continue;
        }
        std::vector<Transition> succs;
        try {
            succs = step(lts.states[cur], model, opts);
        } catch (const SemanticsError& e) {
            throw ExplorerError(path_str(path_to(cur)), e.what());
        }
        for (auto& t : succs) {
            int dst;
            if (auto it = index.find(t.target); it != index.end()) {
                dst = it->second;
            } else {
                if (static_cast<long>(lts.states.size()) >= bounds.max_states) {
                    lts.truncated.insert(cur);
                    continue;
                }
                dst = static_cast<int>(lts.states.size());
                lts.states.push_back(t.target);
                lts.out.emplace_back();
                lts.depth.push_back(lts.depth[cur] + 1);
                parent_edge.push_back(static_cast<int>(lts.edges.size()));
                index.emplace(t.target, dst);
                frontier.push_back(dst);
            }
            lts.out[cur].push_back(static_cast<int>(lts.edges.size()));
            lts.edges.push_back({cur, t.label, t.rule, dst});
        }
    }
    return lts;
}

std::string Trace::str(bool elide_tau) const {
    std::string out;
    for (const auto& l : labels) {
        if (elide_tau && l.is_tau()) continue;
        if (!out.empty()) out += ' ';
        out += l.str();
    }
    if (out.empty()) out = "⟨⟩";
    out += ' ';
    out += completion_name(completion);
    return out;
}

namespace {

struct TraceSearch {
    const ModelDefinition& model;
    const EngineOptions& opts;
    const Bounds& bounds;
    std::set<Trace> found;
    bool capped = false;

    void add(Trace t) {
        if (static_cast<long>(found.size()) >= bounds.max_traces) {
            capped = true;
            return;
        }
        found.insert(std::move(t));
    }

    void walk(const Configuration& c, std::vector<Label>& labels, int depth_left) {
        if (capped) return;
        std::vector<Transition> succs;
        try {
            succs = step(c, model, opts);
        } catch (const SemanticsError& e) {
            throw ExplorerError(path_str(labels), e.what());
        }
        if (succs.empty()) {
            add(Trace{labels, completion_of(labels)});
            return;
        }
        if (depth_left == 0) {
            add(Trace{labels, Completion::Truncated});
            return;
        }
        for (const auto& t : succs) {
            labels.push_back(t.label);
            walk(t.target, labels, depth_left - 1);
            labels.pop_back();
            if (capped) return;
        }
    }
};

}  // namespace

std::vector<Trace> traces(const Configuration& init, const ModelDefinition& model,
                          const EngineOptions& opts, const Bounds& bounds) {
    TraceSearch search{model, opts, bounds};
    std::vector<Label> labels;
    search.walk(init, labels, bounds.max_depth);
    return std::vector<Trace>(search.found.begin(), search.found.end());
}

std::vector<Deadlock> find_deadlocks(const Lts& lts) {
    // Shortest witness paths by BFS over the built graph.
    std::vector<int> parent_edge(lts.states.size(), -1);
    std::vector<bool> seen(lts.states.size(), false);
    std::deque<int> queue{lts.initial};
    seen[lts.initial] = true;
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (int e : lts.out[cur]) {
            int dst = lts.edges[e].dst;
            if (!seen[dst]) {
                seen[dst] = true;
                parent_edge[dst] = e;
                queue.push_back(dst);
            }
        }
    }

    std::vector<Deadlock> out;
    for (size_t s = 0; s < lts.states.size(); ++s) {
        int state = static_cast<int>(s);
        if (!lts.out[state].empty() || lts.truncated.count(state)) continue;
        bool completion = false;
        bool initial = state == lts.initial;
        bool reached_nonterminal = false;
        for (const auto& e : lts.edges) {
            if (e.dst != state) continue;
            if (e.label.is_terminal())
                completion = true;
            else
                reached_nonterminal = true;
        }
        if (!initial && completion && !reached_nonterminal) continue;
        Deadlock d;
        d.state = state;
        for (int e = parent_edge[state]; e >= 0; e = parent_edge[lts.edges[e].src])
            d.witness.push_back(lts.edges[e].label);
        std::reverse(d.witness.begin(), d.witness.end());
        out.push_back(std::move(d));
    }
    return out;
}

namespace {

bool is_block_end(const char* rule) {
    return std::strcmp(rule, "block-fault") == 0 || std::strcmp(rule, "block-yield") == 0;
}

struct CompSearch {
    const ModelDefinition& model;
    const EngineOptions& opts;
    const Bounds& bounds;
    std::set<CompensationTrace> found;
    bool capped = false;

    void walk(const Configuration& c, std::vector<Label>& labels, int block_end,
              int depth_left) {
        if (capped) return;
        std::vector<Transition> succs;
        try {
            succs = step(c, model, opts);
        } catch (const SemanticsError& e) {
            throw ExplorerError(path_str(labels), e.what());
        }
        bool ended = succs.empty() || depth_left == 0;
        if (ended) {
            if (block_end >= 0) {
                CompensationTrace ct;
                ct.prefix.assign(labels.begin(), labels.begin() + block_end + 1);
                for (size_t i = block_end + 1; i < labels.size(); ++i)
                    if (labels[i].is_observable()) ct.phase.push_back(labels[i]);
                ct.completion =
                    succs.empty() ? completion_of(labels) : Completion::Truncated;
                if (static_cast<long>(found.size()) >= bounds.max_traces)
                    capped = true;
                else
                    found.insert(std::move(ct));
            }
            return;
        }
        for (const auto& t : succs) {
            labels.push_back(t.label);
            int be = block_end;
            if (be < 0 && is_block_end(t.rule)) be = static_cast<int>(labels.size()) - 1;
            walk(t.target, labels, be, depth_left - 1);
            labels.pop_back();
            if (capped) return;
        }
    }
};

}  // namespace

std::vector<CompensationTrace> compensation_traces(const Configuration& init,
                                                   const ModelDefinition& model,
                                                   const EngineOptions& opts,
                                                   const Bounds& bounds) {
    CompSearch search{model, opts, bounds};
    std::vector<Label> labels;
    search.walk(init, labels, -1, bounds.max_depth);
    return std::vector<CompensationTrace>(search.found.begin(), search.found.end());
}

std::string serialize_lts(const Lts& lts) {
    std::ostringstream out;
    out << "initial " << lts.initial << "\n";
    out << "states " << lts.states.size() << "\n";
    out << "transitions " << lts.edges.size() << "\n";
    if (!lts.truncated.empty()) {
        out << "truncated";
        for (int s : lts.truncated) out << " " << s;
        out << "\n";
    }
    for (size_t i = 0; i < lts.states.size(); ++i) {
        out << "state " << i << " | " << print_config(lts.states[i]) << "\n";
    }
    std::vector<const LtsEdge*> sorted;
    sorted.reserve(lts.edges.size());
    for (const auto& e : lts.edges) sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(), [](const LtsEdge* a, const LtsEdge* b) {
        if (a->src != b->src) return a->src < b->src;
        if (a->label != b->label) return a->label < b->label;
        int c = std::strcmp(a->rule, b->rule);
        if (c != 0) return c < 0;
        return a->dst < b->dst;
    });
    for (const auto* e : sorted) {
        out << "trans " << e->src << " | " << e->label.str() << " | " << e->rule << " | "
            << e->dst << "\n";
    }
    return out.str();
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string lts_to_dot(const Lts& lts) {
    std::ostringstream out;
    out << "digraph lts {\n  rankdir=LR;\n  node [shape=circle, fontsize=10];\n";
    // Completion states: dead ends reached by a terminal transition.
    std::set<int> completed;
    for (const auto& e : lts.edges) {
        if (e.label.is_terminal() && lts.out[e.dst].empty()) completed.insert(e.dst);
    }
    for (size_t i = 0; i < lts.states.size(); ++i) {
        out << "  " << i << " [label=\"" << i << "\"";
        if (static_cast<int>(i) == lts.initial) out << ", shape=doublecircle";
        if (completed.count(static_cast<int>(i))) out << ", style=filled, fillcolor=gray85";
        if (lts.truncated.count(static_cast<int>(i)))
            out << ", style=dashed";
        out << ", tooltip=\"" << dot_escape(print_config(lts.states[i])) << "\"];\n";
    }
    for (const auto& e : lts.edges) {
        out << "  " << e.src << " -> " << e.dst << " [label=\"" << dot_escape(e.label.str())
            << " (" << e.rule << ")\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string lts_to_json(const Lts& lts) {
    nlohmann::json j;
    j["initial"] = lts.initial;
    j["truncated"] = lts.truncated;
    auto& states = j["states"] = nlohmann::json::array();
    for (size_t i = 0; i < lts.states.size(); ++i) {
        nlohmann::json s;
        s["id"] = i;
        s["proc"] = print_term(lts.states[i].proc);
        nlohmann::json sigma = nlohmann::json::object();
        for (const auto& [k, v] : lts.states[i].sigma) sigma[k] = v;
        s["sigma"] = std::move(sigma);
        nlohmann::json rho = nlohmann::json::object();
        for (const auto& [k, v] : lts.states[i].rho) rho[k] = print_proc(v);
        s["rho"] = std::move(rho);
        states.push_back(std::move(s));
    }
    auto& trans = j["transitions"] = nlohmann::json::array();
    std::vector<const LtsEdge*> sorted;
    for (const auto& e : lts.edges) sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(), [](const LtsEdge* a, const LtsEdge* b) {
        if (a->src != b->src) return a->src < b->src;
        if (a->label != b->label) return a->label < b->label;
        int c = std::strcmp(a->rule, b->rule);
        if (c != 0) return c < 0;
        return a->dst < b->dst;
    });
    for (const auto* e : sorted) {
        trans.push_back({{"src", e->src},
                         {"label", e->label.str()},
                         {"rule", e->rule},
                         {"dst", e->dst}});
    }
    return j.dump(2) + "\n";
}

std::string traces_to_json(const std::vector<Trace>& ts, bool elide_tau) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& t : ts) {
        nlohmann::json labels = nlohmann::json::array();
        for (const auto& l : t.labels) {
            if (elide_tau && l.is_tau()) continue;
            labels.push_back(l.str());
        }
        j.push_back({{"labels", std::move(labels)},
                     {"completion", completion_name(t.completion)}});
    }
    return j.dump(2) + "\n";
}

}  // namespace deccsp
