#include "flowsched/maxflow.hpp"

#include <gmpxx.h>

#include <queue>
#include <stdexcept>

namespace flowsched {

int FlowGraph::add_arc(int tail, int head, Rational capacity) {
    if (tail < 0 || tail >= node_count || head < 0 || head >= node_count)
        throw std::invalid_argument("arc endpoint out of range");
    if (capacity < Rational(0)) throw std::invalid_argument("negative arc capacity");
    arcs.push_back({tail, head, std::move(capacity)});
    return static_cast<int>(arcs.size()) - 1;
}

namespace {

// Dinic over integer capacities.
struct Dinic {
    struct Edge {
        int to;
        mpz_class cap;
        int rev;
    };
    std::vector<std::vector<Edge>> adj;
    std::vector<int> level, iter;

    explicit Dinic(int n) : adj(n), level(n), iter(n) {}

    void add_edge(int from, int to, const mpz_class& cap) {
        adj[from].push_back({to, cap, static_cast<int>(adj[to].size())});
        adj[to].push_back({from, 0, static_cast<int>(adj[from].size()) - 1});
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (const Edge& e : adj[v]) {
                if (e.cap > 0 && level[e.to] < 0) {
                    level[e.to] = level[v] + 1;
                    q.push(e.to);
                }
            }
        }
        return level[t] >= 0;
    }

    mpz_class dfs(int v, int t, const mpz_class& pushed) {
        if (v == t) return pushed;
        for (int& i = iter[v]; i < static_cast<int>(adj[v].size()); ++i) {
            Edge& e = adj[v][i];
            if (e.cap > 0 && level[v] < level[e.to]) {
                const mpz_class d = dfs(e.to, t, pushed < e.cap ? pushed : e.cap);
                if (d > 0) {
                    e.cap -= d;
                    adj[e.to][e.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    mpz_class run(int s, int t, const mpz_class& infinity) {
        mpz_class total = 0;
        while (bfs(s, t)) {
            std::fill(iter.begin(), iter.end(), 0);
            for (;;) {
                const mpz_class f = dfs(s, t, infinity);
                if (f == 0) break;
                total += f;
            }
        }
        return total;
    }
};

}  // namespace

MaxFlowResult max_flow(const FlowGraph& graph, int source, int sink) {
    if (source == sink) throw std::invalid_argument("max_flow: source equals sink");
    if (source < 0 || source >= graph.node_count || sink < 0 || sink >= graph.node_count)
        throw std::invalid_argument("max_flow: terminal out of range");

    mpz_class scale = 1;
    for (const auto& a : graph.arcs)
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a.capacity.denominator().get_mpz_t());

    Dinic dinic(graph.node_count);
    mpz_class infinity = 1;
    std::vector<mpz_class> caps(graph.arcs.size());
    for (std::size_t i = 0; i < graph.arcs.size(); ++i) {
        const auto& a = graph.arcs[i];
        caps[i] = a.capacity.numerator() * (scale / a.capacity.denominator());
        infinity += caps[i];
        dinic.add_edge(a.tail, a.head, caps[i]);
    }

    const mpz_class value_int = dinic.run(source, sink, infinity);

    MaxFlowResult result;
    result.value = Rational(mpq_class(value_int, scale));
    result.flow.resize(graph.arcs.size());
    // Recover per-arc flow = cap - residual. Replay add_edge's slot layout
    // (one forward slot in adj[tail], one reverse slot in adj[head] per arc).
    {
        std::vector<std::size_t> fwd_index(graph.arcs.size());
        std::vector<int> fill(graph.node_count, 0);
        for (std::size_t i = 0; i < graph.arcs.size(); ++i) {
            const auto& a = graph.arcs[i];
            fwd_index[i] = static_cast<std::size_t>(fill[a.tail]);
            fill[a.tail] += 1;
            fill[a.head] += 1;
        }
        for (std::size_t i = 0; i < graph.arcs.size(); ++i) {
            const auto& a = graph.arcs[i];
            const auto& e = dinic.adj[a.tail][fwd_index[i]];
            result.flow[i] = Rational(mpq_class(caps[i] - e.cap, scale));
        }
    }

    // Min-cut certificate: nodes reachable from the source in the residual graph.
    result.source_side.assign(graph.node_count, false);
    {
        std::queue<int> q;
        q.push(source);
        result.source_side[source] = true;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (const auto& e : dinic.adj[v]) {
                if (e.cap > 0 && !result.source_side[e.to]) {
                    result.source_side[e.to] = true;
                    q.push(e.to);
                }
            }
        }
    }
    result.cut_capacity = Rational(0);
    for (const auto& a : graph.arcs)
        if (result.source_side[a.tail] && !result.source_side[a.head])
            result.cut_capacity += a.capacity;
    return result;
}

}  // namespace flowsched
