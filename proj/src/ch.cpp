#include "chpot/ch.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>
#include <queue>
#include <type_traits>
#include <utility>

namespace chpot {

namespace {

struct Neighbour {
  NodeId node;
  ArcId arc;
};

// Mutable remaining graph during contraction.
class Contractor {
 public:
  Contractor(const Graph& g, const ContractionConfig& config)
      : config_(config),
        n_(g.node_count()),
        out_(n_),
        in_(n_),
        contracted_(n_, false),
        contracted_neighbours_(n_, 0),
        level_(n_, 0),
        rank_(n_, 0),
        witness_dist_(n_, kInfWeight),
        witness_hops_(n_, 0),
        witness_queue_(n_) {
    // Collapse parallel edges to the lightest one; self-loops never lie on shortest paths.
    std::vector<EdgeId> edges;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (g.tail(e) != g.head(e)) edges.push_back(e);
    std::stable_sort(edges.begin(), edges.end(), [&](EdgeId a, EdgeId b) {
      if (g.tail(a) != g.tail(b)) return g.tail(a) < g.tail(b);
      if (g.head(a) != g.head(b)) return g.head(a) < g.head(b);
      return g.weight(a) < g.weight(b);
    });
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const EdgeId e = edges[i];
      if (i > 0 && g.tail(edges[i - 1]) == g.tail(e) && g.head(edges[i - 1]) == g.head(e)) continue;
      add_arc({g.tail(e), g.head(e), g.weight(e), kNoArc, kNoArc, e});
    }
  }

  void contract_in_order(std::span<const NodeId> order) {
    if (order.size() != n_) throw MalformedInput("contraction order must list every node once");
    std::vector<bool> seen(n_, false);
    for (NodeId v : order) {
      if (v >= n_ || seen[v]) throw MalformedInput("contraction order is not a permutation");
      seen[v] = true;
    }
    for (NodeId v : order) contract(v);
  }

  void contract_by_priority() {
    using Entry = std::pair<std::int64_t, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    for (NodeId v = 0; v < n_; ++v) queue.push({priority(v), v});
    while (!queue.empty()) {
      const NodeId v = queue.top().second;
      queue.pop();
      const Entry updated{priority(v), v};
      if (!queue.empty() && queue.top() < updated) {
        queue.push(updated);
        continue;
      }
      contract(v);
    }
  }

  ContractionHierarchy finish() &&;

 private:
  void add_arc(const ChArc& arc) {
    const auto id = static_cast<ArcId>(arcs_.size());
    arcs_.push_back(arc);
    out_[arc.tail].push_back({arc.head, id});
    in_[arc.head].push_back({arc.tail, id});
  }

  // Inserts u->w unless an arc at least as light exists; replaces a heavier one.
  void add_shortcut(NodeId u, NodeId w, Weight weight, ArcId first, ArcId second) {
    for (Neighbour& nb : out_[u]) {
      if (nb.node != w) continue;
      if (arcs_[nb.arc].weight <= weight) return;
      const auto id = static_cast<ArcId>(arcs_.size());
      arcs_.push_back({u, w, weight, first, second, kInvalidEdge});
      for (Neighbour& back : in_[w])
        if (back.node == u) back.arc = id;
      nb.arc = id;
      return;
    }
    add_arc({u, w, weight, first, second, kInvalidEdge});
  }

  // Bounded Dijkstra from source in the remaining graph, never entering `skip`.
  void witness_search(NodeId source, NodeId skip, Weight limit) {
    for (NodeId x : witness_touched_) witness_dist_[x] = kInfWeight;
    witness_touched_.clear();
    witness_queue_.clear();

    witness_dist_[source] = 0;
    witness_hops_[source] = 0;
    witness_touched_.push_back(source);
    witness_queue_.push(source, 0);
    std::uint32_t settled = 0;
    while (!witness_queue_.empty()) {
      const auto [x, d] = witness_queue_.pop();
      if (d > limit || ++settled > config_.witness_settle_limit) break;
      if (witness_hops_[x] >= config_.witness_hop_limit) continue;
      for (const Neighbour& nb : out_[x]) {
        if (nb.node == skip) continue;
        const Weight nd = sat_add(d, arcs_[nb.arc].weight);
        if (nd < witness_dist_[nb.node]) {
          if (witness_dist_[nb.node] == kInfWeight) witness_touched_.push_back(nb.node);
          witness_dist_[nb.node] = nd;
          witness_hops_[nb.node] = witness_hops_[x] + 1;
          witness_queue_.push_or_decrease(nb.node, nd);
        }
      }
    }
  }

  // Calls emit(u, w, weight, in_arc, out_arc) for every shortcut contracting v would need.
  template <class Emit>
  void needed_shortcuts(NodeId v, Emit&& emit) {
    if (out_[v].empty()) return;
    for (std::size_t i = 0; i < in_[v].size(); ++i) {
      const Neighbour in = in_[v][i];
      const Weight to_v = arcs_[in.arc].weight;
      Weight limit = 0;
      for (const Neighbour& out : out_[v])
        if (out.node != in.node) limit = std::max(limit, sat_add(to_v, arcs_[out.arc].weight));
      witness_search(in.node, v, limit);
      for (std::size_t j = 0; j < out_[v].size(); ++j) {
        const Neighbour out = out_[v][j];
        if (out.node == in.node) continue;
        const Weight via = sat_add(to_v, arcs_[out.arc].weight);
        if (witness_dist_[out.node] <= via) continue;
        emit(in.node, out.node, via, in.arc, out.arc);
      }
    }
  }

  std::int64_t priority(NodeId v) {
    std::int64_t shortcuts = 0;
    needed_shortcuts(v, [&](NodeId, NodeId, Weight, ArcId, ArcId) { ++shortcuts; });
    const auto removed = static_cast<std::int64_t>(in_[v].size() + out_[v].size());
    return shortcuts - removed + contracted_neighbours_[v];
  }

  void contract(NodeId v) {
    std::vector<std::tuple<NodeId, NodeId, Weight, ArcId, ArcId>> shortcuts;
    needed_shortcuts(v, [&](NodeId u, NodeId w, Weight weight, ArcId a, ArcId b) {
      shortcuts.emplace_back(u, w, weight, a, b);
    });

    for (const Neighbour& nb : out_[v]) up_arcs_.push_back(nb.arc);
    for (const Neighbour& nb : in_[v]) down_arcs_.push_back(nb.arc);

    auto detach = [v](std::vector<Neighbour>& list) {
      std::erase_if(list, [v](const Neighbour& nb) { return nb.node == v; });
    };
    for (const Neighbour& nb : out_[v]) {
      detach(in_[nb.node]);
      touch_neighbour(v, nb.node);
    }
    for (const Neighbour& nb : in_[v]) {
      detach(out_[nb.node]);
      touch_neighbour(v, nb.node);
    }
    out_[v].clear();
    in_[v].clear();
    contracted_[v] = true;
    rank_[v] = next_rank_++;

    for (const auto& [u, w, weight, a, b] : shortcuts) add_shortcut(u, w, weight, a, b);
  }

  void touch_neighbour(NodeId v, NodeId nb) {
    ++contracted_neighbours_[nb];
    level_[nb] = std::max(level_[nb], level_[v] + 1);
  }

  ContractionConfig config_;
  NodeId n_;
  std::vector<ChArc> arcs_;
  std::vector<std::vector<Neighbour>> out_;
  std::vector<std::vector<Neighbour>> in_;
  std::vector<bool> contracted_;
  std::vector<std::int64_t> contracted_neighbours_;
  std::vector<std::uint32_t> level_;
  std::vector<std::uint32_t> rank_;
  std::uint32_t next_rank_ = 0;
  std::vector<ArcId> up_arcs_;
  std::vector<ArcId> down_arcs_;

  std::vector<Weight> witness_dist_;
  std::vector<std::uint32_t> witness_hops_;
  std::vector<NodeId> witness_touched_;
  MinIdHeap witness_queue_;
};

// Groups arcs by `key` node; payload follows its arc.
Graph group_arcs(NodeId n, const std::vector<ChArc>& arcs, const std::vector<ArcId>& ids, bool by_head,
                 std::vector<ArcId>& payload) {
  std::vector<EdgeId> first_out(std::size_t{n} + 1, 0);
  for (ArcId a : ids) ++first_out[(by_head ? arcs[a].head : arcs[a].tail) + 1];
  for (NodeId x = 0; x < n; ++x) first_out[x + 1] += first_out[x];
  std::vector<NodeId> head(ids.size());
  std::vector<Weight> weight(ids.size());
  payload.assign(ids.size(), kNoArc);
  std::vector<EdgeId> next(first_out.begin(), first_out.end() - 1);
  for (ArcId a : ids) {
    const EdgeId e = next[by_head ? arcs[a].head : arcs[a].tail]++;
    head[e] = by_head ? arcs[a].tail : arcs[a].head;
    weight[e] = arcs[a].weight;
    payload[e] = a;
  }
  return Graph(std::move(first_out), std::move(head), std::move(weight));
}

void finalize_order(ContractionHierarchy& ch) {
  const NodeId n = ch.node_count();
  ch.order.assign(n, 0);
  for (NodeId x = 0; x < n; ++x) ch.order[ch.rank[x]] = x;
  ch.level_sweep.resize(n);
  std::iota(ch.level_sweep.begin(), ch.level_sweep.end(), NodeId{0});
  std::stable_sort(ch.level_sweep.begin(), ch.level_sweep.end(),
                   [&](NodeId a, NodeId b) { return ch.level[a] > ch.level[b]; });
}

ContractionHierarchy Contractor::finish() && {
  ContractionHierarchy ch;
  ch.rank = std::move(rank_);
  ch.level = std::move(level_);
  std::sort(up_arcs_.begin(), up_arcs_.end());
  std::sort(down_arcs_.begin(), down_arcs_.end());
  ch.up = group_arcs(n_, arcs_, up_arcs_, false, ch.up_arc);
  ch.down_reversed = group_arcs(n_, arcs_, down_arcs_, true, ch.down_arc);
  ch.arcs = std::move(arcs_);
  finalize_order(ch);
  return ch;
}

template <class T>
void write_vector(std::ostream& out, const std::vector<T>& v) {
  static_assert(std::is_trivially_copyable_v<T>);
  const std::uint64_t size = v.size();
  out.write(reinterpret_cast<const char*>(&size), sizeof size);
  out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(size * sizeof(T)));
}

template <class T>
std::vector<T> read_vector(std::istream& in) {
  std::uint64_t size = 0;
  if (!in.read(reinterpret_cast<char*>(&size), sizeof size)) throw ParseError(0, "truncated hierarchy file");
  if (size > (std::uint64_t{1} << 36) / sizeof(T)) throw ParseError(0, "corrupt hierarchy file");
  std::vector<T> v(size);
  if (!in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(size * sizeof(T))))
    throw ParseError(0, "truncated hierarchy file");
  return v;
}

void write_graph(std::ostream& out, const Graph& g) {
  write_vector(out, std::vector<EdgeId>(g.first_out().begin(), g.first_out().end()));
  write_vector(out, std::vector<NodeId>(g.heads().begin(), g.heads().end()));
  write_vector(out, std::vector<Weight>(g.weights().begin(), g.weights().end()));
}

Graph read_graph(std::istream& in) {
  auto first_out = read_vector<EdgeId>(in);
  auto head = read_vector<NodeId>(in);
  auto weight = read_vector<Weight>(in);
  try {
    return Graph(std::move(first_out), std::move(head), std::move(weight));
  } catch (const MalformedInput& e) {
    throw ParseError(0, std::string("corrupt hierarchy graph: ") + e.what());
  }
}

constexpr char kMagic[8] = {'C', 'H', 'P', 'O', 'T', 'C', 'H', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

}  // namespace

std::vector<Arc> ContractionHierarchy::down_edges() const {
  std::vector<Arc> out;
  for (EdgeId e = 0; e < down_reversed.edge_count(); ++e)
    out.push_back({down_reversed.head(e), down_reversed.tail(e), down_reversed.weight(e), kTagNone});
  return out;
}

ContractionHierarchy build_ch(const Graph& g, const ContractionConfig& config) {
  Contractor contractor(g, config);
  contractor.contract_by_priority();
  return std::move(contractor).finish();
}

ContractionHierarchy build_ch(const Graph& g, std::span<const NodeId> order, const ContractionConfig& config) {
  Contractor contractor(g, config);
  contractor.contract_in_order(order);
  return std::move(contractor).finish();
}

std::vector<EdgeId> unpack_arc(const ContractionHierarchy& ch, ArcId arc) {
  std::vector<EdgeId> path;
  std::vector<ArcId> stack{arc};
  while (!stack.empty()) {
    const ChArc& a = ch.arcs[stack.back()];
    stack.pop_back();
    if (a.is_shortcut()) {
      stack.push_back(a.second);
      stack.push_back(a.first);
    } else {
      path.push_back(a.original);
    }
  }
  return path;
}

void save_ch(const ContractionHierarchy& ch, std::ostream& out) {
  out.write(kMagic, sizeof kMagic);
  out.write(reinterpret_cast<const char*>(&kFormatVersion), sizeof kFormatVersion);
  write_vector(out, ch.rank);
  write_vector(out, ch.level);
  write_vector(out, ch.arcs);
  write_graph(out, ch.up);
  write_vector(out, ch.up_arc);
  write_graph(out, ch.down_reversed);
  write_vector(out, ch.down_arc);
}

ContractionHierarchy load_ch(std::istream& in) {
  char magic[sizeof kMagic];
  std::uint32_t version = 0;
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw ParseError(0, "not a hierarchy file (bad magic number)");
  if (!in.read(reinterpret_cast<char*>(&version), sizeof version) || version != kFormatVersion)
    throw ParseError(0, "unsupported hierarchy format version " + std::to_string(version));
  ContractionHierarchy ch;
  ch.rank = read_vector<std::uint32_t>(in);
  ch.level = read_vector<std::uint32_t>(in);
  ch.arcs = read_vector<ChArc>(in);
  ch.up = read_graph(in);
  ch.up_arc = read_vector<ArcId>(in);
  ch.down_reversed = read_graph(in);
  ch.down_arc = read_vector<ArcId>(in);
  const NodeId n = ch.node_count();
  if (ch.level.size() != n || ch.up.node_count() != n || ch.down_reversed.node_count() != n ||
      ch.up_arc.size() != ch.up.edge_count() || ch.down_arc.size() != ch.down_reversed.edge_count())
    throw ParseError(0, "inconsistent hierarchy file");
  for (std::uint32_t r : ch.rank)
    if (r >= n) throw ParseError(0, "inconsistent hierarchy file");
  finalize_order(ch);
  return ch;
}

void save_ch(const ContractionHierarchy& ch, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(0, "cannot open " + path + " for writing");
  save_ch(ch, out);
  if (!out) throw ParseError(0, "write to " + path + " failed");
}

ContractionHierarchy load_ch(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path);
  return load_ch(in);
}

ChQuery::ChQuery(const ContractionHierarchy& ch) : ch_(&ch) {
  for (Side* side : {&forward_, &backward_}) {
    side->dist.assign(ch.node_count(), kInfWeight);
    side->queue.resize(ch.node_count());
  }
}

void ChQuery::reset(Side& side) {
  for (NodeId x : side.touched) side.dist[x] = kInfWeight;
  side.touched.clear();
  side.queue.clear();
}

Weight ChQuery::distance(NodeId s, NodeId t) {
  if (s == t) return 0;
  reset(forward_);
  reset(backward_);

  auto run = [](Side& side, const Graph& g, NodeId start, Weight& best, const std::vector<Weight>& other) {
    side.dist[start] = 0;
    side.touched.push_back(start);
    side.queue.push(start, 0);
    while (!side.queue.empty() && side.queue.top_key() < best) {
      const auto [x, d] = side.queue.pop();
      best = std::min(best, sat_add(d, other[x]));
      for (EdgeId e = g.begin_edge(x); e < g.end_edge(x); ++e) {
        const NodeId y = g.head(e);
        const Weight nd = sat_add(d, g.weight(e));
        if (nd < side.dist[y]) {
          if (side.dist[y] == kInfWeight) side.touched.push_back(y);
          side.dist[y] = nd;
          side.queue.push_or_decrease(y, nd);
        }
      }
    }
  };

  Weight best = kInfWeight;
  run(forward_, ch_->up, s, best, backward_.dist);
  run(backward_, ch_->down_reversed, t, best, forward_.dist);
  return best;
}

Weight ch_query(const ContractionHierarchy& ch, NodeId s, NodeId t) {
  ChQuery query(ch);
  return query.distance(s, t);
}

}  // namespace chpot
