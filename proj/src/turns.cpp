#include "chpot/turns.hpp"

#include <algorithm>
#include <string>

namespace chpot {

bool is_u_turn(const Graph& g, EdgeId in, EdgeId out) noexcept {
  return g.tail(in) == g.head(out) && g.head(in) == g.tail(out) && g.tail(in) != g.head(in);
}

Weight TurnModel::cost(const Graph& g, EdgeId in, EdgeId out) const {
  if (const auto it = table_.find(key(in, out)); it != table_.end()) return it->second;
  return is_u_turn(g, in, out) ? kForbidden : 0;
}

void TurnModel::validate(const Graph& g) const {
  for (const auto& [k, cost] : table_) {
    const auto in = static_cast<EdgeId>(k >> 32), out = static_cast<EdgeId>(k & 0xffffffffu);
    if (in >= g.edge_count() || out >= g.edge_count())
      throw MalformedInput("turn " + std::to_string(in) + "->" + std::to_string(out) + " references a missing edge");
    if (g.head(in) != g.tail(out))
      throw MalformedInput("turn " + std::to_string(in) + "->" + std::to_string(out) +
                           " joins edges that are not incident");
  }
}

std::vector<TurnModel::Entry> TurnModel::entries() const {
  std::vector<Entry> out;
  out.reserve(table_.size());
  for (const auto& [k, cost] : table_)
    out.push_back({static_cast<EdgeId>(k >> 32), static_cast<EdgeId>(k & 0xffffffffu), cost});
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    return a.in != b.in ? a.in < b.in : a.out < b.out;
  });
  return out;
}

TurnExpandedGraph expand_turns(const Graph& g, const TurnModel& turns) {
  turns.validate(g);
  const EdgeId m = g.edge_count();
  std::vector<EdgeId> first_out(std::size_t{m} + 1, 0);
  std::vector<NodeId> head;
  std::vector<Weight> weight;
  std::vector<Weight> turn_cost;
  std::vector<NodeId> phi(m);
  for (EdgeId in = 0; in < m; ++in) {
    const NodeId y = g.head(in);
    phi[in] = y;
    for (EdgeId out = g.begin_edge(y); out < g.end_edge(y); ++out) {
      const Weight c = turns.cost(g, in, out);
      if (c == TurnModel::kForbidden) continue;
      head.push_back(out);
      weight.push_back(sat_add(c, g.weight(out)));
      turn_cost.push_back(c);
    }
    first_out[in + 1] = static_cast<EdgeId>(head.size());
  }
  return {Graph(std::move(first_out), std::move(head), std::move(weight)), std::move(turn_cost), std::move(phi)};
}

}  // namespace chpot
