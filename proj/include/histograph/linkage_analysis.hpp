#ifndef HISTOGRAPH_LINKAGE_ANALYSIS_HPP
#define HISTOGRAPH_LINKAGE_ANALYSIS_HPP

// Co-citation and bibliographic coupling pairs, component clustering over
// either pair list, and reference levels / citation chains from one node.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "histograph/citation_network.hpp"
#include "histograph/text.hpp"

namespace histograph {

struct LinkPair {
  NodeId a = 0;  // a < b
  NodeId b = 0;
  std::size_t strength = 0;      // == witnesses.size()
  std::vector<NodeId> witnesses;  // sorted

  bool operator==(const LinkPair&) const = default;
};

enum class LinkMode {
  Cited,   // co-citation: documents linked by being cited together
  Citing,  // bibliographic coupling: documents linked by shared references
};

inline constexpr std::size_t kDefaultPairStrength = 1;
inline constexpr std::size_t kDefaultClusterStrength = 2;

namespace detail {

// For every witness, every pair inside its neighbour list gets the witness.
// Cost is proportional to the output, not to N^2.
template <typename NeighboursOf>
std::vector<LinkPair> pairs_by_witness(const CitationNetwork& net, std::size_t min_strength,
                                       NeighboursOf neighbours_of) {
  if (min_strength < 1) throw std::invalid_argument("min_strength must be at least 1");
  std::map<std::pair<NodeId, NodeId>, std::vector<NodeId>> acc;
  for (const auto& w : net.nodes) {
    const std::vector<NodeId>& list = neighbours_of(w);
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j) acc[{list[i], list[j]}].push_back(w.id);
  }
  std::vector<LinkPair> out;
  for (auto& [ab, witnesses] : acc) {
    if (witnesses.size() < min_strength) continue;
    out.push_back({ab.first, ab.second, witnesses.size(), std::move(witnesses)});
  }
  std::sort(out.begin(), out.end(), [](const LinkPair& x, const LinkPair& y) {
    if (x.strength != y.strength) return x.strength > y.strength;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  return out;
}

}  // namespace detail

/// Pairs of nodes cited together; witnesses are the nodes citing both.
inline std::vector<LinkPair> cocitations(const CitationNetwork& net,
                                         std::size_t min_strength = kDefaultPairStrength) {
  return detail::pairs_by_witness(net, min_strength,
                                  [](const Node& w) -> const std::vector<NodeId>& { return w.cited_nodes; });
}

/// Pairs of nodes sharing references; witnesses are the shared cited nodes.
inline std::vector<LinkPair> bibliographic_couplings(const CitationNetwork& net,
                                                     std::size_t min_strength = kDefaultPairStrength) {
  return detail::pairs_by_witness(net, min_strength,
                                  [](const Node& w) -> const std::vector<NodeId>& { return w.citing_nodes; });
}

inline std::vector<LinkPair> link_pairs(const CitationNetwork& net, LinkMode mode,
                                        std::size_t min_strength) {
  return mode == LinkMode::Cited ? cocitations(net, min_strength)
                                 : bibliographic_couplings(net, min_strength);
}

/// Connected components of the pair graph; singletons omitted, largest
/// first, ties by smallest member.
inline std::vector<std::vector<NodeId>> cluster(const CitationNetwork& net, LinkMode mode,
                                                std::size_t min_strength = kDefaultClusterStrength) {
  const auto pairs = link_pairs(net, mode, min_strength);
  std::vector<NodeId> parent(net.size() + 1);
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&parent](NodeId x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  };
  for (const auto& p : pairs) {
    auto ra = find(p.a);
    auto rb = find(p.b);
    if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
  }
  std::map<NodeId, std::vector<NodeId>> groups;
  for (NodeId id = 1; id <= static_cast<NodeId>(net.size()); ++id) groups[find(id)].push_back(id);
  std::vector<std::vector<NodeId>> out;
  for (auto& [_, members] : groups)
    if (members.size() > 1) out.push_back(std::move(members));
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() > y.size();
    return x.front() < y.front();
  });
  return out;
}

// ---- reference levels ------------------------------------------------------

struct LevelSet {
  NodeId origin = 0;
  // levels[k] holds the nodes first reached at reference level k; with
  // cumulative set, levels[k] is the union of levels 0..k instead.
  std::vector<std::vector<NodeId>> levels;
  bool cumulative = false;
};

/// Level 0 is what the origin cites locally; level k+1 adds what level k
/// cites, excluding the origin and anything already placed.
inline LevelSet reference_levels(const CitationNetwork& net, NodeId origin, std::size_t max_depth,
                                 bool cumulative = false) {
  if (!net.contains(origin)) throw std::out_of_range("unknown origin node " + std::to_string(origin));
  LevelSet out;
  out.origin = origin;
  out.cumulative = cumulative;
  std::vector<char> seen(net.size() + 1, 0);
  seen[static_cast<std::size_t>(origin)] = 1;
  std::vector<NodeId> frontier;
  for (auto c : net.node(origin).cited_nodes) {
    if (!seen[static_cast<std::size_t>(c)]) {
      seen[static_cast<std::size_t>(c)] = 1;
      frontier.push_back(c);
    }
  }
  for (std::size_t depth = 0; depth <= max_depth && !frontier.empty(); ++depth) {
    std::sort(frontier.begin(), frontier.end());
    out.levels.push_back(frontier);
    if (depth == max_depth) break;
    std::vector<NodeId> next;
    for (auto m : frontier) {
      for (auto c : net.node(m).cited_nodes) {
        if (seen[static_cast<std::size_t>(c)]) continue;
        seen[static_cast<std::size_t>(c)] = 1;
        next.push_back(c);
      }
    }
    frontier = std::move(next);
  }
  if (cumulative) {
    for (std::size_t k = 1; k < out.levels.size(); ++k) {
      auto merged = out.levels[k - 1];
      merged.insert(merged.end(), out.levels[k].begin(), out.levels[k].end());
      std::sort(merged.begin(), merged.end());
      out.levels[k] = std::move(merged);
    }
  }
  return out;
}

inline constexpr std::size_t kDefaultMaxPaths = 10000;

/// Every simple citation chain starting at origin, prefixes included, in
/// depth-first order. A chain has at most max_depth + 1 hops.
inline std::vector<std::vector<NodeId>> citation_paths(const CitationNetwork& net, NodeId origin,
                                                       std::size_t max_depth,
                                                       std::size_t max_paths = kDefaultMaxPaths) {
  if (!net.contains(origin)) throw std::out_of_range("unknown origin node " + std::to_string(origin));
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> chain{origin};
  std::vector<char> on_chain(net.size() + 1, 0);
  on_chain[static_cast<std::size_t>(origin)] = 1;
  auto walk = [&](auto& self, NodeId at) -> void {
    if (chain.size() > max_depth + 1) return;
    for (auto next : net.node(at).cited_nodes) {
      if (out.size() >= max_paths) return;
      if (on_chain[static_cast<std::size_t>(next)]) continue;
      chain.push_back(next);
      on_chain[static_cast<std::size_t>(next)] = 1;
      out.push_back(chain);
      self(self, next);
      on_chain[static_cast<std::size_t>(next)] = 0;
      chain.pop_back();
    }
  };
  walk(walk, origin);
  return out;
}

/// Indented tree: the origin on the first line, each cited node two spaces
/// deeper than the node whose list it was found in.
inline std::string render_paths(NodeId origin, const std::vector<std::vector<NodeId>>& paths) {
  std::string out = std::to_string(origin) + "\n";
  for (const auto& p : paths) {
    out += std::string(2 * (p.size() - 1), ' ');
    out += std::to_string(p.back());
    out += '\n';
  }
  return out;
}

/// One chain per line: "4555 -> 4167 -> 3342".
inline std::string render_chains(const std::vector<std::vector<NodeId>>& paths) {
  std::string out;
  for (const auto& p : paths) out += text::join(p, " -> ") + "\n";
  return out;
}

// ---- export ----------------------------------------------------------------

inline std::string pairs_csv(const std::vector<LinkPair>& pairs) {
  std::string out = text::csv_row({"a", "b", "strength", "witnesses"});
  for (const auto& p : pairs)
    out += text::csv_row({std::to_string(p.a), std::to_string(p.b), std::to_string(p.strength),
                          text::join(p.witnesses, " ")});
  return out;
}

inline nlohmann::json pairs_to_json(const std::vector<LinkPair>& pairs) {
  auto arr = nlohmann::json::array();
  for (const auto& p : pairs)
    arr.push_back({{"a", p.a}, {"b", p.b}, {"strength", p.strength}, {"witnesses", p.witnesses}});
  return arr;
}

inline std::string clusters_csv(const std::vector<std::vector<NodeId>>& clusters) {
  std::string out = text::csv_row({"cluster", "size", "members"});
  for (std::size_t i = 0; i < clusters.size(); ++i)
    out += text::csv_row({std::to_string(i + 1), std::to_string(clusters[i].size()),
                          text::join(clusters[i], " ")});
  return out;
}

inline nlohmann::json clusters_to_json(const std::vector<std::vector<NodeId>>& clusters) {
  auto arr = nlohmann::json::array();
  for (const auto& c : clusters) arr.push_back(c);
  return arr;
}

}  // namespace histograph

#endif  // HISTOGRAPH_LINKAGE_ANALYSIS_HPP
