#include "opengame/free_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "opengame/error.hpp"

namespace opengame {

GroupWord reduce_word(const GroupWord& w) {
  GroupWord out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back().generator == l.generator && out.back().exponent == -l.exponent) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

bool is_reduced(const GroupWord& w) { return reduce_word(w).size() == w.size(); }

GroupWord inverse(const GroupWord& w) {
  GroupWord out(w.rbegin(), w.rend());
  for (auto& l : out) l.exponent = -l.exponent;
  return out;
}

GroupWord multiply(const GroupWord& u, const GroupWord& v) {
  GroupWord out = u;
  out.insert(out.end(), v.begin(), v.end());
  return reduce_word(out);
}

GroupWord parse_word(std::string_view text) {
  GroupWord out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c >= 'a' && c <= 'z') {
      out.push_back({static_cast<std::uint32_t>(c - 'a'), 1});
    } else if (c >= 'A' && c <= 'Z') {
      out.push_back({static_cast<std::uint32_t>(c - 'A'), -1});
    } else {
      throw std::invalid_argument("unexpected character '" + std::string(1, c) + "' at offset " +
                                  std::to_string(i) + " in word \"" + std::string(text) + "\"");
    }
  }
  return out;
}

std::string format_word(const GroupWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const Letter& l : w) {
    if (l.generator >= 26) throw std::invalid_argument("generator index too large to print");
    out.push_back(static_cast<char>((l.exponent > 0 ? 'a' : 'A') + l.generator));
  }
  return out;
}

std::vector<GroupWord> parse_generators(std::string_view text) {
  std::vector<GroupWord> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    if (piece.empty()) {
      throw std::invalid_argument("empty generator at offset " + std::to_string(start));
    }
    out.push_back(parse_word(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

GroupWord word_from_position(const Position& p) {
  GroupWord out;
  for (Symbol s : p.symbols()) out.push_back({s, 1});
  return out;
}

LabeledGraph::LabeledGraph(std::uint32_t vertex_count, std::vector<Edge> edges, std::uint32_t basepoint)
    : vertex_count_(vertex_count), edges_(std::move(edges)), basepoint_(basepoint) {
  if (basepoint_ >= vertex_count_) throw std::invalid_argument("basepoint outside the vertex set");
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const Edge& e : edges_) {
    if (e.source >= vertex_count_ || e.target >= vertex_count_) {
      throw std::invalid_argument("edge endpoint outside the vertex set");
    }
    if (!out_.emplace(std::make_pair(e.source, e.label), e.target).second) deterministic_ = false;
    if (!in_.emplace(std::make_pair(e.target, e.label), e.source).second) deterministic_ = false;
  }
}

std::optional<std::uint32_t> LabeledGraph::out(std::uint32_t v, std::uint32_t label) const {
  auto it = out_.find({v, label});
  if (it == out_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> LabeledGraph::in(std::uint32_t v, std::uint32_t label) const {
  auto it = in_.find({v, label});
  if (it == in_.end()) return std::nullopt;
  return it->second;
}

bool LabeledGraph::is_complete(std::uint32_t k) const {
  for (std::uint32_t v = 0; v < vertex_count_; ++v) {
    for (std::uint32_t l = 0; l < k; ++l) {
      if (!out(v, l) || !in(v, l)) return false;
    }
  }
  return true;
}

std::optional<std::uint32_t> LabeledGraph::walk(const GroupWord& w, std::uint32_t from) const {
  std::uint32_t v = from;
  for (const Letter& l : w) {
    auto next = l.exponent > 0 ? out(v, l.generator) : in(v, l.generator);
    if (!next) return std::nullopt;
    v = *next;
  }
  return v;
}

std::string LabeledGraph::to_dot() const {
  std::ostringstream os;
  os << "digraph core {\n";
  for (std::uint32_t v = 0; v < vertex_count_; ++v) {
    os << "  v" << v << (v == basepoint_ ? " [shape=doublecircle]" : " [shape=circle]") << ";\n";
  }
  for (const Edge& e : edges_) {
    std::string label = e.label < 26 ? std::string(1, static_cast<char>('a' + e.label))
                                     : std::to_string(e.label);
    os << "  v" << e.source << " -> v" << e.target << " [label=\"" << label << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

bool isomorphic(const LabeledGraph& g, const LabeledGraph& h) {
  if (g.vertex_count() != h.vertex_count() || g.edges().size() != h.edges().size()) return false;
  if (!g.is_deterministic() || !h.is_deterministic()) {
    throw std::invalid_argument("isomorphism check needs deterministic graphs");
  }
  std::set<std::uint32_t> labels;
  for (const Edge& e : g.edges()) labels.insert(e.label);
  for (const Edge& e : h.edges()) labels.insert(e.label);

  std::vector<std::optional<std::uint32_t>> map(g.vertex_count()), back(h.vertex_count());
  std::deque<std::uint32_t> queue{g.basepoint()};
  map[g.basepoint()] = h.basepoint();
  back[h.basepoint()] = g.basepoint();
  auto link = [&](std::optional<std::uint32_t> a, std::optional<std::uint32_t> b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    if (map[*a]) return *map[*a] == *b;
    if (back[*b]) return false;
    map[*a] = *b;
    back[*b] = *a;
    queue.push_back(*a);
    return true;
  };
  while (!queue.empty()) {
    std::uint32_t u = queue.front();
    queue.pop_front();
    std::uint32_t v = *map[u];
    for (std::uint32_t l : labels) {
      if (!link(g.out(u, l), h.out(v, l)) || !link(g.in(u, l), h.in(v, l))) return false;
    }
  }
  return std::all_of(map.begin(), map.end(), [](const auto& m) { return m.has_value(); });
}

LabeledGraph bouquet(const std::vector<GroupWord>& generators) {
  std::uint32_t next = 1;
  std::vector<Edge> edges;
  for (const auto& raw : generators) {
    GroupWord w = reduce_word(raw);
    if (w.empty()) continue;
    std::uint32_t at = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::uint32_t to = i + 1 == w.size() ? 0 : next++;
      if (w[i].exponent > 0) edges.push_back({at, to, w[i].generator});
      else edges.push_back({to, at, w[i].generator});
      at = to;
    }
  }
  return LabeledGraph(next, std::move(edges));
}

namespace {

class Folder {
 public:
  explicit Folder(std::uint32_t n) : parent_(n), out_(n), in_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::uint32_t find(std::uint32_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void add(const Edge& e) {
    attach(find(e.source), e.label, find(e.target));
    drain();
  }

  // Surviving edges between representatives.
  std::set<Edge> edges() {
    std::set<Edge> out;
    for (std::uint32_t v = 0; v < parent_.size(); ++v) {
      if (find(v) != v) continue;
      for (const auto& [label, target] : out_[v]) out.insert({v, find(target), label});
    }
    return out;
  }

 private:
  void attach(std::uint32_t s, std::uint32_t label, std::uint32_t t) {
    auto [o, freshOut] = out_[s].emplace(label, t);
    if (!freshOut) pending_.emplace_back(o->second, t);
    auto [i, freshIn] = in_[t].emplace(label, s);
    if (!freshIn) pending_.emplace_back(i->second, s);
  }

  void drain() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.back();
      pending_.pop_back();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (out_[a].size() + in_[a].size() < out_[b].size() + in_[b].size()) std::swap(a, b);
      parent_[b] = a;
      for (const auto& [label, t] : out_[b]) {
        auto [it, fresh] = out_[a].emplace(label, t);
        if (!fresh) pending_.emplace_back(it->second, t);
      }
      for (const auto& [label, s] : in_[b]) {
        auto [it, fresh] = in_[a].emplace(label, s);
        if (!fresh) pending_.emplace_back(it->second, s);
      }
      out_[b].clear();
      in_[b].clear();
    }
  }

  std::vector<std::uint32_t> parent_;
  std::vector<std::map<std::uint32_t, std::uint32_t>> out_;
  std::vector<std::map<std::uint32_t, std::uint32_t>> in_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pending_;
};

LabeledGraph canonical_core(std::uint32_t root, std::set<Edge> edges) {
  // Trim hairs: non-basepoint vertices of degree 1, repeatedly.
  while (true) {
    std::map<std::uint32_t, int> degree;
    for (const Edge& e : edges) {
      ++degree[e.source];
      ++degree[e.target];
    }
    bool removed = false;
    for (auto it = edges.begin(); it != edges.end();) {
      bool hair = (it->source != root && degree[it->source] == 1) ||
                  (it->target != root && degree[it->target] == 1);
      if (hair) {
        it = edges.erase(it);
        removed = true;
      } else {
        ++it;
      }
    }
    if (!removed) break;
  }

  std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>> adjacency;
  for (const Edge& e : edges) {
    adjacency[e.source].emplace_back(2 * e.label, e.target);
    adjacency[e.target].emplace_back(2 * e.label + 1, e.source);
  }
  for (auto& [v, list] : adjacency) std::sort(list.begin(), list.end());
  std::map<std::uint32_t, std::uint32_t> number{{root, 0}};
  std::deque<std::uint32_t> queue{root};
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (const auto& [key, w] : adjacency[v]) {
      if (number.emplace(w, static_cast<std::uint32_t>(number.size())).second) queue.push_back(w);
    }
  }
  std::vector<Edge> renamed;
  for (const Edge& e : edges) renamed.push_back({number.at(e.source), number.at(e.target), e.label});
  return LabeledGraph(static_cast<std::uint32_t>(number.size()), std::move(renamed));
}

}  // namespace

LabeledGraph fold(const std::vector<GroupWord>& generators, std::optional<std::uint64_t> shuffle_seed) {
  LabeledGraph b = bouquet(generators);
  std::vector<Edge> order = b.edges();
  if (shuffle_seed) {
    std::mt19937_64 rng(*shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  Folder folder(b.vertex_count());
  for (const Edge& e : order) folder.add(e);
  LabeledGraph core = canonical_core(folder.find(b.basepoint()), folder.edges());
  if (!core.is_deterministic()) throw InvariantViolation("folded graph is not deterministic");
  return core;
}

IndexResult subgroup_index(const std::vector<GroupWord>& generators, std::uint32_t k) {
  for (const auto& w : generators) {
    for (const Letter& l : w) {
      if (l.generator >= k) {
        throw std::invalid_argument("generator " + format_word({l}) + " is outside the free group of rank " +
                                    std::to_string(k));
      }
    }
  }
  IndexResult result;
  result.graph = fold(generators);
  const auto vertices = static_cast<std::int64_t>(result.graph.vertex_count());
  result.rank = static_cast<std::int64_t>(result.graph.edges().size()) - vertices + 1;
  if (result.graph.is_complete(k)) {
    result.value = static_cast<std::uint64_t>(vertices);
    if (result.rank != vertices * (static_cast<std::int64_t>(k) - 1) + 1) {
      throw InvariantViolation("rank " + std::to_string(result.rank) +
                               " contradicts the Nielsen-Schreier formula for index " +
                               std::to_string(vertices));
    }
  }
  return result;
}

bool membership(const GroupWord& w, const std::vector<GroupWord>& generators) {
  LabeledGraph core = fold(generators);
  auto end = core.walk(reduce_word(w), core.basepoint());
  return end && *end == core.basepoint();
}

IndexResult hat_index(const PositionSet& z) {
  std::vector<GroupWord> words;
  for (const auto& p : z.elements()) words.push_back(word_from_position(hat(p)));
  return subgroup_index(words, z.alphabet_size());
}

}  // namespace opengame
