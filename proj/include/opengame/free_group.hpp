#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opengame/tree.hpp"

namespace opengame {

struct Letter {
  std::uint32_t generator = 0;
  int exponent = 1;  // +1 or -1

  bool operator==(const Letter&) const = default;
};

using GroupWord = std::vector<Letter>;

// Free reduction; idempotent.
GroupWord reduce_word(const GroupWord& w);

bool is_reduced(const GroupWord& w);

GroupWord inverse(const GroupWord& w);
GroupWord multiply(const GroupWord& u, const GroupWord& v);

// "aBa" = a b^-1 a. Lowercase letters are generators 0..25, uppercase their
// inverses. The empty string is the identity.
GroupWord parse_word(std::string_view text);
std::string format_word(const GroupWord& w);

// Comma-separated words, e.g. "b,aba,aBa". Blank entries are rejected.
std::vector<GroupWord> parse_generators(std::string_view text);

// Positive word: symbol i becomes generator i.
GroupWord word_from_position(const Position& p);

struct Edge {
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  std::uint32_t label = 0;

  auto operator<=>(const Edge&) const = default;
};

// Basepointed directed graph with generator-labelled edges.
class LabeledGraph {
 public:
  LabeledGraph() : LabeledGraph(1, {}) {}
  LabeledGraph(std::uint32_t vertex_count, std::vector<Edge> edges, std::uint32_t basepoint = 0);

  std::uint32_t vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::uint32_t basepoint() const { return basepoint_; }

  std::optional<std::uint32_t> out(std::uint32_t v, std::uint32_t label) const;
  std::optional<std::uint32_t> in(std::uint32_t v, std::uint32_t label) const;

  // At most one outgoing and one incoming edge per label at every vertex.
  bool is_deterministic() const { return deterministic_; }

  // Every vertex has an outgoing and an incoming edge for labels 0..k-1.
  bool is_complete(std::uint32_t k) const;

  // End vertex of the walk reading w from `from`, if every step exists.
  std::optional<std::uint32_t> walk(const GroupWord& w, std::uint32_t from) const;

  std::string to_dot() const;

 private:
  std::uint32_t vertex_count_;
  std::vector<Edge> edges_;
  std::uint32_t basepoint_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> out_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> in_;
  bool deterministic_ = true;
};

// Isomorphism of deterministic basepointed graphs, by a simultaneous walk
// from the basepoints.
bool isomorphic(const LabeledGraph& g, const LabeledGraph& h);

// The bouquet of cycles spelling the reduced generators.
LabeledGraph bouquet(const std::vector<GroupWord>& generators);

// Stallings folding of the bouquet followed by hair trimming. With a seed,
// the edges enter the fold in a shuffled order. Vertices of the result are
// numbered by a breadth-first walk from the basepoint.
LabeledGraph fold(const std::vector<GroupWord>& generators,
                  std::optional<std::uint64_t> shuffle_seed = std::nullopt);

struct IndexResult {
  std::optional<std::uint64_t> value;  // nullopt = infinite
  LabeledGraph graph;
  std::int64_t rank = 0;  // |E| - |V| + 1 on the core
};

// Index of <generators> in the free group on k letters. For finite index the
// rank is checked against index*(k-1)+1.
IndexResult subgroup_index(const std::vector<GroupWord>& generators, std::uint32_t k);

bool membership(const GroupWord& w, const std::vector<GroupWord>& generators);

// Index of the subgroup generated by the positive words hat(p), p in Z.
IndexResult hat_index(const PositionSet& z);

}  // namespace opengame
