#pragma once

// Coset graph of H\G (a Cayley graph of F = G/H since H is normal), simple
// cycle enumeration, loop-erasure of coset walks and the generating set X(S)
// of conjugated simple cycles.

#include <cstddef>
#include <vector>

#include "nilgrowth/words.hpp"
#include "nilgrowth/zoo.hpp"

namespace nilgrowth::schreier {

class SchreierGraph {
 public:
  SchreierGraph(std::size_t vertex_count, std::vector<std::vector<std::size_t>> edges);

  std::size_t vertex_count() const noexcept { return edges_.size(); }
  std::size_t basepoint() const noexcept { return 0; }
  std::size_t letter_count() const noexcept { return edges_.empty() ? 0 : edges_[0].size(); }
  std::size_t edge(std::size_t vertex, std::size_t letter) const { return edges_[vertex][letter]; }

  /// Endpoint of the walk labelled by w starting at `from`.
  std::size_t walk(std::size_t from, const words::Word& w) const;

 private:
  std::vector<std::vector<std::size_t>> edges_;
};

/// edge(v, s) = v * coset(s).
SchreierGraph build_graph(const zoo::GroupDescriptor& desc, const words::GenSet& gens);

/// Words labelling a vertex-simple closed walk from `start`, in DFS order.
std::vector<words::Word> simple_cycles_from(const SchreierGraph& graph, std::size_t start);
/// Simple cycles at the basepoint.
std::vector<words::Word> simple_cycles(const SchreierGraph& graph, const words::GenSet& gens);
/// Words labelling a vertex-simple walk from the basepoint, including the empty
/// word, in DFS order.
std::vector<words::Word> simple_paths(const SchreierGraph& graph);

/// Generator t u t^-1 of H with cost l(u).
struct XLetter {
  words::Word path;   // t
  words::Word cycle;  // u
  long long cost = 0;
  zoo::GroupElement element;

  /// Letters of X(S) are identified by their (t, u) words.
  friend bool operator==(const XLetter& a, const XLetter& b) {
    return a.path == b.path && a.cycle == b.cycle;
  }
};

XLetter make_xletter(words::Word path, words::Word cycle, const words::GenSet& gens,
                     const zoo::GroupDescriptor& desc);

struct XBlock {
  XLetter letter;
  long long exponent = 1;
};

/// Stack-based loop erasure of a coset walk returning to the basepoint.
/// Throws NotInSubgroup if the walk ends elsewhere.
std::vector<XLetter> loop_erase(const words::Word& w, const SchreierGraph& graph, const words::GenSet& gens,
                                const zoo::GroupDescriptor& desc);

/// Merges consecutive equal letters into blocks.
std::vector<XBlock> merge_blocks(const std::vector<XLetter>& letters);

/// All pairs (simple path t, simple cycle u at the end of t).
std::vector<XLetter> x_of_s(const SchreierGraph& graph, const words::GenSet& gens,
                            const zoo::GroupDescriptor& desc);

}  // namespace nilgrowth::schreier
