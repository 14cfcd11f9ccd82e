#include "nilgrowth/schreier.hpp"

#include "nilgrowth/error.hpp"

namespace nilgrowth::schreier {
namespace {

void cycles_dfs(const SchreierGraph& g, std::size_t start, std::size_t at, std::vector<bool>& on_path,
                std::vector<std::size_t>& letters, std::vector<words::Word>& out) {
  for (std::size_t s = 0; s < g.letter_count(); ++s) {
    std::size_t next = g.edge(at, s);
    letters.push_back(s);
    if (next == start) {
      out.push_back(words::Word::from_letters(letters));
    } else if (!on_path[next]) {
      on_path[next] = true;
      cycles_dfs(g, start, next, on_path, letters, out);
      on_path[next] = false;
    }
    letters.pop_back();
  }
}

void paths_dfs(const SchreierGraph& g, std::size_t at, std::vector<bool>& on_path, std::vector<std::size_t>& letters,
               std::vector<words::Word>& out) {
  out.push_back(words::Word::from_letters(letters));
  for (std::size_t s = 0; s < g.letter_count(); ++s) {
    std::size_t next = g.edge(at, s);
    if (on_path[next]) continue;
    on_path[next] = true;
    letters.push_back(s);
    paths_dfs(g, next, on_path, letters, out);
    letters.pop_back();
    on_path[next] = false;
  }
}

}  // namespace

SchreierGraph::SchreierGraph(std::size_t vertex_count, std::vector<std::vector<std::size_t>> edges)
    : edges_(std::move(edges)) {
  if (edges_.size() != vertex_count) throw Error(ErrorCode::InvalidParams, "schreier graph: wrong vertex count");
  for (const auto& row : edges_) {
    if (row.size() != edges_[0].size()) throw Error(ErrorCode::InvalidParams, "schreier graph: ragged edge table");
    for (auto v : row)
      if (v >= vertex_count) throw Error(ErrorCode::InvalidParams, "schreier graph: edge out of range");
  }
}

std::size_t SchreierGraph::walk(std::size_t from, const words::Word& w) const {
  std::size_t v = from;
  for (const auto& b : w.blocks())
    for (long long i = 0; i < b.exponent; ++i) v = edge(v, b.letter);
  return v;
}

SchreierGraph build_graph(const zoo::GroupDescriptor& desc, const words::GenSet& gens) {
  const auto& f = desc.finite();
  std::vector<std::vector<std::size_t>> edges(f.order(), std::vector<std::size_t>(gens.size()));
  for (std::size_t v = 0; v < f.order(); ++v)
    for (std::size_t s = 0; s < gens.size(); ++s) edges[v][s] = f.mul(v, desc.coset(gens[s].element));
  return SchreierGraph(f.order(), std::move(edges));
}

std::vector<words::Word> simple_cycles_from(const SchreierGraph& graph, std::size_t start) {
  std::vector<words::Word> out;
  std::vector<bool> on_path(graph.vertex_count(), false);
  on_path[start] = true;
  std::vector<std::size_t> letters;
  cycles_dfs(graph, start, start, on_path, letters, out);
  return out;
}

std::vector<words::Word> simple_cycles(const SchreierGraph& graph, const words::GenSet& gens) {
  if (graph.letter_count() != gens.size())
    throw Error(ErrorCode::InvalidParams, "generating set does not match the coset graph");
  return simple_cycles_from(graph, graph.basepoint());
}

std::vector<words::Word> simple_paths(const SchreierGraph& graph) {
  std::vector<words::Word> out;
  std::vector<bool> on_path(graph.vertex_count(), false);
  on_path[graph.basepoint()] = true;
  std::vector<std::size_t> letters;
  paths_dfs(graph, graph.basepoint(), on_path, letters, out);
  return out;
}

XLetter make_xletter(words::Word path, words::Word cycle, const words::GenSet& gens,
                     const zoo::GroupDescriptor& desc) {
  auto t = words::evaluate(path, gens, desc);
  auto element = desc.mul(desc.mul(t, words::evaluate(cycle, gens, desc)), desc.inv(t));
  long long cost = cycle.length();
  return XLetter{std::move(path), std::move(cycle), cost, std::move(element)};
}

std::vector<XLetter> loop_erase(const words::Word& w, const SchreierGraph& graph, const words::GenSet& gens,
                                const zoo::GroupDescriptor& desc) {
  constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> stack_vertices{graph.basepoint()};
  std::vector<std::size_t> stack_letters;
  std::vector<std::size_t> position(graph.vertex_count(), kAbsent);
  position[graph.basepoint()] = 0;

  std::vector<XLetter> out;
  for (std::size_t s : w.letters()) {
    std::size_t next = graph.edge(stack_vertices.back(), s);
    std::size_t j = position[next];
    if (j == kAbsent) {
      position[next] = stack_vertices.size();
      stack_vertices.push_back(next);
      stack_letters.push_back(s);
      continue;
    }
    std::vector<std::size_t> t(stack_letters.begin(), stack_letters.begin() + static_cast<std::ptrdiff_t>(j));
    std::vector<std::size_t> u(stack_letters.begin() + static_cast<std::ptrdiff_t>(j), stack_letters.end());
    u.push_back(s);
    out.push_back(make_xletter(words::Word::from_letters(t), words::Word::from_letters(u), gens, desc));
    while (stack_vertices.size() > j + 1) {
      position[stack_vertices.back()] = kAbsent;
      stack_vertices.pop_back();
      stack_letters.pop_back();
    }
  }
  if (stack_vertices.size() != 1)
    throw Error(ErrorCode::NotInSubgroup, "word '" + words::format_word(w, gens) + "' does not evaluate into H");
  return out;
}

std::vector<XBlock> merge_blocks(const std::vector<XLetter>& letters) {
  std::vector<XBlock> out;
  for (const auto& x : letters) {
    if (!out.empty() && out.back().letter == x) {
      ++out.back().exponent;
    } else {
      out.push_back({x, 1});
    }
  }
  return out;
}

std::vector<XLetter> x_of_s(const SchreierGraph& graph, const words::GenSet& gens,
                            const zoo::GroupDescriptor& desc) {
  std::vector<XLetter> out;
  for (auto& t : simple_paths(graph)) {
    std::size_t end = graph.walk(graph.basepoint(), t);
    for (auto& u : simple_cycles_from(graph, end)) {
      XLetter x = make_xletter(t, std::move(u), gens, desc);
      bool dup = false;
      for (const auto& y : out) dup |= (y == x);
      if (!dup) out.push_back(std::move(x));
    }
  }
  return out;
}

}  // namespace nilgrowth::schreier
