#include "ergraph/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ergraph/disjoint_set.hpp"

namespace ergraph {

void GraphSample::validate() const {
  if (n < 1) throw std::invalid_argument("graph must have at least one vertex");
  for (const auto& [i, j] : edges) {
    if (i < 1 || j <= i || j > n) {
      throw std::invalid_argument("edge {" + std::to_string(i) + "," + std::to_string(j) +
                                  "} is not a vertex pair with 1 <= i < j <= n = " +
                                  std::to_string(n));
    }
  }
  if (!std::is_sorted(edges.begin(), edges.end())) {
    throw std::invalid_argument("edge list is not sorted");
  }
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("edge list contains a duplicate pair");
  }
}

ComponentSummary components(const GraphSample& g) {
  DisjointSet ds(g.n);
  for (const auto& [i, j] : g.edges) ds.unite(i - 1, j - 1);
  ComponentSummary summary;
  summary.sizes = ds.component_sizes();
  std::sort(summary.sizes.begin(), summary.sizes.end(), std::greater<>());
  summary.max_size = summary.sizes.front();
  summary.connected = summary.sizes.size() == 1;
  return summary;
}

DegreeHistogram degree_histogram(const GraphSample& g) {
  std::vector<std::int32_t> degree(static_cast<std::size_t>(g.n), 0);
  for (const auto& [i, j] : g.edges) {
    ++degree[i - 1];
    ++degree[j - 1];
  }
  DegreeHistogram hist;
  hist.n = g.n;
  for (std::int32_t d : degree) ++hist.counts[d];
  return hist;
}

void write_edge_list(const GraphSample& g, std::ostream& out) {
  out << g.n << ' ' << g.edge_count() << '\n';
  for (const auto& [i, j] : g.edges) out << i << ' ' << j << '\n';
}

GraphSample read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("edge list is empty, expected \"n m\" header");

  GraphSample g;
  std::int64_t m = -1;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> g.n >> m) || (header >> extra)) {
      throw std::invalid_argument("line 1: malformed header, expected \"n m\"");
    }
  }
  if (g.n < 1) throw std::invalid_argument("line 1: vertex count must be positive");
  if (m < 0) throw std::invalid_argument("line 1: edge count must be nonnegative");

  g.edges.reserve(static_cast<std::size_t>(m));
  for (std::int64_t k = 0; k < m; ++k) {
    if (!std::getline(in, line)) {
      throw std::invalid_argument("unexpected end of input: header promised " + std::to_string(m) +
                                  " edges, got " + std::to_string(k));
    }
    std::istringstream row(line);
    std::int64_t i = 0, j = 0;
    std::string extra;
    if (!(row >> i >> j) || (row >> extra)) {
      throw std::invalid_argument("line " + std::to_string(k + 2) + ": expected \"i j\"");
    }
    if (i < 1 || j <= i || j > g.n) {
      throw std::invalid_argument("line " + std::to_string(k + 2) + ": edge {" + std::to_string(i) +
                                  "," + std::to_string(j) + "} violates 1 <= i < j <= n");
    }
    g.edges.emplace_back(static_cast<std::int32_t>(i), static_cast<std::int32_t>(j));
  }

  while (std::getline(in, line)) {
    if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
      throw std::invalid_argument("trailing content after the " + std::to_string(m) +
                                  " edges promised by the header");
    }
  }

  auto sorted = g.edges;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("edge list contains a duplicate pair");
  }
  g.edges = std::move(sorted);
  return g;
}

}  // namespace ergraph
