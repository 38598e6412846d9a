#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

namespace ergraph {

/// A labelled simple graph: edges are pairs {i,j} with 1 <= i < j <= n,
/// stored sorted and duplicate-free. `seed` records the stream that
/// produced the sample (0 for graphs read from files).
struct GraphSample {
  std::int64_t n = 0;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  std::uint64_t seed = 0;

  std::int64_t edge_count() const noexcept { return static_cast<std::int64_t>(edges.size()); }

  /// Throws std::invalid_argument if the edge set violates the invariants above.
  void validate() const;
};

struct ComponentSummary {
  std::vector<std::int64_t> sizes;  // descending
  std::int64_t max_size = 0;
  bool connected = false;
};

struct DegreeHistogram {
  std::map<std::int32_t, std::int64_t> counts;  // degree -> #vertices, zero included
  std::int64_t n = 0;
};

/// Connected components via union-find; O(n + m alpha(n)).
ComponentSummary components(const GraphSample& g);

DegreeHistogram degree_histogram(const GraphSample& g);

/// Plain text edge list: header "n m", then one "i j" line per edge.
void write_edge_list(const GraphSample& g, std::ostream& out);

/// Parses and validates the edge-list format; throws std::invalid_argument
/// with a line reference on malformed input.
GraphSample read_edge_list(std::istream& in);

}  // namespace ergraph
