#pragma once

#include <cstdint>

#include "ergraph/graph.hpp"
#include "ergraph/model.hpp"

namespace ergraph {

/// Draws one graph from the model. Deterministic in (model, seed).
///
/// Uniform models use geometric skip sampling, O(n + m) expected time.
/// Inhomogeneous models are thinned from a uniform supergraph at the
/// declared rate bound, O(n + m_sup) expected, so sparse bounds stay
/// cheap; a bound at or above n falls back to visiting every pair.
GraphSample sample(const EdgeProbModel& model, std::uint64_t seed);

}  // namespace ergraph
