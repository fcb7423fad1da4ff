#pragma once

#include <cstdint>

#include "ohm/instance.hpp"

namespace ohm {

// ---------------------------------------------------------------- generator

enum class Overlap { dense, sparse };

struct GenConfig {
  int agent_count = 4;
  std::uint64_t seed = 0;
  Overlap overlap = Overlap::dense;
};

// Deterministic instance generator. The algorithm is part of the contract:
// identical config must yield identical bytes across releases.
//
//   rng      mt19937_64 seeded with config.seed
//   draw(k)  rejection sampling on rng() to avoid modulo bias
//   events   2n slots filled left to right; when both an arrival and a
//            departure are legal, arrival wins iff draw(3) < 2 (dense)
//            or draw(3) < 1 (sparse); a departure closes a uniformly
//            drawn open agent via draw(open_count)
//   times    event k happens at integer time k+1; market is [0, 2n+1]
//   agents   ids 1..n in arrival order, agent i owns item "e<i>"
//   prefs    per agent a Fisher-Yates shuffle of all items using draw
Instance generate_instance(const GenConfig& config);

}  // namespace ohm
