#pragma once

#include <cstdint>
#include <functional>

#include "ohm/instance.hpp"
#include "ohm/partitions.hpp"

namespace ohm {

// -------------------------------------------------------------- exhaustive sweep

// Valid arrival/departure interleavings for n agents in canonical arrival
// order: (2n-1)!!.
std::uint64_t interleaving_count(int n);

// interleaving_count(n) * (n!)^n preference profiles.
std::uint64_t sweep_size(int n);

// Calls fn once per canonical instance with n agents: every interleaving of
// the 2n events placed at times 1..2n inside market [0, 2n+1], crossed with
// every strict preference profile. Agent ids are 1..n in arrival order and
// agent i owns "e<i>". Enumeration order is fixed.
void for_each_sweep_instance(int n, const std::function<void(const Instance&)>& fn);

// ------------------------------------------------- canonical grouping parameters

// The scheduling and threshold inputs are exogenous, so sweeps pin one fixed
// derivation per instance. All derived times are strict midpoints between
// existing times, keeping them off every event.

// Two slots covering all departures, split just after the middle departure
// (the ceil(n/2)-th); collapses to one slot when nothing follows it.
Scheduling split_scheduling(const Instance& inst);

// One slot covering all departures.
Scheduling cover_scheduling(const Instance& inst);

// Before every event, so the first departure triggers the threshold split.
Threshold early_threshold(const Instance& inst);

// Just after the first departure, so the second one triggers the split.
Threshold late_threshold(const Instance& inst);

}  // namespace ohm
