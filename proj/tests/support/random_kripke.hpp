#pragma once

// Random total Kripke structures and CTL formulas for differential tests.

#include "sbcheck/ctl.hpp"

#include <random>

namespace sbtest {

/// 1..max_states states, random successor lists (deadlocks are given a
/// self-loop), random extensions for adapting, steady, in(a), in(b).
sbcheck::Kripke random_kripke(std::mt19937_64& rng, std::size_t max_states = 6);

/// Formula of depth at most `depth` over the atoms above and constants.
sbcheck::CtlFormula random_ctl(std::mt19937_64& rng, int depth);

} // namespace sbtest
