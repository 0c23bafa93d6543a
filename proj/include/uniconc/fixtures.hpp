#pragma once

#include "uniconc/system.hpp"

// Reference systems used throughout the tests, the benchmarks and the CLI.
namespace uniconc::fixtures {

/// Two states, four letters, a and b each independent of d.
ConcurrentSystem e1();

/// Canonical one-state system of <a,b,c | ab=ba>.
ConcurrentSystem tm1();

/// Domino tilings of the order-2 Aztec diamond; rotations of disjoint dominoes commute.
ConcurrentSystem aztec();

/// Twelve states over a..f whose positive DSC has two terminal components.
ConcurrentSystem twelve();

/// Canonical one-state system of <a,b | ab=ba>. Reducible.
ConcurrentSystem commuting_pair();

}  // namespace uniconc::fixtures
