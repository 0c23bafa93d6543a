#pragma once

// Hot loops with an OpenMP version and a plain serial reference.
// The two must agree exactly; the tests and the benchmark compare them.

#include <cstddef>
#include <vector>

#include "uniconc/graphs.hpp"

namespace uniconc::kernels {

/// y = (F + Id) v, where F is the 0/1 adjacency matrix of g.
void shifted_matvec(const Digraph& g, const std::vector<double>& v, std::vector<double>& y);
void shifted_matvec_serial(const Digraph& g, const std::vector<double>& v, std::vector<double>& y);

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int thread_count();

}  // namespace uniconc::kernels
