#include "uniconc/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace uniconc::kernels {

void shifted_matvec(const Digraph& g, const std::vector<double>& v, std::vector<double>& y) {
    const auto n = static_cast<std::ptrdiff_t>(g.size());
    y.resize(g.size());
    // Row-wise gather: each output is written by one thread only, and the sum order
    // matches the serial loop, so the result is bit-identical.
#pragma omp parallel for schedule(static) if (n > 2048)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double acc = v[i];
        for (const std::size_t j : g.succ[i]) acc += v[j];
        y[i] = acc;
    }
}

void shifted_matvec_serial(const Digraph& g, const std::vector<double>& v, std::vector<double>& y) {
    y.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        double acc = v[i];
        for (const std::size_t j : g.succ[i]) acc += v[j];
        y[i] = acc;
    }
}

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace uniconc::kernels
