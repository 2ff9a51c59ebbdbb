#pragma once

#include <cstddef>

namespace fanchaos {

/// Serial runs are the reference; parallel runs must produce identical results.
enum class Exec { Serial, Parallel };

/// Runs body(i) for i in [0, n), in parallel when asked. Results must go to slot i.
template <class F>
void for_each_index(std::size_t n, Exec exec, F&& body) {
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const long long m = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < m; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace fanchaos
