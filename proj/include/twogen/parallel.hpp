#pragma once

#include <cstddef>
#include <exception>
#include <string>

#include <omp.h>

namespace twogen {

enum class Exec { serial, parallel };

/// Thread count used when the caller passes 0.
inline int default_threads() { return omp_get_max_threads(); }

/// Runs body(i) for i in [0, n). The serial path is the reference; the
/// parallel path must produce the same per-index results. body must not
/// throw (OpenMP regions cannot propagate exceptions).
template <class Body>
void for_each_index(std::size_t n, Exec exec, int threads, Body&& body) {
  if (exec == Exec::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const int t = threads > 0 ? threads : default_threads();
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(t)
  for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace twogen
