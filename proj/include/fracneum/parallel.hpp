#pragma once

#include <optional>

namespace fracneum {

/// Thread count for the OpenMP kernels. An explicit value wins; otherwise
/// FRACNEUM_THREADS is consulted; otherwise the OpenMP runtime default stays.
/// Returns the count in effect.
int configure_threads(std::optional<int> requested);

}  // namespace fracneum
