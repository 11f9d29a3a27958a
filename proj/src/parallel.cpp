#include "fracneum/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

#include "fracneum/errors.hpp"

namespace fracneum {

int configure_threads(std::optional<int> requested) {
    if (!requested) {
        if (const char* env = std::getenv("FRACNEUM_THREADS"); env != nullptr && *env != '\0') {
            try {
                requested = std::stoi(env);
            } catch (const std::exception&) {
                throw ConfigError("FRACNEUM_THREADS: not an integer: '" + std::string(env) + "'");
            }
        }
    }
    if (requested) {
        if (*requested < 1) throw ConfigError("threads: must be >= 1");
        omp_set_num_threads(*requested);
    }
    return omp_get_max_threads();
}

}  // namespace fracneum
