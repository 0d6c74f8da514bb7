#include "stagfv/threads.hpp"

#include <cstdlib>
#include <string>

#include <fmt/format.h>

#include "stagfv/errors.hpp"

#if defined(STAGFV_HAVE_OPENMP)
#include <omp.h>
#endif

namespace stagfv {

int configure_threads() {
  if (const char* env = std::getenv("STAGFV_NUM_THREADS"); env && *env) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) {
      throw ConfigError(fmt::format("STAGFV_NUM_THREADS must be a positive integer (got '{}')", env));
    }
#if defined(STAGFV_HAVE_OPENMP)
    omp_set_num_threads(static_cast<int>(n));
#endif
  }
  return num_threads();
}

int num_threads() noexcept {
#if defined(STAGFV_HAVE_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace stagfv
