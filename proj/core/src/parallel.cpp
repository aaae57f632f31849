#include "littlewood/parallel.hpp"

#include <cstdlib>
#include <string>

namespace littlewood {

unsigned default_thread_count() {
  if (const char* env = std::getenv("LITTLEWOOD_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace littlewood
