#include "subhyp/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace subhyp {
namespace {

std::size_t initial_workers() {
  if (const char* env = std::getenv("SUBHYP_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::atomic<std::size_t>& workers_slot() {
  static std::atomic<std::size_t> slot{initial_workers()};
  return slot;
}

}  // namespace

std::size_t worker_count() { return workers_slot().load(); }

void set_worker_count(std::size_t n) { workers_slot().store(n == 0 ? 1 : n); }

}  // namespace subhyp
