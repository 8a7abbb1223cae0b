#include "qrmix/numeric.hpp"

#include <atomic>

namespace qrmix {

namespace {
std::atomic<std::size_t>& worker_setting() {
  static std::atomic<std::size_t> workers{std::max<std::size_t>(1, std::thread::hardware_concurrency())};
  return workers;
}
}  // namespace

std::size_t worker_count() { return worker_setting().load(); }

void set_worker_count(std::size_t workers) { worker_setting().store(std::max<std::size_t>(1, workers)); }

}  // namespace qrmix
