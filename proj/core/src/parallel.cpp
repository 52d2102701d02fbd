#include "mlab/parallel.hpp"

namespace mlab {

namespace {
std::atomic<unsigned> g_threads{1};
}

unsigned default_threads() noexcept { return g_threads.load(); }

void set_default_threads(unsigned threads) noexcept { g_threads.store(threads == 0 ? 1 : threads); }

}  // namespace mlab
