#include "fdlm/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

namespace fdlm {
namespace {

std::atomic<int> g_override{0};

int default_workers() {
  if (const char* env = std::getenv("FDLM_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Chunks are fixed by n alone so that concatenation order never depends on the
// number of workers.
constexpr std::size_t kChunk = 4096;

template <class T>
std::vector<T> run_chunks(std::size_t n,
                          const std::function<void(std::size_t, std::size_t, std::vector<T>&)>& body) {
  const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::vector<T>> parts(n_chunks);
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(worker_count()), std::max<std::size_t>(n_chunks, 1));

  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c)
      body(c * kChunk, std::min(n, (c + 1) * kChunk), parts[c]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t c = next++; c < n_chunks; c = next++)
            body(c * kChunk, std::min(n, (c + 1) * kChunk), parts[c]);
        } catch (...) {
          errors[w] = std::current_exception();
          next = n_chunks;
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<T> out;
  out.reserve(total);
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

int worker_count() {
  const int o = g_override.load();
  return o >= 1 ? o : default_workers();
}

void set_worker_count(int n) { g_override = n; }

std::vector<Triplet> parallel_triplets(
    std::size_t n,
    const std::function<void(std::size_t, std::size_t, std::vector<Triplet>&)>& body) {
  return run_chunks<Triplet>(n, body);
}

std::vector<std::pair<int, double>> parallel_entries(
    std::size_t n,
    const std::function<void(std::size_t, std::size_t, std::vector<std::pair<int, double>>&)>&
        body) {
  return run_chunks<std::pair<int, double>>(n, body);
}

}  // namespace fdlm
