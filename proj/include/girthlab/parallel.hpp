#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace girthlab {

/// Evaluates `fn(scratch, trial)` for trial = 0..trials-1 on `workers`
/// threads and returns the per-trial results in trial order. Each worker gets
/// its own scratch from `make_scratch()`. Any reduction over the returned
/// vector is therefore independent of the worker count.
template <typename MakeScratch, typename Fn>
auto map_trials(std::uint64_t trials, int workers, MakeScratch make_scratch, Fn fn) {
  using Scratch = decltype(make_scratch());
  using Result = decltype(fn(std::declval<Scratch&>(), std::uint64_t{0}));
  std::vector<Result> out(trials);
  workers = std::max(1, workers);
  if (workers == 1 || trials < 2) {
    Scratch scratch = make_scratch();
    for (std::uint64_t t = 0; t < trials; ++t) out[t] = fn(scratch, t);
    return out;
  }

  const auto nw = static_cast<std::uint64_t>(std::min<std::uint64_t>(workers, trials));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(nw);
    for (std::uint64_t w = 0; w < nw; ++w) {
      pool.emplace_back([&, w] {
        try {
          Scratch scratch = make_scratch();
          const std::uint64_t begin = trials * w / nw;
          const std::uint64_t end = trials * (w + 1) / nw;
          for (std::uint64_t t = begin; t < end; ++t) out[t] = fn(scratch, t);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace girthlab
