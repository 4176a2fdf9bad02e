#ifndef TDELTA_TOOLS_POOL_HPP
#define TDELTA_TOOLS_POOL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <variant>
#include <vector>

#include "table.hpp"

namespace tdelta::cli {

template <class R>
using Outcome = std::variant<R, std::exception_ptr>;

/// Evaluates task(i) for i in [0, count) on `jobs` threads; results keep index order.
template <class R>
std::vector<Outcome<R>> ordered_map(std::size_t count, unsigned jobs,
                                    const std::function<R(std::size_t)>& task) {
  std::vector<Outcome<R>> out(count, Outcome<R>{std::exception_ptr{}});
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = task(i);
      } catch (...) {
        out[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  std::vector<std::jthread> threads;
  for (unsigned t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  return out;
}

/// Collects rows in index order; the first failure stops the table.
template <class R>
void collect(Table& t, std::vector<Outcome<R>> outcomes, const std::function<Row(const R&)>& to_row,
             std::exception_ptr& failure) {
  for (auto& o : outcomes) {
    if (auto* e = std::get_if<std::exception_ptr>(&o)) {
      failure = *e;
      return;
    }
    t.rows.push_back(to_row(std::get<R>(o)));
  }
}

}  // namespace tdelta::cli

#endif  // TDELTA_TOOLS_POOL_HPP
