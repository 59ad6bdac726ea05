// Copyright 2026 The slicekit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace slicekit::kernels {

enum class Exec { kSerial, kParallel };

using RowFn = std::function<void(std::size_t)>;

namespace serial {
/// Reference loop: calls fn(0) .. fn(n-1) in order, stopping at the first throw.
void for_each_row(std::size_t n, const RowFn& fn);
}  // namespace serial

namespace omp {
/// OpenMP loop over rows. Every row runs; if any throw, the exception from the
/// lowest row index is rethrown once the loop has joined.
void for_each_row(std::size_t n, const RowFn& fn);
int max_threads();
}  // namespace omp

inline void for_each_row(std::size_t n, const RowFn& fn, Exec exec = Exec::kParallel) {
  if (exec == Exec::kSerial) {
    serial::for_each_row(n, fn);
  } else {
    omp::for_each_row(n, fn);
  }
}

template <class T, class F>
std::vector<T> map_rows(std::size_t n, F&& fn, Exec exec = Exec::kParallel) {
  std::vector<T> out(n);
  for_each_row(n, [&](std::size_t i) { out[i] = fn(i); }, exec);
  return out;
}

}  // namespace slicekit::kernels
