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

#include "slicekit/kernels.hpp"

namespace slicekit::kernels::serial {

void for_each_row(std::size_t n, const RowFn& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace slicekit::kernels::serial
