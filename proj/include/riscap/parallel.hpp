// SPDX-License-Identifier: Apache-2.0
//
// riscap: capacity and outage analysis for RIS-aided downlink systems
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace riscap {

// Number of workers to use: `requested`, or hardware concurrency when 0,
// never more than `jobs` and never less than 1.
inline int resolve_threads(int requested, long jobs) {
    long t = requested > 0 ? requested : static_cast<long>(std::thread::hardware_concurrency());
    t = std::max(1L, std::min({t, jobs, 64L}));
    return static_cast<int>(t);
}

// Runs body(i) for i in [0, jobs) across contiguous index blocks. Results
// must be written to index-addressed storage by the body; the split plays
// no part in the output, so any thread count yields identical results.
// The first exception thrown by a body is rethrown in the caller.
template <typename Body>
void parallel_for_index(long jobs, int threads, const Body& body) {
    if (jobs <= 0) return;
    const int workers = resolve_threads(threads, jobs);
    if (workers == 1) {
        for (long i = 0; i < jobs; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    const long chunk = (jobs + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long lo = w * chunk;
        const long hi = std::min(jobs, lo + chunk);
        pool.emplace_back([&body, &errors, w, lo, hi] {
            try {
                for (long i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace riscap
