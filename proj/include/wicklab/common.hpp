/*
   Copyright 2026 The wicklab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef WICKLAB_COMMON_HPP
#define WICKLAB_COMMON_HPP

#include <cstdlib>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace wicklab {

/// Coefficient arithmetic backend. Exact values are complex numbers with
/// arbitrary-precision rational real and imaginary parts; float values are
/// double-precision complex numbers. A single expression never mixes both.
enum class Backend { Exact, Float };

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define WICKLAB_ERROR(Name)                                           \
    struct Name : Error {                                             \
        explicit Name(const std::string& what = #Name) : Error(what) {} \
    }

WICKLAB_ERROR(BackendMismatch);
WICKLAB_ERROR(DimensionMismatch);
WICKLAB_ERROR(SingularMatrix);
WICKLAB_ERROR(DegreeCapExceeded);
WICKLAB_ERROR(NoConvergence);
WICKLAB_ERROR(DegenerateCritical);
WICKLAB_ERROR(NotCritical);
WICKLAB_ERROR(SingularHessian);
WICKLAB_ERROR(VHasLowDegree);
WICKLAB_ERROR(NotOnZ);
WICKLAB_ERROR(DegenerateFiberHessian);
WICKLAB_ERROR(NonConstantActionOnZ);
WICKLAB_ERROR(NotInvariant);
WICKLAB_ERROR(NotOnSlice);
WICKLAB_ERROR(NonTransverse);
WICKLAB_ERROR(QuadratureFailure);
WICKLAB_ERROR(NoDecay);
WICKLAB_ERROR(ToleranceNotMet);
WICKLAB_ERROR(ExtrapolationUnstable);
WICKLAB_ERROR(WrongKernel);
WICKLAB_ERROR(DegenerateOnOrbit);
WICKLAB_ERROR(UnknownVariable);
WICKLAB_ERROR(NonIntegerExponent);

#undef WICKLAB_ERROR

/// Parse error with source location, 1-based.
struct SyntaxError : Error {
    int line;
    int column;
    SyntaxError(const std::string& what, int line_, int column_)
        : Error(what + " at line " + std::to_string(line_) + ", column " +
                std::to_string(column_)),
          line(line_),
          column(column_) {}
};

/// Sentinel truncation order for series that are exact to all orders.
inline constexpr int kUnbounded = std::numeric_limits<int>::max() / 4;

inline int saturating_add(int a, int b) {
    if (a >= kUnbounded || b >= kUnbounded) return kUnbounded;
    long s = static_cast<long>(a) + b;
    if (s >= kUnbounded) return kUnbounded;
    return static_cast<int>(s);
}

/// Number of worker threads: hardware concurrency capped by WICKLAB_THREADS.
inline unsigned worker_threads() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("WICKLAB_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return n;
}

/// Runs fn(i) for i in [0, count). Results must be written to preallocated
/// slots; the caller performs any reduction in fixed index order afterwards.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    unsigned nthreads = worker_threads();
    if (nthreads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (count + nthreads - 1) / nthreads;
    std::exception_ptr eptr;
    std::mutex m;
    for (unsigned t = 0; t < nthreads; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(m);
                if (!eptr) eptr = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (eptr) std::rethrow_exception(eptr);
}

}  // namespace wicklab

#endif
