#pragma once

// Minimal deterministic work sharing: static block partition over an index
// range. Callers write results into per-index slots, so the outcome never
// depends on the worker count.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace convind {

inline int hardware_jobs() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Process-wide default used when a caller does not pass an explicit count;
// the CLI sets it from --jobs / the CONVIND_JOBS environment variable.
inline int& default_jobs_slot() {
    static int jobs = [] {
        if (const char* env = std::getenv("CONVIND_JOBS")) {
            int v = std::atoi(env);
            if (v >= 1) return v;
        }
        return hardware_jobs();
    }();
    return jobs;
}

inline int default_jobs() { return default_jobs_slot(); }
inline void set_default_jobs(int jobs) { default_jobs_slot() = jobs >= 1 ? jobs : 1; }

// Runs body(i) for i in [0, n). Exceptions from workers are rethrown (first
// one wins) after all threads join.
inline void parallel_for(int n, const std::function<void(int)>& body, int jobs = 0) {
    if (jobs <= 0) jobs = default_jobs();
    if (jobs > n) jobs = n;
    if (n <= 0) return;
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace convind
