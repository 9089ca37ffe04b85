#include "entwit/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace entwit {

int resolve_workers(int requested) {
    int w = requested < 1 ? 1 : requested;
    if (const char* cap = std::getenv("ENTWIT_THREADS")) {
        const int c = std::atoi(cap);
        if (c >= 1 && c < w) w = c;
    }
    return w;
}

void parallel_chunks(long count, int workers, const std::function<void(long, long)>& fn) {
    if (count <= 0) return;
    const long w = std::min<long>(std::max(workers, 1), count);
    if (w == 1) {
        fn(0, count);
        return;
    }

    const long base = count / w;
    const long extra = count % w;  // first `extra` chunks get one more item

    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(w));
    // exchange() admits exactly one writer; join() below publishes the write.
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};

    long begin = 0;
    for (long k = 0; k < w; ++k) {
        const long len = base + (k < extra ? 1 : 0);
        const long end = begin + len;
        threads.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                if (!failed.exchange(true)) first_error = std::current_exception();
            }
        });
        begin = end;
    }
    for (std::thread& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace entwit
