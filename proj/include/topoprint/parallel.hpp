#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace topoprint {

inline unsigned resolve_threads(unsigned requested) {
	if (requested > 0) return requested;
	return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(i) for i in [0, count) on a small worker pool. Work items are
/// claimed dynamically; the first exception is rethrown after all workers stop.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& fn) {
	const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
	if (workers <= 1) {
		for (std::size_t i = 0; i < count; ++i) fn(i);
		return;
	}
	std::atomic<std::size_t> next{0};
	std::atomic<bool> failed{false};
	std::exception_ptr error;
	std::mutex error_mutex;
	{
		std::vector<std::jthread> pool;
		pool.reserve(workers);
		for (unsigned w = 0; w < workers; ++w)
			pool.emplace_back([&] {
				for (std::size_t i; !failed && (i = next++) < count;) {
					try {
						fn(i);
					} catch (...) {
						std::lock_guard lock(error_mutex);
						if (!error) error = std::current_exception();
						failed = true;
					}
				}
			});
	}
	if (error) std::rethrow_exception(error);
}

} // namespace topoprint
