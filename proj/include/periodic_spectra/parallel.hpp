#pragma once

#include <cstddef>
#include <functional>

namespace periodic_spectra {

/// Worker count from PERIODIC_SPECTRA_THREADS, else the hardware concurrency.
int thread_count();

/// Calls body(i) for i in [0, count), split into contiguous chunks across
/// thread_count() workers. The first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace periodic_spectra
