// SPDX-License-Identifier: Apache-2.0

#ifndef MDR_PARALLEL_HPP
#define MDR_PARALLEL_HPP

#include <exception>
#include <mutex>

namespace mdr {

/// Exceptions cannot leave an OpenMP region; loop bodies run through run()
/// and the first failure is rethrown after the region ends.
class FirstError {
public:
    template <typename F>
    void run(F&& body) noexcept {
        try {
            body();
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!error_) error_ = std::current_exception();
        }
    }

    void rethrow() const {
        if (error_) std::rethrow_exception(error_);
    }

private:
    std::mutex mutex_;
    std::exception_ptr error_;
};

int worker_count();

}  // namespace mdr

#endif
