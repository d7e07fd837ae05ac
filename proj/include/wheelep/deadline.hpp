#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>

namespace wheelep {

class DeadlineExceeded : public std::runtime_error {
public:
    DeadlineExceeded() : std::runtime_error("deadline exceeded") {}
};

/// Cooperative cancellation point shared by long searches. A default
/// Deadline never expires.
class Deadline {
public:
    using clock = std::chrono::steady_clock;

    Deadline() = default;
    explicit Deadline(clock::time_point at) : at_(at) {}
    static Deadline after(std::chrono::duration<double> d) {
        return Deadline(clock::now() + std::chrono::duration_cast<clock::duration>(d));
    }
    static Deadline none() { return {}; }

    bool expired() const { return at_ && clock::now() >= *at_; }
    void check() const {
        if (expired()) throw DeadlineExceeded();
    }

private:
    std::optional<clock::time_point> at_;
};

/// Amortises clock reads: only every 1024th poll consults the clock.
class DeadlinePoll {
public:
    explicit DeadlinePoll(const Deadline& d) : deadline_(d) {}
    void operator()() {
        if ((++ticks_ & 1023U) == 0) deadline_.check();
    }

private:
    const Deadline& deadline_;
    unsigned ticks_ = 0;
};

}  // namespace wheelep
