#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <set>
#include <string>

namespace rdc {

// Record of every place an evaluation cut an infinite sum short.
struct TruncationLog {
    std::mutex m;
    std::set<std::string> sites;
    void hit(const std::string& site)
    {
        std::lock_guard lock(m);
        sites.insert(site);
    }
    bool any()
    {
        std::lock_guard lock(m);
        return !sites.empty();
    }
    std::set<std::string> snapshot()
    {
        std::lock_guard lock(m);
        return sites;
    }
};

// Internal levels for the infinite sums: extra bag degree when a cap or a transpose
// must enumerate a bang object, and the number of parts delta may produce.
struct Truncation {
    std::size_t slack = 2;
    std::size_t delta_parts = 6;
    std::shared_ptr<TruncationLog> log = std::make_shared<TruncationLog>();

    static Truncation& current() { return *slot(); }

    static Truncation*& slot()
    {
        static Truncation fallback;
        thread_local Truncation* p = &fallback;
        return p;
    }
};

// Installs a truncation setting for the current thread.
class TruncationScope {
public:
    explicit TruncationScope(Truncation t) : saved_(Truncation::slot()), mine_(std::move(t)) { Truncation::slot() = &mine_; }
    ~TruncationScope() { Truncation::slot() = saved_; }
    TruncationScope(const TruncationScope&) = delete;
    TruncationScope& operator=(const TruncationScope&) = delete;

private:
    Truncation* saved_;
    Truncation mine_;
};

}  // namespace rdc
