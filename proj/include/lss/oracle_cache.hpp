#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>

namespace lss {

// Read-mostly memo for pure oracle values keyed by their parameter tuple.
// Concurrent writers may race on a key; values are idempotent so the last
// writer wins.
template <typename Key>
class OracleCache {
public:
    template <typename Fn>
    double get_or_compute(const Key& key, Fn&& compute) {
        {
            std::shared_lock<std::shared_mutex> lock(mu_);
            const auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        const double value = compute();
        std::unique_lock<std::shared_mutex> lock(mu_);
        map_.insert_or_assign(key, value);
        return value;
    }

private:
    std::shared_mutex mu_;
    std::map<Key, double> map_;
};

} // namespace lss
