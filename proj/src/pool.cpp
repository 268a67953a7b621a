#include "qsh/detail/pool.hpp"

#include <cstdlib>
#include <map>
#include <vector>

namespace qsh::detail {

namespace {

std::map<std::size_t, std::vector<void*>>& freelists() {
    static std::map<std::size_t, std::vector<void*>> lists;
    return lists;
}

}  // namespace

void* pool_acquire(std::size_t bytes) {
    if (bytes == 0) return nullptr;
    auto& list = freelists()[bytes];
    if (!list.empty()) {
        void* p = list.back();
        list.pop_back();
        return p;
    }
    return std::malloc(bytes);
}

void pool_release(void* ptr, std::size_t bytes) {
    if (!ptr) return;
    freelists()[bytes].push_back(ptr);
}

}  // namespace qsh::detail
