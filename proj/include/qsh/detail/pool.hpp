#ifndef QSH_DETAIL_POOL_HPP
#define QSH_DETAIL_POOL_HPP

#include <cstddef>
#include <cstring>
#include <utility>

namespace qsh::detail {

// Freelist of exact-size blocks. Field buffers churn heavily inside the RK4
// stages; recycling keeps the pages warm instead of bouncing them through
// the OS on every construction. Single-threaded, process lifetime.
void* pool_acquire(std::size_t bytes);
void pool_release(void* ptr, std::size_t bytes);

/// Minimal trivially-typed buffer backed by the pool. `zero` controls
/// whether the contents start as zeros; pass false when every entry is
/// written before it is read.
template <class T>
class PoolVector {
  public:
    PoolVector() = default;
    explicit PoolVector(std::size_t n, bool zero = true) : n_(n) {
        p_ = static_cast<T*>(pool_acquire(n * sizeof(T)));
        if (zero) std::memset(static_cast<void*>(p_), 0, n * sizeof(T));
    }
    PoolVector(const PoolVector& o) : PoolVector(o.n_, false) {
        std::memcpy(static_cast<void*>(p_), o.p_, n_ * sizeof(T));
    }
    PoolVector(PoolVector&& o) noexcept : p_(o.p_), n_(o.n_) {
        o.p_ = nullptr;
        o.n_ = 0;
    }
    PoolVector& operator=(const PoolVector& o) {
        if (this != &o) {
            if (n_ != o.n_) {
                release();
                p_ = static_cast<T*>(pool_acquire(o.n_ * sizeof(T)));
                n_ = o.n_;
            }
            std::memcpy(static_cast<void*>(p_), o.p_, n_ * sizeof(T));
        }
        return *this;
    }
    PoolVector& operator=(PoolVector&& o) noexcept {
        if (this != &o) {
            release();
            p_ = std::exchange(o.p_, nullptr);
            n_ = std::exchange(o.n_, 0);
        }
        return *this;
    }
    ~PoolVector() { release(); }

    T* data() { return p_; }
    const T* data() const { return p_; }
    std::size_t size() const { return n_; }
    T& operator[](std::size_t i) { return p_[i]; }
    const T& operator[](std::size_t i) const { return p_[i]; }
    T* begin() { return p_; }
    T* end() { return p_ + n_; }
    const T* begin() const { return p_; }
    const T* end() const { return p_ + n_; }

  private:
    void release() {
        if (p_) pool_release(p_, n_ * sizeof(T));
        p_ = nullptr;
        n_ = 0;
    }
    T* p_ = nullptr;
    std::size_t n_ = 0;
};

}  // namespace qsh::detail

#endif
