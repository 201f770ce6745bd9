#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "genkf/types.hpp"

namespace genkf {

// Periodic grid on a flat 2n-torus. Row-major point order: the last axis
// varies fastest.
class TorusGrid {
public:
    TorusGrid(int n, std::vector<int> sizes, std::vector<double> periods);
    static std::shared_ptr<const TorusGrid> make(int n, int size, double period = 1.0);
    static std::shared_ptr<const TorusGrid> make(int n, std::vector<int> sizes, std::vector<double> periods);

    int n() const { return n_; }
    int dim() const { return 2 * n_; }
    int size(int mu) const { return sizes_[mu]; }
    double period(int mu) const { return periods_[mu]; }
    double spacing(int mu) const { return periods_[mu] / sizes_[mu]; }
    std::size_t points() const { return npts_; }
    double cell_volume() const;
    const std::vector<int>& sizes() const { return sizes_; }
    const std::vector<double>& periods() const { return periods_; }

    std::vector<int> coords(std::size_t p) const;
    std::size_t index(const std::vector<int>& c) const;
    double x(std::size_t p, int mu) const;
    std::size_t plus(int mu, std::size_t p) const { return plus_[mu][p]; }
    std::size_t minus(int mu, std::size_t p) const { return minus_[mu][p]; }

    bool operator==(const TorusGrid& o) const { return n_ == o.n_ && sizes_ == o.sizes_ && periods_ == o.periods_; }

private:
    int n_;
    std::vector<int> sizes_;
    std::vector<double> periods_;
    std::vector<std::size_t> strides_;
    std::size_t npts_ = 0;
    std::vector<std::vector<std::size_t>> plus_, minus_;
};

using GridPtr = std::shared_ptr<const TorusGrid>;

// Worker cap: set_thread_cap() if called with k>0, else GENKF_THREADS, else
// hardware concurrency.
int worker_count();
void set_thread_cap(int k);

// Runs f(i) for i in [0,count) over contiguous chunks. Each i must only write
// its own output slot, so results do not depend on the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& chunk);

double pairwise_sum(const double* x, std::size_t count);
cd pairwise_sum(const cd* x, std::size_t count);
inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }
inline cd pairwise_sum(const std::vector<cd>& x) { return pairwise_sum(x.data(), x.size()); }

} // namespace genkf
