#include "genkf/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

namespace genkf {

TorusGrid::TorusGrid(int n, std::vector<int> sizes, std::vector<double> periods)
    : n_(n), sizes_(std::move(sizes)), periods_(std::move(periods))
{
    require(n >= 1 && n <= 2, ErrorKind::InvalidArgument, "torus grids support n = 1 or 2");
    require(static_cast<int>(sizes_.size()) == 2 * n && static_cast<int>(periods_.size()) == 2 * n,
            ErrorKind::DimensionMismatch, "grid needs 2n sizes and 2n periods");
    for (int mu = 0; mu < 2 * n; ++mu) {
        require(sizes_[mu] >= 8 && sizes_[mu] % 2 == 0, ErrorKind::InvalidArgument,
                "grid sizes must be even and at least 8");
        require(periods_[mu] > 0.0, ErrorKind::InvalidArgument, "grid periods must be positive");
    }
    strides_.assign(2 * n, 1);
    for (int mu = 2 * n - 2; mu >= 0; --mu) strides_[mu] = strides_[mu + 1] * sizes_[mu + 1];
    npts_ = strides_[0] * sizes_[0];
    plus_.assign(2 * n, std::vector<std::size_t>(npts_));
    minus_.assign(2 * n, std::vector<std::size_t>(npts_));
    for (std::size_t p = 0; p < npts_; ++p) {
        auto c = coords(p);
        for (int mu = 0; mu < 2 * n; ++mu) {
            auto cp = c, cm = c;
            cp[mu] = (c[mu] + 1) % sizes_[mu];
            cm[mu] = (c[mu] + sizes_[mu] - 1) % sizes_[mu];
            plus_[mu][p] = index(cp);
            minus_[mu][p] = index(cm);
        }
    }
}

std::shared_ptr<const TorusGrid> TorusGrid::make(int n, int size, double period)
{
    return std::make_shared<const TorusGrid>(n, std::vector<int>(2 * n, size), std::vector<double>(2 * n, period));
}

std::shared_ptr<const TorusGrid> TorusGrid::make(int n, std::vector<int> sizes, std::vector<double> periods)
{
    return std::make_shared<const TorusGrid>(n, std::move(sizes), std::move(periods));
}

double TorusGrid::cell_volume() const
{
    double v = 1.0;
    for (int mu = 0; mu < dim(); ++mu) v *= spacing(mu);
    return v;
}

std::vector<int> TorusGrid::coords(std::size_t p) const
{
    std::vector<int> c(dim());
    for (int mu = 0; mu < dim(); ++mu) {
        c[mu] = static_cast<int>(p / strides_[mu]);
        p %= strides_[mu];
    }
    return c;
}

std::size_t TorusGrid::index(const std::vector<int>& c) const
{
    std::size_t p = 0;
    for (int mu = 0; mu < dim(); ++mu) p += strides_[mu] * static_cast<std::size_t>(c[mu]);
    return p;
}

double TorusGrid::x(std::size_t p, int mu) const
{
    return spacing(mu) * static_cast<double>((p / strides_[mu]) % sizes_[mu]);
}

namespace {
std::atomic<int> g_cap{0};
}

void set_thread_cap(int k) { g_cap = k; }

int worker_count()
{
    if (g_cap > 0) return g_cap;
    if (const char* s = std::getenv("GENKF_THREADS")) {
        int k = std::atoi(s);
        if (k > 0) return k;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& chunk)
{
    const std::size_t workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, count / 64));
    if (workers <= 1) {
        chunk(0, count);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t step = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * step, hi = std::min(count, lo + step);
        if (lo >= hi) break;
        pool.emplace_back([&chunk, lo, hi] { chunk(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

template <class T>
static T pairwise(const T* x, std::size_t count)
{
    if (count <= 8) {
        T s = T(0);
        for (std::size_t i = 0; i < count; ++i) s += x[i];
        return s;
    }
    std::size_t h = count / 2;
    return pairwise(x, h) + pairwise(x + h, count - h);
}

double pairwise_sum(const double* x, std::size_t count) { return pairwise(x, count); }
cd pairwise_sum(const cd* x, std::size_t count) { return pairwise(x, count); }

} // namespace genkf
