#pragma once

#include <algorithm>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace noonqec {

using cdouble = std::complex<double>;

// Binomial coefficients via Pascal's triangle; entries below 2^53 are exact.
inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    static thread_local std::vector<std::vector<double>> rows{{1.0}};
    while (static_cast<int>(rows.size()) <= n) {
        const auto& prev = rows.back();
        std::vector<double> row(prev.size() + 1, 1.0);
        for (size_t i = 1; i + 1 < row.size(); ++i) row[i] = prev[i - 1] + prev[i];
        rows.push_back(std::move(row));
    }
    return rows[n][k];
}

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Dense complex matrix, row-major. Only the small fixed-size uses needed
// here (multiport unitaries, Knill-Laflamme blocks).
class Mat {
  public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    cdouble& at(int r, int c) { return data_[r * cols_ + c]; }
    const cdouble& at(int r, int c) const { return data_[r * cols_ + c]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    Mat adjoint() const {
        Mat m(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) m.at(c, r) = std::conj(at(r, c));
        return m;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("Mat: dimension mismatch");
        Mat m(rows_, o.cols_);
        for (int r = 0; r < rows_; ++r)
            for (int k = 0; k < cols_; ++k) {
                const cdouble a = at(r, k);
                for (int c = 0; c < o.cols_; ++c) m.at(r, c) += a * o.at(k, c);
            }
        return m;
    }

    double max_abs_diff(const Mat& o) const {
        double m = 0.0;
        for (size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - o.data_[i]));
        return m;
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<cdouble> data_;
};

// Shortest 17-significant-digit decimal form; stable across runs, used for
// all CSV/text output.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline unsigned max_threads() {
    if (const char* env = std::getenv("NOONQEC_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Splits [0, n) into contiguous chunks, one worker thread per chunk.
// fn(chunk_index, begin, end) must only touch chunk-local data; callers
// merge chunk results in index order so output stays deterministic.
template <typename Fn>
void parallel_chunks(size_t n, Fn&& fn) {
    unsigned workers = std::min<size_t>(max_threads(), n ? n : 1);
    if (workers <= 1 || n < 2) {
        fn(0, size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        size_t b = w * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, w, b, e] { fn(w, b, e); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace noonqec
