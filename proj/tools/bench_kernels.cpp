#include "copd/kernels.hpp"
#include "copd/rng.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

copd::Matrix random_matrix(std::size_t rows, std::size_t cols, copd::Rng& rng) {
    copd::Matrix m(rows, cols);
    for (double& v : m.data) v = rng.uniform(-2.0, 2.0);
    return m;
}

copd::Csr random_csr(std::size_t n, std::size_t per_row, copd::Rng& rng) {
    copd::Csr w;
    w.rows = n;
    w.cols = n;
    w.indptr.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        w.indptr[i + 1] = w.indptr[i] + per_row;
        std::size_t start = static_cast<std::size_t>(rng.bounded(n));
        for (std::size_t j = 0; j < per_row; ++j) {
            w.indices.push_back((start + j * 7) % n);
            w.values.push_back(1.0);
        }
    }
    return w;
}

double time_ms(const std::function<void()>& fn, int reps) {
    fn(); // warm-up
    auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

void report(const std::string& name, double serial_ms, double parallel_ms) {
    std::printf("%-22s serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx\n",
                name.c_str(), serial_ms, parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main(int argc, char** argv) {
    std::size_t n = argc > 1 ? static_cast<std::size_t>(std::stoul(argv[1])) : 1500;
    int reps = argc > 2 ? std::stoi(argv[2]) : 3;

#ifdef _OPENMP
    std::printf("threads: %d, n = %zu, reps = %d\n", omp_get_max_threads(), n, reps);
#else
    std::printf("OpenMP disabled, n = %zu, reps = %d\n", n, reps);
#endif

    copd::Rng rng = copd::derive_stream(7, "bench");
    copd::Matrix X = random_matrix(n, 10, rng);
    copd::Matrix F = random_matrix(n, 2, rng);
    copd::Matrix W;
    copd::kernels::serial::rbf_affinity(X, 0.1, W);
    copd::Csr S = random_csr(n, 14, rng);
    copd::Matrix out;
    std::vector<double> row;

    report("rbf_affinity",
           time_ms([&] { copd::kernels::serial::rbf_affinity(X, 0.1, out); }, reps),
           time_ms([&] { copd::kernels::rbf_affinity(X, 0.1, out); }, reps));
    report("pairwise_sq_dists",
           time_ms([&] { copd::kernels::serial::pairwise_sq_dists(X, X, out); }, reps),
           time_ms([&] { copd::kernels::pairwise_sq_dists(X, X, out); }, reps));
    report("dense_multiply",
           time_ms([&] { copd::kernels::serial::dense_multiply(W, F, out); }, reps),
           time_ms([&] { copd::kernels::dense_multiply(W, F, out); }, reps));
    report("csr_multiply",
           time_ms([&] { copd::kernels::serial::csr_multiply(S, F, out); }, reps),
           time_ms([&] { copd::kernels::csr_multiply(S, F, out); }, reps));
    report("rbf_kernel_row",
           time_ms([&] { copd::kernels::serial::rbf_kernel_row(X, 0, 0.1, row); }, reps),
           time_ms([&] { copd::kernels::rbf_kernel_row(X, 0, 0.1, row); }, reps));
    return 0;
}
