#pragma once

#include <cstddef>
#include <vector>

namespace lss {

// Smallest 5-smooth integer >= max(n, 2) (FFT-friendly length).
std::size_t good_fft_size(std::size_t n);

// Linear convolution against a fixed kernel: out[j] = sum_m kernel[m] * x[j - m]
// for j = 0 .. signal_len - 1. The kernel transform is computed once; convolve()
// may be called concurrently from several threads.
class RealConvolver {
  public:
    RealConvolver(const std::vector<double>& kernel, std::size_t signal_len);
    ~RealConvolver();
    RealConvolver(const RealConvolver&) = delete;
    RealConvolver& operator=(const RealConvolver&) = delete;

    std::vector<double> convolve(const std::vector<double>& x) const;
    std::size_t signal_len() const { return signal_len_; }

  private:
    std::size_t signal_len_ = 0;
    std::size_t fft_len_ = 0;
    std::size_t spec_len_ = 0;
    void* plan_fwd_ = nullptr;
    void* plan_inv_ = nullptr;
    double* kernel_hat_ = nullptr; // spec_len_ interleaved complex pairs
};

} // namespace lss
