#include "lss/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace lss {

namespace {
// FFTW planning is not thread safe; execution via the new-array interface is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

std::size_t good_fft_size(std::size_t n) {
    if (n < 2) return 2;
    for (std::size_t c = n;; ++c) {
        std::size_t r = c;
        while (r % 2 == 0) r /= 2;
        while (r % 3 == 0) r /= 3;
        while (r % 5 == 0) r /= 5;
        if (r == 1) return c;
    }
}

RealConvolver::RealConvolver(const std::vector<double>& kernel, std::size_t signal_len)
    : signal_len_(signal_len) {
    if (kernel.empty() || signal_len == 0) throw std::invalid_argument("convolver: empty input");
    fft_len_ = good_fft_size(kernel.size() + signal_len - 1);
    spec_len_ = fft_len_ / 2 + 1;

    std::lock_guard<std::mutex> lock(plan_mutex());
    double* tmp = fftw_alloc_real(fft_len_);
    kernel_hat_ = reinterpret_cast<double*>(fftw_alloc_complex(spec_len_));
    if (!tmp || !kernel_hat_) throw std::bad_alloc();
    auto* fwd = fftw_plan_dft_r2c_1d(static_cast<int>(fft_len_), tmp,
                                     reinterpret_cast<fftw_complex*>(kernel_hat_), FFTW_ESTIMATE);
    auto* inv = fftw_plan_dft_c2r_1d(static_cast<int>(fft_len_),
                                     reinterpret_cast<fftw_complex*>(kernel_hat_), tmp,
                                     FFTW_ESTIMATE);
    plan_fwd_ = fwd;
    plan_inv_ = inv;

    std::memset(tmp, 0, fft_len_ * sizeof(double));
    std::memcpy(tmp, kernel.data(), kernel.size() * sizeof(double));
    fftw_execute(fwd); // fills kernel_hat_
    fftw_free(tmp);
}

RealConvolver::~RealConvolver() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_inv_) fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    if (kernel_hat_) fftw_free(kernel_hat_);
}

std::vector<double> RealConvolver::convolve(const std::vector<double>& x) const {
    if (x.size() > signal_len_) throw std::invalid_argument("convolver: signal too long");
    double* buf;
    double* spec;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        buf = fftw_alloc_real(fft_len_);
        spec = reinterpret_cast<double*>(fftw_alloc_complex(spec_len_));
    }
    if (!buf || !spec) throw std::bad_alloc();

    std::memset(buf, 0, fft_len_ * sizeof(double));
    std::memcpy(buf, x.data(), x.size() * sizeof(double));
    fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_), buf,
                         reinterpret_cast<fftw_complex*>(spec));

    const double scale = 1.0 / static_cast<double>(fft_len_);
    for (std::size_t i = 0; i < spec_len_; ++i) {
        const double re = spec[2 * i], im = spec[2 * i + 1];
        const double kre = kernel_hat_[2 * i], kim = kernel_hat_[2 * i + 1];
        spec[2 * i] = (re * kre - im * kim) * scale;
        spec[2 * i + 1] = (re * kim + im * kre) * scale;
    }

    fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_inv_),
                         reinterpret_cast<fftw_complex*>(spec), buf);
    std::vector<double> out(buf, buf + signal_len_);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_free(buf);
        fftw_free(spec);
    }
    return out;
}

} // namespace lss
