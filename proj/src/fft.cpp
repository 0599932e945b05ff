#include "mntc/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>

namespace mntc::fft {

namespace {

// One cached plan pair per transform size. FFTW_ESTIMATE keeps planning
// deterministic and cheap; buffers are reused under the lock.
struct PlanEntry {
    fftw_complex *buf = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

std::mutex plan_mutex;

PlanEntry &plan_for(std::size_t n) {
    static std::map<std::size_t, PlanEntry> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        PlanEntry e;
        e.buf = fftw_alloc_complex(n);
        e.forward = fftw_plan_dft_1d(static_cast<int>(n), e.buf, e.buf, FFTW_FORWARD, FFTW_ESTIMATE);
        e.backward = fftw_plan_dft_1d(static_cast<int>(n), e.buf, e.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        it = cache.emplace(n, e).first;
    }
    return it->second;
}

std::vector<Complex> centered_transform(const std::vector<Complex> &in, bool to_sites) {
    const std::size_t n = in.size();
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("centered transform requires even size >= 2");

    std::lock_guard<std::mutex> lock(plan_mutex);
    PlanEntry &entry = plan_for(n);

    // Shifting both the mode and site origins to the array center turns the
    // raw DFT into the centered one up to (-1)^index phases and a global
    // factor i^N (real +-1 for even N).
    for (std::size_t l = 0; l < n; ++l) {
        const Complex v = (l % 2 == 0) ? in[l] : -in[l];
        entry.buf[l][0] = v.real();
        entry.buf[l][1] = v.imag();
    }
    fftw_execute(to_sites ? entry.backward : entry.forward);

    const double corner = (n % 4 == 0) ? 1.0 : -1.0;
    const double scale = corner / std::sqrt(static_cast<double>(n));
    std::vector<Complex> out(n);
    for (std::size_t m = 0; m < n; ++m) {
        Complex v(entry.buf[m][0], entry.buf[m][1]);
        if (m % 2 != 0) v = -v;
        out[m] = v * scale;
    }
    return out;
}

} // namespace

std::vector<Complex> to_sites(const std::vector<Complex> &mode_amps) {
    return centered_transform(mode_amps, true);
}

std::vector<Complex> to_modes(const std::vector<Complex> &site_amps) {
    return centered_transform(site_amps, false);
}

} // namespace mntc::fft
