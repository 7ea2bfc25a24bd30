#include "chns/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace chns {

namespace {

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;
};

// FFTW planning is not thread-safe; executing a cached plan on fresh arrays
// via the new-array interface is. Plans are created FFTW_ESTIMATE so results
// do not depend on runtime timing, and FFTW_UNALIGNED so std::vector storage
// is always a valid execution target.
class PlanCache {
  public:
    static PlanPair get(std::size_t nx, std::size_t ny) {
        static PlanCache cache;
        std::lock_guard<std::mutex> lock(cache.mutex_);
        auto key = std::make_pair(nx, ny);
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end()) return it->second;

        std::vector<double> real(nx * ny);
        std::vector<std::complex<double>> cplx((nx / 2 + 1) * ny);
        PlanPair pair;
        pair.forward = fftw_plan_dft_r2c_2d(
            static_cast<int>(ny), static_cast<int>(nx), real.data(),
            reinterpret_cast<fftw_complex*>(cplx.data()), FFTW_ESTIMATE | FFTW_UNALIGNED);
        pair.inverse = fftw_plan_dft_c2r_2d(
            static_cast<int>(ny), static_cast<int>(nx),
            reinterpret_cast<fftw_complex*>(cplx.data()), real.data(),
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!pair.forward || !pair.inverse) throw std::runtime_error("FFTW plan creation failed");
        cache.plans_[key] = pair;
        return pair;
    }

  private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [key, pair] : plans_) {
            fftw_destroy_plan(pair.forward);
            fftw_destroy_plan(pair.inverse);
        }
    }
    std::mutex mutex_;
    std::map<std::pair<std::size_t, std::size_t>, PlanPair> plans_;
};

}  // namespace

Spectrum to_spectrum(const ScalarField& f) {
    const Grid& g = f.grid();
    PlanPair plans = PlanCache::get(g.nx(), g.ny());
    Spectrum out(g.spectral_size());
    // r2c out-of-place preserves the input; the const_cast is only for the C API.
    fftw_execute_dft_r2c(plans.forward, const_cast<double*>(f.data().data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

ScalarField to_field(Spectrum spectrum, const GridPtr& grid) {
    if (spectrum.size() != grid->spectral_size())
        throw std::invalid_argument("to_field: spectrum size does not match grid");
    PlanPair plans = PlanCache::get(grid->nx(), grid->ny());
    ScalarField out(grid);
    fftw_execute_dft_c2r(plans.inverse, reinterpret_cast<fftw_complex*>(spectrum.data()),
                         out.data().data());
    const double scale = 1.0 / static_cast<double>(grid->size());
    out *= scale;
    return out;
}

}  // namespace chns
