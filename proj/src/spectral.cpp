#include "tsvdec/spectral.hpp"

#include <cmath>
#include <cstring>
#include <mutex>
#include <thread>

#include <fftw3.h>

namespace tsvdec {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void init_fftw_threads(int n) {
    static std::once_flag once;
    std::call_once(once, [] { fftw_init_threads(); });
    if (n <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        n = hw > 0 ? static_cast<int>(hw) : 1;
    }
    fftw_plan_with_nthreads(n);
}

} // namespace

SpectralWorkspace::SpectralWorkspace(int rows, int cols, int fftThreads)
    : rows_(rows), cols_(cols), scols_(cols / 2 + 1) {
    if (rows < 4 || cols < 4)
        throw std::invalid_argument("SpectralWorkspace: grid must be at least 4x4");

    init_fftw_threads(fftThreads == 0 ? 0 : std::max(1, fftThreads));

    rbuf_ = fftw_alloc_real(static_cast<std::size_t>(rows_) * cols_);
    cbuf_ = reinterpret_cast<std::complex<double>*>(
        fftw_alloc_complex(static_cast<std::size_t>(rows_) * scols_));
    // FFTW_ESTIMATE keeps planning deterministic and cheap; plans are reused
    // for the whole run so measured planning buys little here.
    planFwd_ = fftw_plan_dft_r2c_2d(rows_, cols_, rbuf_,
                                    reinterpret_cast<fftw_complex*>(cbuf_), FFTW_ESTIMATE);
    planInv_ = fftw_plan_dft_c2r_2d(rows_, cols_, reinterpret_cast<fftw_complex*>(cbuf_),
                                    rbuf_, FFTW_ESTIMATE);

    const std::size_t nspec = static_cast<std::size_t>(rows_) * scols_;
    sym1_.resize(nspec);
    sym2_.resize(nspec);
    symsq_.resize(nspec);
    for (int a = 0; a < rows_; ++a) {
        const double pa = kTwoPi * a / rows_;
        const std::complex<double> s1(std::cos(pa) - 1.0, std::sin(pa));
        for (int b = 0; b < scols_; ++b) {
            const double pb = kTwoPi * b / cols_;
            const std::complex<double> s2(std::cos(pb) - 1.0, std::sin(pb));
            const std::size_t k = static_cast<std::size_t>(a) * scols_ + b;
            sym1_[k] = s1;
            sym2_[k] = s2;
            symsq_[k] = std::norm(s1) + std::norm(s2);
        }
    }
}

SpectralWorkspace::~SpectralWorkspace() {
    if (planFwd_) fftw_destroy_plan(planFwd_);
    if (planInv_) fftw_destroy_plan(planInv_);
    if (rbuf_) fftw_free(rbuf_);
    if (cbuf_) fftw_free(reinterpret_cast<fftw_complex*>(cbuf_));
}

void SpectralWorkspace::forward(const ScalarField& in, std::vector<std::complex<double>>& spec) {
    if (in.rows() != rows_ || in.cols() != cols_)
        throw std::invalid_argument("SpectralWorkspace::forward: shape mismatch");
    std::memcpy(rbuf_, in.data(), sizeof(double) * in.size());
    fftw_execute(planFwd_);
    spec.assign(cbuf_, cbuf_ + static_cast<std::size_t>(rows_) * scols_);
}

void SpectralWorkspace::inverse(std::vector<std::complex<double>>& spec, ScalarField& out) {
    std::memcpy(cbuf_, spec.data(),
                sizeof(std::complex<double>) * static_cast<std::size_t>(rows_) * scols_);
    fftw_execute(planInv_);
    if (out.rows() != rows_ || out.cols() != cols_) out = ScalarField(rows_, cols_);
    const double scale = 1.0 / (static_cast<double>(rows_) * cols_);
    double* o = out.data();
    for (std::size_t k = 0; k < out.size(); ++k) o[k] = rbuf_[k] * scale;
}

VectorField2 SpectralWorkspace::solve_g_constant_part(const VectorField2& rhs, double dt,
                                                      double alpha2, double c) {
    if (dt <= 0 || alpha2 <= 0 || c <= 0)
        throw std::invalid_argument("solve_g_constant_part: dt, alpha2, c must be positive");
    forward(rhs.c1, specA_);
    forward(rhs.c2, specB_);

    const double beta = 1.0 + 2.0 * dt * alpha2;
    const std::size_t nspec = specA_.size();
    for (std::size_t k = 0; k < nspec; ++k) {
        // A = beta*I + c * d d^H with d = (sym1, sym2); Hermitian positive definite.
        const std::complex<double> d1 = sym1_[k];
        const std::complex<double> d2 = sym2_[k];
        const double a11 = beta + c * std::norm(d1);
        const double a22 = beta + c * std::norm(d2);
        const std::complex<double> a12 = c * d1 * std::conj(d2);
        const double det = a11 * a22 - std::norm(a12);
        const std::complex<double> b1 = specA_[k];
        const std::complex<double> b2 = specB_[k];
        specA_[k] = (a22 * b1 - a12 * b2) / det;
        specB_[k] = (a11 * b2 - std::conj(a12) * b1) / det;
    }

    VectorField2 g(rows_, cols_);
    inverse(specA_, g.c1);
    inverse(specB_, g.c2);
    return g;
}

void SpectralWorkspace::solve_uv_system(const VectorField2& pHalf, const ScalarField& vHalf,
                                        const ScalarField& f, double dt, double theta,
                                        ScalarField& u, ScalarField& v) {
    if (dt <= 0 || theta <= 0)
        throw std::invalid_argument("solve_uv_system: dt and theta must be positive");
    const double T = dt / theta;

    // r1 = -div(pHalf) + T f,  r2 = vHalf + T f
    ScalarField r1 = divergence(pHalf);
    ScalarField r2(rows_, cols_);
    {
        const double* pf = f.data();
        const double* pv = vHalf.data();
        double* p1 = r1.data();
        double* p2 = r2.data();
        for (std::size_t k = 0; k < r1.size(); ++k) {
            p1[k] = -p1[k] + T * pf[k];
            p2[k] = pv[k] + T * pf[k];
        }
    }

    forward(r1, specA_);
    forward(r2, specB_);
    const std::size_t nspec = specA_.size();
    for (std::size_t k = 0; k < nspec; ++k) {
        // [T + L, T; T, 1 + T] with L = |d1|^2 + |d2|^2; det = T + L(1+T) > 0.
        const double L = symsq_[k];
        const double det = T + L * (1.0 + T);
        specA_[k] = ((1.0 + T) * specA_[k] - T * specB_[k]) / det;
    }
    inverse(specA_, u);

    // second row: v = (r2 - T u) / (1 + T)
    if (v.rows() != rows_ || v.cols() != cols_) v = ScalarField(rows_, cols_);
    const double inv1T = 1.0 / (1.0 + T);
    const double* pr2 = r2.data();
    const double* pu = u.data();
    double* pv = v.data();
    for (std::size_t k = 0; k < v.size(); ++k) pv[k] = (pr2[k] - T * pu[k]) * inv1T;
}

ScalarField SpectralWorkspace::circular_correlate(const ScalarField& img,
                                                  const ScalarField& kernelWrapped) {
    forward(kernelWrapped, specC_);
    forward(img, specA_);
    for (std::size_t k = 0; k < specA_.size(); ++k)
        specA_[k] *= std::conj(specC_[k]);
    ScalarField out;
    inverse(specA_, out);
    return out;
}

} // namespace tsvdec
