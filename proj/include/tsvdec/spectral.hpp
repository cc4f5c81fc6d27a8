#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "tsvdec/field.hpp"

// Opaque FFTW handles; the implementation owns all plans and buffers.
struct fftw_plan_s;

namespace tsvdec {

/// Fourier-domain machinery for one grid size: real-to-complex transforms,
/// the symbols of the periodic forward differences d1+, d2+, and direct
/// per-frequency solvers for the two constant-coefficient systems of the
/// splitting iteration. Transforms use the half spectrum (rows x (cols/2+1));
/// conjugate symmetry keeps every solve real-valued.
///
/// Plans and scratch buffers are reused across calls, so one workspace per
/// run keeps the per-iteration cost at O(N log N). A workspace is not safe
/// for concurrent use; create one per worker thread.
class SpectralWorkspace {
public:
    /// fftThreads: 0 = one thread per hardware core, otherwise the count given.
    explicit SpectralWorkspace(int rows, int cols, int fftThreads = 1);
    ~SpectralWorkspace();

    SpectralWorkspace(const SpectralWorkspace&) = delete;
    SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int spectrumCols() const { return scols_; }

    /// Solves (I - c grad(div .) + 2*dt*alpha2 I) g = rhs.
    /// The per-frequency matrix is Hermitian positive definite for all
    /// dt, alpha2, c > 0, including the zero frequency.
    VectorField2 solve_g_constant_part(const VectorField2& rhs, double dt,
                                       double alpha2, double c);

    /// Solves the coupled structure/texture system
    ///   (dt/theta) u - lap(u) + (dt/theta) v = -div(pHalf) + (dt/theta) f
    ///   (dt/theta) u + (1 + dt/theta) v     = vHalf + (dt/theta) f
    /// by a scalar per-frequency solve for u; v is recovered from the
    /// second row, which carries no spatial operator.
    void solve_uv_system(const VectorField2& pHalf, const ScalarField& vHalf,
                         const ScalarField& f, double dt, double theta,
                         ScalarField& u, ScalarField& v);

    /// Periodic cross-correlation: out(x) = sum_s k(s) img(x+s), where k is
    /// given already wrapped onto the grid (k(s mod (M,N)) accumulated).
    ScalarField circular_correlate(const ScalarField& img, const ScalarField& kernelWrapped);

    /// Forward r2c transform into `spec` (resized as needed).
    void forward(const ScalarField& in, std::vector<std::complex<double>>& spec);
    /// Inverse c2r transform, normalized by 1/(rows*cols). Destroys `spec`.
    void inverse(std::vector<std::complex<double>>& spec, ScalarField& out);

    /// Symbol tables on the half spectrum, row-major (frequency a, b).
    const std::vector<std::complex<double>>& sym1() const { return sym1_; }
    const std::vector<std::complex<double>>& sym2() const { return sym2_; }
    /// |sym1|^2 + |sym2|^2 >= 0; the discrete Laplacian has symbol -symSq.
    const std::vector<double>& symSq() const { return symsq_; }

private:
    int rows_ = 0, cols_ = 0, scols_ = 0;

    double* rbuf_ = nullptr;           // rows x cols
    std::complex<double>* cbuf_ = nullptr; // rows x scols
    fftw_plan_s* planFwd_ = nullptr;
    fftw_plan_s* planInv_ = nullptr;

    std::vector<std::complex<double>> sym1_, sym2_;
    std::vector<double> symsq_;
    std::vector<std::complex<double>> specA_, specB_, specC_;
};

} // namespace tsvdec
