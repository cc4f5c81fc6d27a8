#include "tsvdec/tsv.hpp"

#include <cmath>

#include "tsvdec/spectral.hpp"

namespace tsvdec {

double Kernel::sum() const {
    double s = 0.0;
    for (double v : w_) s += v;
    return s;
}

ScalarField Kernel::wrapped(int rows, int cols) const {
    ScalarField out(rows, cols, 0.0);
    for (int k = -radius_; k <= radius_; ++k) {
        int ik = k % rows;
        if (ik < 0) ik += rows;
        for (int l = -radius_; l <= radius_; ++l) {
            int jl = l % cols;
            if (jl < 0) jl += cols;
            out(ik, jl) += at(k, l);
        }
    }
    return out;
}

KernelCoeffs kernel_coeffs(double theta, double sigma1, double sigma2) {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double s2t = std::sin(2.0 * theta);
    KernelCoeffs c;
    c.a = ct * ct / (2.0 * sigma1) + st * st / (2.0 * sigma2);
    c.b = s2t / (4.0 * sigma1) - s2t / (4.0 * sigma2);
    c.c = st * st / (2.0 * sigma1) + ct * ct / (2.0 * sigma2);
    return c;
}

Kernel build_kernel(double theta, const TsvParams& p) {
    p.validate();
    const int R = p.radius();
    const KernelCoeffs q = kernel_coeffs(theta, p.sigma1, p.sigma2);

    Kernel ker(R);
    double total = 0.0;
    for (int k = -R; k <= R; ++k)
        for (int l = -R; l <= R; ++l) {
            const double w = std::exp(-(q.a * k * k + 2.0 * q.b * k * l + q.c * l * l));
            ker.at(k, l) = w;
            total += w;
        }
    for (int k = -R; k <= R; ++k)
        for (int l = -R; l <= R; ++l) ker.at(k, l) /= total;
    return ker;
}

const std::array<double, 4>& KernelStack::thetas() {
    static const std::array<double, 4> t = {0.0, M_PI / 2.0, M_PI / 4.0, 3.0 * M_PI / 4.0};
    return t;
}

KernelStack build_kernel_stack(const TsvParams& p) {
    const auto& th = KernelStack::thetas();
    return KernelStack{{build_kernel(th[0], p), build_kernel(th[1], p),
                        build_kernel(th[2], p), build_kernel(th[3], p)}};
}

std::array<ScalarField, 4> compute_tsv_terms(const ScalarField& f, const TsvParams& p) {
    const KernelStack ks = build_kernel_stack(p);
    SpectralWorkspace ws(f.rows(), f.cols());
    std::array<ScalarField, 4> terms;
    for (int g = 0; g < 4; ++g) {
        const ScalarField d = diff(f, g + 1, Diff::Forward);
        terms[g] = ws.circular_correlate(d, ks.k[g].wrapped(f.rows(), f.cols()));
    }
    return terms;
}

ScalarField compute_tsv(const ScalarField& f, const TsvParams& p) {
    const auto terms = compute_tsv_terms(f, p);
    ScalarField tsv(f.rows(), f.cols(), 0.0);
    for (const ScalarField& t : terms) {
        double* a = tsv.data();
        const double* b = t.data();
        for (std::size_t k = 0; k < tsv.size(); ++k) a[k] += std::abs(b[k]);
    }
    return tsv;
}

WeightField build_eta(const ScalarField& f, const TsvParams& p) {
    WeightField w;
    w.eta = compute_tsv(f, p);
    w.kappa = p.kappa;
    double* e = w.eta.data();
    for (std::size_t k = 0; k < w.eta.size(); ++k) e[k] += p.kappa;
    return w;
}

WeightField constant_eta(int rows, int cols, double value) {
    if (value <= 0) throw std::invalid_argument("constant_eta: value must be positive");
    return WeightField{ScalarField(rows, cols, value), value};
}

} // namespace tsvdec
