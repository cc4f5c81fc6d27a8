#include "tsvdec/nlm.hpp"

#include <cmath>

namespace tsvdec {

ScalarField nlm_denoise(const ScalarField& f, int patch, int search, double h) {
    if (patch < 1 || search < 1 || patch % 2 == 0 || search % 2 == 0)
        throw std::invalid_argument("nlm_denoise: patch and search extents must be odd");
    if (h <= 0) throw std::invalid_argument("nlm_denoise: h must be positive");

    const int m = f.rows(), n = f.cols();
    const int pr = patch / 2;
    const int sr = search / 2;
    const double invh2 = 1.0 / (h * h);
    const double patchArea = static_cast<double>(patch) * patch;

    auto wrap = [](int k, int nn) {
        k %= nn;
        return k < 0 ? k + nn : k;
    };

    ScalarField out(m, n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            double wsum = 0.0, acc = 0.0;
            for (int di = -sr; di <= sr; ++di) {
                const int ci = wrap(i + di, m);
                for (int dj = -sr; dj <= sr; ++dj) {
                    const int cj = wrap(j + dj, n);
                    double d2 = 0.0;
                    for (int pi = -pr; pi <= pr; ++pi) {
                        const int ai = wrap(i + pi, m);
                        const int bi = wrap(ci + pi, m);
                        const double* ra = f.row(ai);
                        const double* rb = f.row(bi);
                        for (int pj = -pr; pj <= pr; ++pj) {
                            const double diffv =
                                ra[wrap(j + pj, n)] - rb[wrap(cj + pj, n)];
                            d2 += diffv * diffv;
                        }
                    }
                    const double w = std::exp(-d2 / patchArea * invh2);
                    wsum += w;
                    acc += w * f(ci, cj);
                }
            }
            out(i, j) = acc / wsum;
        }
    }
    return out;
}

} // namespace tsvdec
