#include "tsvdec/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsvdec {

namespace {

inline int wrap(int k, int n) {
    if (k >= n) return k - n;
    if (k < 0) return k + n;
    return k;
}

void axis_step(int axis, int& di, int& dj) {
    switch (axis) {
    case 1: di = 1; dj = 0; break;
    case 2: di = 0; dj = 1; break;
    case 3: di = 1; dj = 1; break;
    case 4: di = 1; dj = -1; break;
    default:
        throw std::invalid_argument("diff: axis must be 1, 2, 3 or 4");
    }
}

} // namespace

ScalarField diff(const ScalarField& f, int axis, Diff dir) {
    int di = 0, dj = 0;
    axis_step(axis, di, dj);

    const int m = f.rows(), n = f.cols();
    const bool fwd = (dir == Diff::Forward);
    // forward: f(i+d) - f(i); backward: f(i) - f(i-d)
    if (!fwd) { di = -di; dj = -dj; }

    ScalarField out(m, n);
    for (int i = 0; i < m; ++i) {
        const double* cur = f.row(i);
        const double* sh = f.row(wrap(i + di, m));
        double* o = out.row(i);
        if (dj == 0) {
            if (fwd)
                for (int j = 0; j < n; ++j) o[j] = sh[j] - cur[j];
            else
                for (int j = 0; j < n; ++j) o[j] = cur[j] - sh[j];
        } else {
            for (int j = 0; j < n; ++j) {
                const double s = sh[wrap(j + dj, n)];
                o[j] = fwd ? s - cur[j] : cur[j] - s;
            }
        }
    }
    return out;
}

VectorField2 gradient(const ScalarField& f) {
    return VectorField2(diff(f, 1, Diff::Forward), diff(f, 2, Diff::Forward));
}

ScalarField divergence(const VectorField2& g) {
    ScalarField d1 = diff(g.c1, 1, Diff::Backward);
    const ScalarField d2 = diff(g.c2, 2, Diff::Backward);
    const int m = d1.rows(), n = d1.cols();
    for (int i = 0; i < m; ++i) {
        double* a = d1.row(i);
        const double* b = d2.row(i);
        for (int j = 0; j < n; ++j) a[j] += b[j];
    }
    return d1;
}

double field_min(const ScalarField& f) {
    return *std::min_element(f.data(), f.data() + f.size());
}

double field_max(const ScalarField& f) {
    return *std::max_element(f.data(), f.data() + f.size());
}

double field_sum(const ScalarField& f) {
    return std::accumulate(f.data(), f.data() + f.size(), 0.0);
}

double field_mean(const ScalarField& f) {
    return field_sum(f) / static_cast<double>(f.size());
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    const double* p = f.data();
    for (std::size_t k = 0; k < f.size(); ++k) m = std::max(m, std::abs(p[k]));
    return m;
}

bool all_finite(const ScalarField& f) {
    const double* p = f.data();
    for (std::size_t k = 0; k < f.size(); ++k)
        if (!std::isfinite(p[k])) return false;
    return true;
}

} // namespace tsvdec
