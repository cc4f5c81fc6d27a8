#include "oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace tsvdec::oracle {

namespace {

int wrap(int k, int n) {
    k %= n;
    return k < 0 ? k + n : k;
}

void check_size(int rows, int cols) {
    if (rows * cols > 1024)
        throw std::invalid_argument("dense oracle limited to grids of at most 1024 pixels");
}

} // namespace

DenseSystem assemble_g_dense(int rows, int cols, double dt, double alpha2, double c) {
    check_size(rows, cols);
    const int mn = rows * cols;
    DenseSystem sys;
    sys.rows = rows;
    sys.cols = cols;
    sys.A = Eigen::MatrixXd::Zero(2 * mn, 2 * mn);

    auto id = [&](int comp, int i, int j) {
        return comp * mn + wrap(i, rows) * cols + wrap(j, cols);
    };
    // coef * div(g)(i,j) = coef * (g1(i,j) - g1(i-1,j) + g2(i,j) - g2(i,j-1))
    auto add_div = [&](int row, int i, int j, double coef) {
        sys.A(row, id(0, i, j)) += coef;
        sys.A(row, id(0, i - 1, j)) -= coef;
        sys.A(row, id(1, i, j)) += coef;
        sys.A(row, id(1, i, j - 1)) -= coef;
    };

    const double beta = 1.0 + 2.0 * dt * alpha2;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            { // component 1 row: beta g1 - c (div(g)(i+1,j) - div(g)(i,j))
                const int r = id(0, i, j);
                sys.A(r, r) += beta;
                add_div(r, i + 1, j, -c);
                add_div(r, i, j, c);
            }
            { // component 2 row: beta g2 - c (div(g)(i,j+1) - div(g)(i,j))
                const int r = id(1, i, j);
                sys.A(r, r) += beta;
                add_div(r, i, j + 1, -c);
                add_div(r, i, j, c);
            }
        }
    return sys;
}

DenseSystem assemble_uv_dense(int rows, int cols, double dt, double theta) {
    check_size(rows, cols);
    const int mn = rows * cols;
    DenseSystem sys;
    sys.rows = rows;
    sys.cols = cols;
    sys.A = Eigen::MatrixXd::Zero(2 * mn, 2 * mn);

    auto id = [&](int comp, int i, int j) {
        return comp * mn + wrap(i, rows) * cols + wrap(j, cols);
    };
    const double T = dt / theta;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const int ru = id(0, i, j);
            // (T - lap) u + T v, five-point periodic Laplacian
            sys.A(ru, ru) += T + 4.0;
            sys.A(ru, id(0, i + 1, j)) -= 1.0;
            sys.A(ru, id(0, i - 1, j)) -= 1.0;
            sys.A(ru, id(0, i, j + 1)) -= 1.0;
            sys.A(ru, id(0, i, j - 1)) -= 1.0;
            sys.A(ru, id(1, i, j)) += T;

            const int rv = id(1, i, j);
            sys.A(rv, id(0, i, j)) += T;
            sys.A(rv, rv) += 1.0 + T;
        }
    return sys;
}

Eigen::VectorXd dense_solve(const DenseSystem& sys, const Eigen::VectorXd& b) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.A);
    Eigen::VectorXd x = lu.solve(b);
    x += lu.solve(b - sys.A * x); // one refinement pass
    return x;
}

Eigen::VectorXd flatten2(const VectorField2& g) {
    const int mn = g.rows() * g.cols();
    Eigen::VectorXd x(2 * mn);
    for (int k = 0; k < mn; ++k) {
        x[k] = g.c1.data()[k];
        x[mn + k] = g.c2.data()[k];
    }
    return x;
}

VectorField2 unflatten2(const Eigen::VectorXd& x, int rows, int cols) {
    const int mn = rows * cols;
    VectorField2 g(rows, cols);
    for (int k = 0; k < mn; ++k) {
        g.c1.data()[k] = x[k];
        g.c2.data()[k] = x[mn + k];
    }
    return g;
}

Eigen::VectorXd flatten_pair(const ScalarField& a, const ScalarField& b) {
    const int mn = a.rows() * a.cols();
    Eigen::VectorXd x(2 * mn);
    for (int k = 0; k < mn; ++k) {
        x[k] = a.data()[k];
        x[mn + k] = b.data()[k];
    }
    return x;
}

std::array<ScalarField, 4> tsv_bruteforce_terms(const ScalarField& f, const TsvParams& p) {
    const int m = f.rows(), n = f.cols();
    if (m > 64 || n > 64)
        throw std::invalid_argument("tsv_bruteforce limited to at most 64x64");
    const int R = p.window / 2;

    // directional steps and kernel weights, written out independently
    const int stepI[4] = {1, 0, 1, 1};
    const int stepJ[4] = {0, 1, 1, -1};
    const double thetas[4] = {0.0, M_PI / 2.0, M_PI / 4.0, 3.0 * M_PI / 4.0};

    std::array<ScalarField, 4> terms;
    for (int g = 0; g < 4; ++g) {
        const double ct = std::cos(thetas[g]), st = std::sin(thetas[g]);
        const double a = ct * ct / (2.0 * p.sigma1) + st * st / (2.0 * p.sigma2);
        const double b =
            std::sin(2.0 * thetas[g]) / (4.0 * p.sigma1) - std::sin(2.0 * thetas[g]) / (4.0 * p.sigma2);
        const double c = st * st / (2.0 * p.sigma1) + ct * ct / (2.0 * p.sigma2);

        double norm = 0.0;
        for (int dk = -R; dk <= R; ++dk)
            for (int dl = -R; dl <= R; ++dl)
                norm += std::exp(-(a * dk * dk + 2.0 * b * dk * dl + c * dl * dl));

        terms[g] = ScalarField(m, n, 0.0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int dk = -R; dk <= R; ++dk)
                    for (int dl = -R; dl <= R; ++dl) {
                        const double w =
                            std::exp(-(a * dk * dk + 2.0 * b * dk * dl + c * dl * dl)) / norm;
                        const int ci = wrap(i + dk, m);
                        const int cj = wrap(j + dl, n);
                        const double d = f(wrap(ci + stepI[g], m), wrap(cj + stepJ[g], n)) - f(ci, cj);
                        s += w * d;
                    }
                terms[g](i, j) = s;
            }
    }
    return terms;
}

ScalarField tsv_bruteforce(const ScalarField& f, const TsvParams& p) {
    const auto terms = tsv_bruteforce_terms(f, p);
    ScalarField tsv(f.rows(), f.cols(), 0.0);
    for (const auto& t : terms)
        for (std::size_t k = 0; k < tsv.size(); ++k) tsv.data()[k] += std::abs(t.data()[k]);
    return tsv;
}

std::array<double, 2> prox_numeric(double p1, double p2, double threshold) {
    const double mag = std::sqrt(p1 * p1 + p2 * p2);
    if (mag == 0.0) return {0.0, 0.0};

    // h(r) = 0.5 (r - mag)^2 + threshold r on [0, mag]; coarse scan, then
    // bisect the derivative
    auto h = [&](double r) { return 0.5 * (r - mag) * (r - mag) + threshold * r; };
    const int grid = 512;
    double best = 0.0, bestVal = h(0.0);
    for (int k = 1; k <= grid; ++k) {
        const double r = mag * k / grid;
        if (h(r) < bestVal) {
            bestVal = h(r);
            best = r;
        }
    }
    double lo = std::max(0.0, best - mag / grid);
    double hi = std::min(mag, best + mag / grid);
    while (hi - lo > 1e-8 * std::max(1.0, mag)) {
        const double mid = 0.5 * (lo + hi);
        const double slope = (mid - mag) + threshold;
        if (slope > 0)
            hi = mid;
        else
            lo = mid;
    }
    const double r = 0.5 * (lo + hi);
    return {r * p1 / mag, r * p2 / mag};
}

} // namespace tsvdec::oracle
