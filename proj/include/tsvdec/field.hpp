#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tsvdec {

/// Real-valued samples on an M x N periodic grid, stored row-major.
/// Index (i, j): i runs along axis 1 (rows), j along axis 2 (columns).
/// All difference operators in this library wrap around both axes.
class ScalarField {
public:
    ScalarField() = default;

    ScalarField(int rows, int cols, double value = 0.0)
        : rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), value) {
        if (rows < 4 || cols < 4)
            throw std::invalid_argument("ScalarField: grid must be at least 4x4");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(int i, int j) {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }
    double operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    double* row(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }
    const double* row(int i) const { return data_.data() + static_cast<std::size_t>(i) * cols_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool same_shape(const ScalarField& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Pair of equally sized scalar fields; holds the vector-valued iterates
/// (the divergence field g and the gradient surrogate p).
struct VectorField2 {
    ScalarField c1, c2;

    VectorField2() = default;
    VectorField2(int rows, int cols, double value = 0.0)
        : c1(rows, cols, value), c2(rows, cols, value) {}
    VectorField2(ScalarField a, ScalarField b) : c1(std::move(a)), c2(std::move(b)) {
        if (!c1.same_shape(c2))
            throw std::invalid_argument("VectorField2: component dimensions differ");
    }

    int rows() const { return c1.rows(); }
    int cols() const { return c1.cols(); }
};

enum class Diff { Forward, Backward };

/// Periodic difference along one of four directions:
/// axis 1 steps (1,0), axis 2 steps (0,1), axis 3 steps (1,1), axis 4 steps (1,-1).
ScalarField diff(const ScalarField& f, int axis, Diff dir);

/// Forward-difference gradient (d1+ f, d2+ f).
VectorField2 gradient(const ScalarField& f);

/// Backward-difference divergence d1- c1 + d2- c2, the negative adjoint of gradient().
ScalarField divergence(const VectorField2& g);

double field_min(const ScalarField& f);
double field_max(const ScalarField& f);
double field_sum(const ScalarField& f);
double field_mean(const ScalarField& f);
double max_abs(const ScalarField& f);
bool all_finite(const ScalarField& f);

} // namespace tsvdec
