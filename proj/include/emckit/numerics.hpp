#pragma once

#include <array>
#include <complex>
#include <vector>

namespace emckit {

// Dense row-major matrix, dimensions 1..4 in each direction.
class Mat {
public:
    Mat() : rows_(0), cols_(0), a_{} {}
    Mat(int rows, int cols);
    static Mat identity(int n);
    static Mat zero(int rows, int cols) { return Mat(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int r, int c) { return a_[static_cast<size_t>(r) * 4 + c]; }
    double operator()(int r, int c) const { return a_[static_cast<size_t>(r) * 4 + c]; }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator*(double s) const;

    // Largest absolute row sum.
    double norm_inf() const;

private:
    int rows_, cols_;
    std::array<double, 16> a_;
};

using Vec = std::vector<double>;
using Complex = std::complex<double>;

Vec mat_vec(const Mat& a, const Vec& x);

// Monic polynomial with the given roots; complex roots must appear in
// conjugate pairs so the coefficients are real. Coefficients ascending,
// degree = roots.size(), leading coefficient exactly 1.
std::vector<double> poly_from_roots(const std::vector<Complex>& roots);

// Eigenvalues of a square matrix up to 3x3 via characteristic-polynomial
// closed forms, sorted by real part then imaginary part.
std::vector<Complex> eigenvalues(const Mat& m);

// Roots of a real monic polynomial (coefficients ascending, degree 1..3),
// sorted by real part then imaginary part.
std::vector<Complex> poly_roots(const std::vector<double>& coeffs);

// Solves a*x = b by Gaussian elimination with partial pivoting.
// Throws std::runtime_error when the pivot falls below 1e-12 relative to
// the matrix norm.
Vec solve_linear(const Mat& a, const Vec& b);

struct Discretization {
    Mat a_d;
    Vec b_d;
};

// Exact zero-order-hold maps over dt: a_d = exp(a_ct*dt) and
// b_d = (integral of exp(a_ct*s) ds over [0, dt]) * b_ct, both evaluated by
// scaling-and-squaring of truncated series.
Discretization zoh_discretize(const Mat& a_ct, const Vec& b_ct, double dt);

// exp(a*dt) alone, same method.
Mat expm(const Mat& a, double dt);

} // namespace emckit
