#include "emckit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emckit {

namespace {

void check_dims(int rows, int cols) {
    if (rows < 1 || rows > 4 || cols < 1 || cols > 4)
        throw std::invalid_argument("Mat dimensions must be within 1..4");
}

bool complex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

std::vector<Complex> quadratic_roots(double b, double c) {
    // z^2 + b z + c = 0
    const double disc = b * b - 4.0 * c;
    std::vector<Complex> r;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        // Stable form: compute the larger-magnitude root first.
        const double q = -0.5 * (b + std::copysign(s, b));
        double r1, r2;
        if (q != 0.0) {
            r1 = q;
            r2 = c / q;
        } else {
            r1 = -0.5 * b + 0.5 * s;
            r2 = -0.5 * b - 0.5 * s;
        }
        r = {Complex(r1, 0.0), Complex(r2, 0.0)};
    } else {
        const double re = -0.5 * b;
        const double im = 0.5 * std::sqrt(-disc);
        r = {Complex(re, -im), Complex(re, im)};
    }
    std::sort(r.begin(), r.end(), complex_less);
    return r;
}

std::vector<Complex> cubic_roots(double b, double c, double d) {
    // z^3 + b z^2 + c z + d = 0, depressed via z = t - b/3.
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double shift = -b / 3.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    std::vector<Complex> r;
    if (disc > 0.0) {
        // One real root, one conjugate pair.
        const double s = std::sqrt(disc);
        const double u = std::cbrt(-q / 2.0 + s);
        const double v = std::cbrt(-q / 2.0 - s);
        const double t1 = u + v;
        const double re = -t1 / 2.0;
        const double im = std::sqrt(3.0) / 2.0 * (u - v);
        r = {Complex(t1 + shift, 0.0), Complex(re + shift, im), Complex(re + shift, -im)};
    } else if (p == 0.0 && q == 0.0) {
        r = {Complex(shift, 0.0), Complex(shift, 0.0), Complex(shift, 0.0)};
    } else {
        // Three real roots (trigonometric form).
        const double m = 2.0 * std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (p * m);
        arg = std::clamp(arg, -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            const double t = m * std::cos(theta - 2.0 * M_PI * k / 3.0);
            r.emplace_back(t + shift, 0.0);
        }
    }
    std::sort(r.begin(), r.end(), complex_less);
    return r;
}

} // namespace

Mat::Mat(int rows, int cols) : rows_(rows), cols_(cols), a_{} {
    check_dims(rows, cols);
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat size mismatch in +");
    Mat r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j) + o(i, j);
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat size mismatch in -");
    Mat r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j) - o(i, j);
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Mat size mismatch in *");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < o.cols_; ++j) {
            double s = 0.0;
            for (int k = 0; k < cols_; ++k) s += (*this)(i, k) * o(k, j);
            r(i, j) = s;
        }
    return r;
}

Mat Mat::operator*(double s) const {
    Mat r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j) * s;
    return r;
}

double Mat::norm_inf() const {
    double best = 0.0;
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

Vec mat_vec(const Mat& a, const Vec& x) {
    if (static_cast<int>(x.size()) != a.cols()) throw std::invalid_argument("mat_vec size mismatch");
    Vec y(static_cast<size_t>(a.rows()), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = s;
    }
    return y;
}

std::vector<double> poly_from_roots(const std::vector<Complex>& roots) {
    constexpr double kPairTol = 1e-12;
    std::vector<double> coeffs{1.0};
    std::vector<bool> used(roots.size(), false);
    auto multiply_linear = [&coeffs](double r) {
        // coeffs *= (z - r)
        std::vector<double> next(coeffs.size() + 1, 0.0);
        for (size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] += coeffs[i];
            next[i] -= r * coeffs[i];
        }
        coeffs = std::move(next);
    };
    auto multiply_quadratic = [&coeffs](double b, double c) {
        // coeffs *= (z^2 + b z + c)
        std::vector<double> next(coeffs.size() + 2, 0.0);
        for (size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 2] += coeffs[i];
            next[i + 1] += b * coeffs[i];
            next[i] += c * coeffs[i];
        }
        coeffs = std::move(next);
    };
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        const Complex& r = roots[i];
        if (std::abs(r.imag()) <= kPairTol * std::max(1.0, std::abs(r.real()))) {
            multiply_linear(r.real());
            used[i] = true;
            continue;
        }
        bool paired = false;
        for (size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            const Complex& s = roots[j];
            const double scale = std::max(1.0, std::abs(r));
            if (std::abs(s.real() - r.real()) <= kPairTol * scale &&
                std::abs(s.imag() + r.imag()) <= kPairTol * scale) {
                multiply_quadratic(-2.0 * r.real(), std::norm(r));
                used[i] = used[j] = true;
                paired = true;
                break;
            }
        }
        if (!paired) throw std::invalid_argument("poly_from_roots: complex root without conjugate pair");
    }
    return coeffs;
}

std::vector<Complex> poly_roots(const std::vector<double>& coeffs) {
    if (coeffs.empty() || coeffs.back() == 0.0)
        throw std::invalid_argument("poly_roots: polynomial must be monic with nonzero leading coefficient");
    const size_t deg = coeffs.size() - 1;
    const double lead = coeffs.back();
    switch (deg) {
        case 1:
            return {Complex(-coeffs[0] / lead, 0.0)};
        case 2:
            return quadratic_roots(coeffs[1] / lead, coeffs[0] / lead);
        case 3:
            return cubic_roots(coeffs[2] / lead, coeffs[1] / lead, coeffs[0] / lead);
        default:
            throw std::invalid_argument("poly_roots: degree must be 1..3");
    }
}

std::vector<Complex> eigenvalues(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
    const int n = m.rows();
    switch (n) {
        case 1:
            return {Complex(m(0, 0), 0.0)};
        case 2: {
            const double tr = m(0, 0) + m(1, 1);
            const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
            return quadratic_roots(-tr, det);
        }
        case 3: {
            const double tr = m(0, 0) + m(1, 1) + m(2, 2);
            const double m00 = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
            const double m11 = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
            const double m22 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
            const double det = m(0, 0) * m00 - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
            // det(zI - m) = z^3 - tr z^2 + (sum of principal minors) z - det
            return cubic_roots(-tr, m00 + m11 + m22, -det);
        }
        default:
            throw std::invalid_argument("eigenvalues: dimension must be 1..3");
    }
}

Vec solve_linear(const Mat& a, const Vec& b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve_linear: matrix must be square");
    const int n = a.rows();
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("solve_linear: rhs size mismatch");
    const double scale = std::max(a.norm_inf(), 1e-300);
    Mat u = a;
    Vec x = b;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(u(r, col)) > std::abs(u(piv, col))) piv = r;
        if (std::abs(u(piv, col)) <= 1e-12 * scale)
            throw std::runtime_error("solve_linear: matrix singular to working precision (pivot " +
                                     std::to_string(u(piv, col)) + " vs norm " + std::to_string(scale) + ")");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(u(col, j), u(piv, j));
            std::swap(x[static_cast<size_t>(col)], x[static_cast<size_t>(piv)]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = u(r, col) / u(col, col);
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) u(r, j) -= f * u(col, j);
            x[static_cast<size_t>(r)] -= f * x[static_cast<size_t>(col)];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = x[static_cast<size_t>(r)];
        for (int j = r + 1; j < n; ++j) s -= u(r, j) * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(r)] = s / u(r, r);
    }
    return x;
}

namespace {

// exp(M) and integral of exp(M s) ds over [0, h] for the scaled argument,
// by truncated series; caller guarantees ||M|| < 0.5.
void series_exp_and_integral(const Mat& m, double h, Mat& e, Mat& s) {
    const int n = m.rows();
    constexpr int kTerms = 16;
    e = Mat::identity(n);
    // s = h * sum_j (m)^j / (j+1)!  with m already scaled by h.
    s = Mat::identity(n) * h;
    Mat power = Mat::identity(n);
    double fact = 1.0;
    for (int j = 1; j <= kTerms; ++j) {
        power = power * m;
        fact *= static_cast<double>(j);
        e = e + power * (1.0 / fact);
        s = s + power * (h / (fact * static_cast<double>(j + 1)));
    }
}

} // namespace

Discretization zoh_discretize(const Mat& a_ct, const Vec& b_ct, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("zoh_discretize: dt must be positive");
    if (a_ct.rows() != a_ct.cols()) throw std::invalid_argument("zoh_discretize: matrix must be square");
    const int n = a_ct.rows();
    Mat scaled = a_ct * dt;
    int halvings = 0;
    double h = dt;
    while (scaled.norm_inf() >= 0.5 && halvings < 60) {
        scaled = scaled * 0.5;
        h *= 0.5;
        ++halvings;
    }
    Mat e(n, n), s(n, n);
    series_exp_and_integral(scaled, h, e, s);
    for (int k = 0; k < halvings; ++k) {
        // Over a doubled interval: E' = E*E, S' = (I + E)*S.
        s = (Mat::identity(n) + e) * s;
        e = e * e;
    }
    return {e, mat_vec(s, b_ct)};
}

Mat expm(const Mat& a, double dt) {
    Vec zero(static_cast<size_t>(a.rows()), 0.0);
    return zoh_discretize(a, zero, dt).a_d;
}

} // namespace emckit
