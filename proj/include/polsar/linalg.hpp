#pragma once

// Small dense complex linear algebra for polarimetric covariance matrices.
//
// Pixel covariances are at most 4x4 (quad-pol without reciprocity), so every
// square matrix lives in inline storage and is cheap to copy. Anything larger
// (Kronecker products) uses the heap-backed ComplexMatrix.

#include <array>
#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace polsar {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 4;

/// Relative tolerance used when validating Hermitian symmetry of inputs.
inline constexpr double kHermitianTolerance = 1e-9;

/// General m x m complex matrix, m <= kMaxDim, row-major inline storage.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(int dim);

    static SquareMatrix identity(int dim);

    int dim() const noexcept { return dim_; }

    Complex& operator()(int r, int c) noexcept { return a_[r * kMaxDim + c]; }
    const Complex& operator()(int r, int c) const noexcept { return a_[r * kMaxDim + c]; }

    SquareMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;

    SquareMatrix& operator+=(const SquareMatrix& o);
    SquareMatrix& operator-=(const SquareMatrix& o);
    SquareMatrix& operator*=(Complex s);

    friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
    friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
    friend SquareMatrix operator*(SquareMatrix a, Complex s) { return a *= s; }
    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);

private:
    int dim_ = 0;
    std::array<Complex, kMaxDim * kMaxDim> a_{};
};

/// Hermitian matrix. Construction from arbitrary data validates symmetry to
/// kHermitianTolerance (relative to the largest entry) and then stores the
/// exact Hermitian part (A + A*) / 2. Every mutating operation preserves the
/// property.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(int dim);

    /// Throws DomainError if `a` is not Hermitian within tolerance.
    explicit HermitianMatrix(const SquareMatrix& a);

    static HermitianMatrix identity(int dim);
    static HermitianMatrix diagonal(std::initializer_list<double> d);
    static HermitianMatrix diagonal(std::span<const double> d);
    /// Row-major full entries; must be Hermitian within tolerance.
    static HermitianMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    /// Upper triangle given row-major (diagonal imaginary parts ignored).
    static HermitianMatrix from_upper(int dim, std::span<const Complex> upper);
    /// Skips validation; `a` must already be exactly Hermitian.
    static HermitianMatrix unchecked(const SquareMatrix& a);

    int dim() const noexcept { return m_.dim(); }
    const Complex& operator()(int r, int c) const noexcept { return m_(r, c); }
    const SquareMatrix& matrix() const noexcept { return m_; }

    double trace() const;
    double frobenius_norm() const { return m_.frobenius_norm(); }

    /// Sets entry (r, c) and its mirror; diagonal values keep only the real part.
    void set(int r, int c, Complex v);

    HermitianMatrix& operator+=(const HermitianMatrix& o);
    HermitianMatrix& operator-=(const HermitianMatrix& o);
    HermitianMatrix& operator*=(double s);
    HermitianMatrix& operator/=(double s);

    friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
    friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
    friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
    friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
    friend HermitianMatrix operator/(HermitianMatrix a, double s) { return a /= s; }

    friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b);

private:
    SquareMatrix m_;
};

/// Relative Frobenius distance ||a - b|| / max(||b||, tiny).
double relative_difference(const SquareMatrix& a, const SquareMatrix& b);

/// Lower-triangular Cholesky factor L with L L* = A and a real, positive diagonal.
class LowerTriangularFactor {
public:
    explicit LowerTriangularFactor(SquareMatrix l) : l_(l) {}

    int dim() const noexcept { return l_.dim(); }
    const SquareMatrix& matrix() const noexcept { return l_; }
    double diag(int i) const noexcept { return l_(i, i).real(); }

    /// L L*.
    HermitianMatrix reconstruct() const;

private:
    SquareMatrix l_;
};

/// Throws NotPositiveDefinite when a pivot is non-positive or non-finite.
LowerTriangularFactor cholesky(const HermitianMatrix& a);

double log_det(const LowerTriangularFactor& f);
double log_det(const HermitianMatrix& a);

HermitianMatrix inverse(const LowerTriangularFactor& f);
HermitianMatrix inverse(const HermitianMatrix& a);

/// Re tr(A B). Throws DimensionMismatch.
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b);

/// A B A* for Hermitian B; the congruence keeps the result Hermitian.
HermitianMatrix congruence(const SquareMatrix& a, const HermitianMatrix& b);

/// Heap-backed rectangular complex matrix, column-major.
class ComplexMatrix {
public:
    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    Complex& operator()(int r, int c) { return a_[c * rows_ + r]; }
    const Complex& operator()(int r, int c) const { return a_[c * rows_ + r]; }

private:
    int rows_;
    int cols_;
    std::vector<Complex> a_;
};

/// Column-stacking vectorization.
std::vector<Complex> vec(const SquareMatrix& a);
inline std::vector<Complex> vec(const HermitianMatrix& a) { return vec(a.matrix()); }

ComplexMatrix kron(const SquareMatrix& a, const SquareMatrix& b);

/// x* K x.
Complex quadratic_form(std::span<const Complex> x, const ComplexMatrix& k);

}  // namespace polsar
