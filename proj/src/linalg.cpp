#include "polsar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "polsar/error.hpp"

namespace polsar {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::Domain: return "DomainError";
        case ErrorKind::EmptySample: return "EmptySample";
        case ErrorKind::LooksMismatch: return "LooksMismatch";
        case ErrorKind::StripTooShort: return "StripTooShort";
        case ErrorKind::AllCandidatesDegenerate: return "AllCandidatesDegenerate";
        case ErrorKind::OutOfBounds: return "OutOfBounds";
        case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
        case ErrorKind::BadMagic: return "BadMagic";
        case ErrorKind::TruncatedFile: return "TruncatedFile";
        case ErrorKind::HeaderMismatch: return "HeaderMismatch";
        case ErrorKind::BadLength: return "BadLength";
        case ErrorKind::WrongDim: return "WrongDim";
        case ErrorKind::Parse: return "ParseError";
    }
    return "Error";
}

namespace {

void check_dim(int dim) {
    if (dim < 1 || dim > kMaxDim) {
        throw DimensionMismatch("matrix dimension " + std::to_string(dim) +
                                " outside [1, " + std::to_string(kMaxDim) + "]");
    }
}

void require_same_dim(int a, int b) {
    if (a != b) {
        throw DimensionMismatch("dimension mismatch: " + std::to_string(a) + " vs " +
                                std::to_string(b));
    }
}

}  // namespace

// ---------------------------------------------------------------- SquareMatrix

SquareMatrix::SquareMatrix(int dim) : dim_(dim) { check_dim(dim); }

SquareMatrix SquareMatrix::identity(int dim) {
    SquareMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

SquareMatrix SquareMatrix::adjoint() const {
    SquareMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

Complex SquareMatrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double SquareMatrix::frobenius_norm() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) s += std::norm((*this)(i, j));
    return std::sqrt(s);
}

SquareMatrix& SquareMatrix::operator+=(const SquareMatrix& o) {
    require_same_dim(dim_, o.dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) (*this)(i, j) += o(i, j);
    return *this;
}

SquareMatrix& SquareMatrix::operator-=(const SquareMatrix& o) {
    require_same_dim(dim_, o.dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) (*this)(i, j) -= o(i, j);
    return *this;
}

SquareMatrix& SquareMatrix::operator*=(Complex s) {
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) (*this)(i, j) *= s;
    return *this;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    require_same_dim(a.dim(), b.dim());
    const int m = a.dim();
    SquareMatrix r(m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            const Complex aik = a(i, k);
            for (int j = 0; j < m; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

double relative_difference(const SquareMatrix& a, const SquareMatrix& b) {
    const double scale = std::max(b.frobenius_norm(), std::numeric_limits<double>::min());
    return (a - b).frobenius_norm() / scale;
}

// ------------------------------------------------------------- HermitianMatrix

HermitianMatrix::HermitianMatrix(int dim) : m_(dim) {}

HermitianMatrix::HermitianMatrix(const SquareMatrix& a) : m_(a.dim()) {
    const int m = a.dim();
    double scale = 0.0;
    double asym = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            scale = std::max(scale, std::abs(a(i, j)));
            asym = std::max(asym, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    if (!std::isfinite(scale) || asym > kHermitianTolerance * scale) {
        throw DomainError("matrix is not Hermitian (asymmetry " + std::to_string(asym) + ")");
    }
    for (int i = 0; i < m; ++i) {
        m_(i, i) = a(i, i).real();
        for (int j = i + 1; j < m; ++j) {
            const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            m_(i, j) = v;
            m_(j, i) = std::conj(v);
        }
    }
}

HermitianMatrix HermitianMatrix::identity(int dim) {
    return unchecked(SquareMatrix::identity(dim));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
    HermitianMatrix h(static_cast<int>(d.size()));
    for (int i = 0; i < h.dim(); ++i) h.m_(i, i) = d[i];
    return h;
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
}

HermitianMatrix HermitianMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
    const int m = static_cast<int>(rows.size());
    SquareMatrix a(m);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != m) throw DimensionMismatch("ragged matrix rows");
        int j = 0;
        for (const auto& v : row) a(i, j++) = v;
        ++i;
    }
    return HermitianMatrix(a);
}

HermitianMatrix HermitianMatrix::from_upper(int dim, std::span<const Complex> upper) {
    if (static_cast<int>(upper.size()) != dim * (dim + 1) / 2) {
        throw DimensionMismatch("upper triangle has wrong entry count");
    }
    HermitianMatrix h(dim);
    std::size_t k = 0;
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) h.set(i, j, upper[k++]);
    return h;
}

HermitianMatrix HermitianMatrix::unchecked(const SquareMatrix& a) {
    HermitianMatrix h;
    h.m_ = a;
    return h;
}

double HermitianMatrix::trace() const { return m_.trace().real(); }

void HermitianMatrix::set(int r, int c, Complex v) {
    if (r == c) {
        m_(r, r) = v.real();
    } else {
        m_(r, c) = v;
        m_(c, r) = std::conj(v);
    }
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
    m_ += o.m_;
    return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& o) {
    m_ -= o.m_;
    return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
    m_ *= s;
    return *this;
}

HermitianMatrix& HermitianMatrix::operator/=(double s) {
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) m_(i, j) /= s;
    return *this;
}

bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) return false;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

// -------------------------------------------------------------------- Cholesky

HermitianMatrix LowerTriangularFactor::reconstruct() const {
    const int m = l_.dim();
    HermitianMatrix r(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= i; ++j) {
            Complex s = 0.0;
            for (int k = 0; k <= j; ++k) s += l_(i, k) * std::conj(l_(j, k));
            r.set(i, j, s);
        }
    return r;
}

LowerTriangularFactor cholesky(const HermitianMatrix& a) {
    const int m = a.dim();
    SquareMatrix l(m);
    for (int j = 0; j < m; ++j) {
        double d = a(j, j).real();
        for (int k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw NotPositiveDefinite("Cholesky pivot " + std::to_string(j) + " is " +
                                      std::to_string(d));
        }
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (int i = j + 1; i < m; ++i) {
            Complex s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    return LowerTriangularFactor(l);
}

double log_det(const LowerTriangularFactor& f) {
    double s = 0.0;
    for (int i = 0; i < f.dim(); ++i) s += std::log(f.diag(i));
    return 2.0 * s;
}

double log_det(const HermitianMatrix& a) { return log_det(cholesky(a)); }

HermitianMatrix inverse(const LowerTriangularFactor& f) {
    const int m = f.dim();
    const SquareMatrix& l = f.matrix();
    // W = L^{-1}, lower triangular, by forward substitution on the identity.
    SquareMatrix w(m);
    for (int c = 0; c < m; ++c) {
        w(c, c) = 1.0 / l(c, c).real();
        for (int i = c + 1; i < m; ++i) {
            Complex s = 0.0;
            for (int k = c; k < i; ++k) s -= l(i, k) * w(k, c);
            w(i, c) = s / l(i, i).real();
        }
    }
    // A^{-1} = W* W.
    HermitianMatrix r(m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            Complex s = 0.0;
            for (int k = j; k < m; ++k) s += std::conj(w(k, i)) * w(k, j);
            r.set(i, j, s);
        }
    return r;
}

HermitianMatrix inverse(const HermitianMatrix& a) { return inverse(cholesky(a)); }

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
    require_same_dim(a.dim(), b.dim());
    const int m = a.dim();
    double s = 0.0;
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) s += (a(i, k) * b(k, i)).real();
    return s;
}

HermitianMatrix congruence(const SquareMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a * b.matrix() * a.adjoint());
}

// --------------------------------------------------------------- vec and kron

std::vector<Complex> vec(const SquareMatrix& a) {
    const int m = a.dim();
    std::vector<Complex> v;
    v.reserve(static_cast<std::size_t>(m) * m);
    for (int c = 0; c < m; ++c)
        for (int r = 0; r < m; ++r) v.push_back(a(r, c));
    return v;
}

ComplexMatrix kron(const SquareMatrix& a, const SquareMatrix& b) {
    const int ma = a.dim();
    const int mb = b.dim();
    ComplexMatrix k(ma * mb, ma * mb);
    for (int i = 0; i < ma; ++i)
        for (int j = 0; j < ma; ++j)
            for (int p = 0; p < mb; ++p)
                for (int q = 0; q < mb; ++q) k(i * mb + p, j * mb + q) = a(i, j) * b(p, q);
    return k;
}

Complex quadratic_form(std::span<const Complex> x, const ComplexMatrix& k) {
    if (static_cast<int>(x.size()) != k.rows() || k.rows() != k.cols()) {
        throw DimensionMismatch("quadratic form shape mismatch");
    }
    Complex s = 0.0;
    for (int j = 0; j < k.cols(); ++j) {
        Complex col = 0.0;
        for (int i = 0; i < k.rows(); ++i) col += std::conj(x[i]) * k(i, j);
        s += col * x[j];
    }
    return s;
}

}  // namespace polsar
