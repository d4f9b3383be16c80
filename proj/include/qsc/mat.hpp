#pragma once

#include <array>
#include <complex>
#include <stdexcept>

namespace qsc {

using cplx = std::complex<double>;

// Dense complex matrix for the single-excitation subspace (dim 3) and its
// open-system extension with the vacuum sink (dim 4). Storage is row-major
// with a fixed row stride of 4 so that both dimensions share one layout and
// the SIMD kernels can assume 32-byte aligned rows. Padding entries stay zero.
class CMat {
public:
    static constexpr int kStride = 4;

    CMat() : dim_(0) { data_.fill(cplx{}); }

    explicit CMat(int dim) : dim_(dim) {
        if (dim != 3 && dim != 4) {
            throw std::invalid_argument("CMat: dimension must be 3 or 4");
        }
        data_.fill(cplx{});
    }

    static CMat identity(int dim) {
        CMat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    cplx& operator()(int r, int c) { return data_[r * kStride + c]; }
    const cplx& operator()(int r, int c) const { return data_[r * kStride + c]; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    CMat adjoint() const {
        CMat out(dim_);
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) out(r, c) = std::conj((*this)(c, r));
        return out;
    }

    CMat& operator+=(const CMat& o) {
        check_same_dim(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    CMat& operator-=(const CMat& o) {
        check_same_dim(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    CMat& operator*=(cplx s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(cplx s, CMat a) { return a *= s; }
    friend CMat operator*(CMat a, cplx s) { return a *= s; }

    // Matrix product through the runtime-dispatched kernel (see kernels.hpp).
    friend CMat operator*(const CMat& a, const CMat& b);

    cplx trace() const {
        cplx t{};
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) m = std::max(m, std::abs((*this)(r, c)));
        return m;
    }

private:
    void check_same_dim(const CMat& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("CMat: dimension mismatch");
    }

    int dim_;
    alignas(32) std::array<cplx, 16> data_;
};

// Complex column vector sharing the matrices' basis conventions.
class CVec {
public:
    CVec() : dim_(0) { data_.fill(cplx{}); }
    explicit CVec(int dim) : dim_(dim) {
        if (dim != 3 && dim != 4) {
            throw std::invalid_argument("CVec: dimension must be 3 or 4");
        }
        data_.fill(cplx{});
    }

    int dim() const { return dim_; }
    cplx& operator[](int i) { return data_[i]; }
    const cplx& operator[](int i) const { return data_[i]; }

    double norm() const {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) s += std::norm(data_[i]);
        return std::sqrt(s);
    }

    friend cplx dot(const CVec& a, const CVec& b) {   // <a|b>
        cplx s{};
        for (int i = 0; i < a.dim_; ++i) s += std::conj(a[i]) * b[i];
        return s;
    }

    friend CVec operator*(const CMat& m, const CVec& v) {
        if (m.dim() != v.dim()) throw std::invalid_argument("CMat * CVec: dimension mismatch");
        CVec out(v.dim());
        for (int r = 0; r < v.dim(); ++r) {
            cplx s{};
            for (int c = 0; c < v.dim(); ++c) s += m(r, c) * v[c];
            out[r] = s;
        }
        return out;
    }

private:
    int dim_;
    alignas(32) std::array<cplx, 4> data_;
};

// max |A - A†|
double hermiticity_error(const CMat& a);

// max |U U† - I|
double unitarity_error(const CMat& u);

// Matrix exponential by scaled Taylor series with repeated squaring.
// Intended for the small anti-Hermitian generators used in frame changes.
CMat expm(const CMat& a);

// Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi rotations.
std::array<double, 4> hermitian_eigenvalues(const CMat& a);

} // namespace qsc
