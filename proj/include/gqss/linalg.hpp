// Copyright 2026 The gqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex linear algebra for systems of at most six qubits.
//
// Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a
// basis index: for n qubits, qubit q of index j is (j >> (n - 1 - q)) & 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gqss {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 6;

struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

namespace detail {

inline std::size_t qubits_for_dim(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw ArgumentError("dimension " + std::to_string(dim) + " is not a power of two");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    if (n > kMaxQubits) {
        throw CapacityError("system of " + std::to_string(n) + " qubits exceeds the " +
                            std::to_string(kMaxQubits) + "-qubit cap");
    }
    return n;
}

inline std::size_t bit_of(std::size_t index, std::size_t qubit, std::size_t n) {
    return (index >> (n - 1 - qubit)) & 1U;
}

}  // namespace detail

/// Square or rectangular dense complex matrix, row-major.
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw ArgumentError("matrix data size does not match its shape");
        }
    }
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) {
                throw ArgumentError("ragged matrix literal");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t dim) {
        Matrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static Matrix outer(std::span<const Complex> ket, std::span<const Complex> bra) {
        Matrix m(ket.size(), bra.size());
        for (std::size_t i = 0; i < ket.size(); ++i) {
            for (std::size_t j = 0; j < bra.size(); ++j) {
                m(i, j) = ket[i] * std::conj(bra[j]);
            }
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> data() const { return data_; }
    std::span<Complex> data() { return data_; }

    Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    Complex trace() const {
        Complex t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) {
            m = std::max(m, std::abs(v));
        }
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : data_) {
            s += std::norm(v);
        }
        return std::sqrt(s);
    }

    /// Largest deviation from Hermiticity, max |A_ij - conj(A_ji)|.
    double hermiticity_error() const {
        if (!square()) {
            return INFINITY;
        }
        double err2 = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = r; c < cols_; ++c) {
                err2 = std::max(err2, std::norm((*this)(r, c) - std::conj((*this)(c, r))));
            }
        }
        return std::sqrt(err2);
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += o.data_[i];
        }
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] -= o.data_[i];
        }
        return *this;
    }
    Matrix& operator*=(Complex s) {
        for (auto& v : data_) {
            v *= s;
        }
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
    friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) {
            throw ArgumentError("matrix product shape mismatch");
        }
        Matrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex av = a(r, k);
                if (av == Complex{}) {
                    continue;
                }
                for (std::size_t c = 0; c < b.cols_; ++c) {
                    out(r, c) += av * b(k, c);
                }
            }
        }
        return out;
    }

    std::vector<Complex> apply(std::span<const Complex> v) const {
        if (v.size() != cols_) {
            throw ArgumentError("matrix-vector shape mismatch");
        }
        std::vector<Complex> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            Complex s = 0.0;
            for (std::size_t c = 0; c < cols_; ++c) {
                s += (*this)(r, c) * v[c];
            }
            out[r] = s;
        }
        return out;
    }

   private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw ArgumentError("matrix shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ArgumentError("matrix shape mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    }
    return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    if (out.rows() > (std::size_t{1} << kMaxQubits) || out.cols() > (std::size_t{1} << kMaxQubits)) {
        throw CapacityError("tensor product exceeds the six-qubit cap");
    }
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex av = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = av * b(br, bc);
                }
            }
        }
    }
    return out;
}

namespace gates {

inline const Matrix& I() {
    static const Matrix m{{1.0, 0.0}, {0.0, 1.0}};
    return m;
}
inline const Matrix& X() {
    static const Matrix m{{0.0, 1.0}, {1.0, 0.0}};
    return m;
}
inline const Matrix& Y() {
    static const Matrix m{{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}};
    return m;
}
inline const Matrix& Z() {
    static const Matrix m{{1.0, 0.0}, {0.0, -1.0}};
    return m;
}
inline const Matrix& H() {
    static const double r = 1.0 / std::sqrt(2.0);
    static const Matrix m{{r, r}, {r, -r}};
    return m;
}
inline const Matrix& S() {
    static const Matrix m{{1.0, 0.0}, {0.0, Complex(0, 1)}};
    return m;
}

}  // namespace gates

/// Normalized pure state on n <= 6 qubits.
class StateVector {
   public:
    StateVector() = default;

    /// Takes ownership of amplitudes that must already be normalized.
    explicit StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
        n_ = detail::qubits_for_dim(amps_.size());
        const double norm2 = squared_norm(amps_);
        if (std::abs(norm2 - 1.0) > 1e-10) {
            throw ArgumentError("state vector is not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
        }
    }

    /// Rescales a nonzero vector to unit norm.
    static StateVector normalized(std::vector<Complex> amplitudes) {
        const double norm2 = squared_norm(amplitudes);
        if (norm2 < 1e-300) {
            throw ArgumentError("cannot normalize the zero vector");
        }
        const double s = 1.0 / std::sqrt(norm2);
        for (auto& a : amplitudes) {
            a *= s;
        }
        return StateVector(std::move(amplitudes));
    }

    static StateVector basis(std::size_t n, std::size_t index) {
        std::vector<Complex> a(std::size_t{1} << n);
        a.at(index) = 1.0;
        return StateVector(std::move(a));
    }

    std::size_t qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const Complex> amplitudes() const { return amps_; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }

    Complex inner(const StateVector& other) const {
        if (other.dim() != dim()) {
            throw ArgumentError("inner product dimension mismatch");
        }
        Complex s = 0.0;
        for (std::size_t i = 0; i < dim(); ++i) {
            s += std::conj(amps_[i]) * other.amps_[i];
        }
        return s;
    }

    Matrix projector() const { return Matrix::outer(amps_, amps_); }

   private:
    static double squared_norm(std::span<const Complex> v) {
        double s = 0.0;
        for (const auto& a : v) {
            s += std::norm(a);
        }
        return s;
    }

    std::vector<Complex> amps_;
    std::size_t n_ = 0;
};

inline StateVector kron(const StateVector& a, const StateVector& b) {
    if (a.qubits() + b.qubits() > kMaxQubits) {
        throw CapacityError("tensor product exceeds the six-qubit cap");
    }
    std::vector<Complex> out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return StateVector(std::move(out));
}

/// |<a|b>|^2 for unit vectors; 1 means equal up to a global phase.
inline double overlap_probability(const StateVector& a, const StateVector& b) {
    return std::norm(a.inner(b));
}

/// Multiplies the state by the conjugate phase of its largest-magnitude
/// amplitude so that amplitude becomes real positive.
inline StateVector align_global_phase(const StateVector& s) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.dim(); ++i) {
        if (std::abs(s[i]) > std::abs(s[best]) + 1e-12) {
            best = i;
        }
    }
    const Complex phase = std::abs(s[best]) > 0 ? std::conj(s[best]) / std::abs(s[best]) : Complex(1.0);
    std::vector<Complex> out(s.amplitudes().begin(), s.amplitudes().end());
    for (auto& a : out) {
        a *= phase;
    }
    return StateVector(std::move(out));
}

/// Max amplitude difference after aligning both states to a common phase.
inline double distance_up_to_phase(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw ArgumentError("state dimension mismatch");
    }
    const Complex ip = a.inner(b);
    const Complex phase = std::abs(ip) > 0 ? ip / std::abs(ip) : Complex(1.0);
    double err = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        err = std::max(err, std::abs(a[i] * phase - b[i]));
    }
    return err;
}

/// Unit-trace Hermitian positive semidefinite operator on n <= 6 qubits.
///
/// Construction checks Hermiticity and trace (1e-10). Positivity is a
/// property of every operation in this library; `psd_violation()` measures it.
class DensityMatrix {
   public:
    DensityMatrix() = default;

    explicit DensityMatrix(Matrix m) : m_(std::move(m)) {
        if (!m_.square()) {
            throw ArgumentError("density matrix must be square");
        }
        n_ = detail::qubits_for_dim(m_.rows());
        if (m_.hermiticity_error() > 1e-10) {
            throw ArgumentError("density matrix is not Hermitian");
        }
        const Complex t = m_.trace();
        if (std::abs(t - 1.0) > 1e-10) {
            throw ArgumentError("density matrix trace is " + std::to_string(t.real()) + ", expected 1");
        }
    }

    explicit DensityMatrix(const StateVector& psi) : DensityMatrix(psi.projector()) {}

    /// Divides by the trace first; use for post-measurement branches.
    static DensityMatrix normalized(Matrix m) {
        const Complex t = m.trace();
        if (std::abs(t) < 1e-300) {
            throw ArgumentError("cannot normalize an operator with zero trace");
        }
        m *= 1.0 / t.real();
        symmetrize(m);
        return DensityMatrix(std::move(m), Trusted{});
    }

    static DensityMatrix maximally_mixed(std::size_t n) {
        const std::size_t d = std::size_t{1} << n;
        return DensityMatrix(Matrix::identity(d) * Complex(1.0 / static_cast<double>(d)));
    }

    std::size_t qubits() const { return n_; }
    std::size_t dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    /// Most negative eigenvalue magnitude (0 for a valid state).
    double psd_violation() const;

   private:
    struct Trusted {};
    // Hermitian with unit trace by construction.
    DensityMatrix(Matrix m, Trusted) : m_(std::move(m)), n_(detail::qubits_for_dim(m_.rows())) {}

    static void symmetrize(Matrix& m) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            m(r, r) = m(r, r).real();
            for (std::size_t c = r + 1; c < m.cols(); ++c) {
                const Complex avg = 0.5 * (m(r, c) + std::conj(m(c, r)));
                m(r, c) = avg;
                m(c, r) = std::conj(avg);
            }
        }
    }

    Matrix m_;
    std::size_t n_ = 0;
};

inline DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(kron(a.matrix(), b.matrix()));
}

/// Traces out every qubit not in `keep`; kept qubits stay in ascending order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
    const std::size_t n = rho.qubits();
    if (keep.empty()) {
        throw ArgumentError("partial trace needs a nonempty keep set");
    }
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
        throw ArgumentError("partial trace keep set has duplicates");
    }
    if (kept.back() >= n) {
        throw ArgumentError("partial trace qubit index out of range");
    }
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; ++q) {
        if (!std::binary_search(kept.begin(), kept.end(), q)) {
            traced.push_back(q);
        }
    }
    const std::size_t k = kept.size();
    const std::size_t dk = std::size_t{1} << k;
    const std::size_t dt = std::size_t{1} << traced.size();

    // Full index from (kept bits, traced bits).
    auto compose = [&](std::size_t kb, std::size_t tb) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < k; ++i) {
            idx |= ((kb >> (k - 1 - i)) & 1U) << (n - 1 - kept[i]);
        }
        for (std::size_t i = 0; i < traced.size(); ++i) {
            idx |= ((tb >> (traced.size() - 1 - i)) & 1U) << (n - 1 - traced[i]);
        }
        return idx;
    };

    Matrix out(dk, dk);
    for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t c = 0; c < dk; ++c) {
            Complex s = 0.0;
            for (std::size_t t = 0; t < dt; ++t) {
                s += rho(compose(r, t), compose(c, t));
            }
            out(r, c) = s;
        }
    }
    return DensityMatrix::normalized(std::move(out));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

struct EigenDecomposition {
    std::vector<double> values;  // descending
    Matrix vectors;              // column k pairs with values[k]
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Iterates until the
/// off-diagonal Frobenius norm drops below 1e-12 (scaled by the matrix norm
/// when that exceeds one).
inline EigenDecomposition hermitian_eig(const Matrix& h) {
    if (!h.square()) {
        throw ArgumentError("eigendecomposition needs a square matrix");
    }
    if (h.hermiticity_error() > 1e-8) {
        throw ArgumentError("eigendecomposition input is not Hermitian");
    }
    const std::size_t d = h.rows();
    Matrix a = h;
    Matrix v = Matrix::identity(d);
    for (std::size_t i = 0; i < d; ++i) {
        a(i, i) = a(i, i).real();
    }
    const double tol = 1e-12 * std::max(1.0, h.frobenius_norm());

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                if (r != c) {
                    s += std::norm(a(r, c));
                }
            }
        }
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && off_norm() >= tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const Complex b = a(p, q);
                const double mag = std::abs(b);
                if (mag < 1e-300) {
                    continue;
                }
                const Complex phase = b / mag;  // e^{i alpha}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                // J = diag(1, e^{-i alpha}) * [[c, s], [-s, c]]
                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * std::conj(phase);
                const Complex jqq = c * std::conj(phase);
                for (std::size_t k = 0; k < d; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < d; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });
    EigenDecomposition out{std::vector<double>(d), Matrix(d, d)};
    for (std::size_t k = 0; k < d; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < d; ++r) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

inline EigenDecomposition hermitian_eig(const DensityMatrix& rho) { return hermitian_eig(rho.matrix()); }

inline double DensityMatrix::psd_violation() const {
    const auto eig = hermitian_eig(m_);
    return std::max(0.0, -eig.values.back());
}

/// Entropy in bits of a probability spectrum; tiny negative values from
/// roundoff (down to -1e-9) are clamped to zero.
inline double shannon_entropy_bits(std::span<const double> spectrum) {
    double s = 0.0;
    for (double p : spectrum) {
        if (p < -1e-9) {
            throw ArgumentError("spectrum has a negative eigenvalue " + std::to_string(p));
        }
        if (p > 0.0) {
            s -= p * std::log2(p);
        }
    }
    return s;
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
    const auto eig = hermitian_eig(rho.matrix());
    return shannon_entropy_bits(eig.values);
}

/// <psi|rho|psi>.
inline double fidelity_pure(const StateVector& psi, const DensityMatrix& rho) {
    if (psi.dim() != rho.dim()) {
        throw ArgumentError("fidelity dimension mismatch");
    }
    const auto rp = rho.matrix().apply(psi.amplitudes());
    Complex s = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        s += std::conj(psi[i]) * rp[i];
    }
    return s.real();
}

/// Tr(rho sigma) for two states of equal dimension.
inline double overlap(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw ArgumentError("overlap dimension mismatch");
    }
    Complex s = 0.0;
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        for (std::size_t c = 0; c < rho.dim(); ++c) {
            s += rho(r, c) * sigma(c, r);
        }
    }
    return s.real();
}

/// Half the trace norm of rho - sigma.
inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const auto eig = hermitian_eig(rho.matrix() - sigma.matrix());
    double s = 0.0;
    for (double v : eig.values) {
        s += std::abs(v);
    }
    return 0.5 * s;
}

// ---------------------------------------------------------------------------
// Pauli strings

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

inline const Matrix& pauli_matrix(Pauli p) {
    switch (p) {
        case Pauli::I:
            return gates::I();
        case Pauli::X:
            return gates::X();
        case Pauli::Y:
            return gates::Y();
        case Pauli::Z:
            return gates::Z();
    }
    throw InternalError("bad Pauli label");
}

/// Signed tensor product of single-qubit Paulis. The sign is i^phase.
class PauliString {
   public:
    PauliString() = default;
    PauliString(std::vector<Pauli> factors, int phase = 0) : factors_(std::move(factors)), phase_(((phase % 4) + 4) % 4) {
        if (factors_.size() > kMaxQubits) {
            throw CapacityError("Pauli string longer than six qubits");
        }
    }

    /// Parses "XXIIX", "+ZYYXI", "-IXXI", "iXZ" or "-iY".
    static PauliString parse(std::string_view text) {
        int phase = 0;
        std::size_t pos = 0;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            phase = text[pos] == '-' ? 2 : 0;
            ++pos;
        }
        if (pos < text.size() && text[pos] == 'i') {
            phase += 1;
            ++pos;
        }
        std::vector<Pauli> f;
        for (; pos < text.size(); ++pos) {
            switch (text[pos]) {
                case 'I':
                case '_':
                    f.push_back(Pauli::I);
                    break;
                case 'X':
                    f.push_back(Pauli::X);
                    break;
                case 'Y':
                    f.push_back(Pauli::Y);
                    break;
                case 'Z':
                    f.push_back(Pauli::Z);
                    break;
                default:
                    throw ArgumentError("bad Pauli string '" + std::string(text) + "'");
            }
        }
        if (f.empty()) {
            throw ArgumentError("empty Pauli string");
        }
        return PauliString(std::move(f), phase);
    }

    static PauliString identity(std::size_t n) { return PauliString(std::vector<Pauli>(n, Pauli::I)); }

    std::size_t qubits() const { return factors_.size(); }
    const std::vector<Pauli>& factors() const { return factors_; }
    Pauli operator[](std::size_t q) const { return factors_[q]; }
    int phase() const { return phase_; }
    bool hermitian() const { return phase_ % 2 == 0; }
    /// +1 or -1 for Hermitian strings.
    int sign() const {
        if (!hermitian()) {
            throw ArgumentError("Pauli string with imaginary sign has no real sign");
        }
        return phase_ == 0 ? 1 : -1;
    }
    Complex coefficient() const {
        static const Complex table[4] = {1.0, Complex(0, 1), -1.0, Complex(0, -1)};
        return table[phase_];
    }

    PauliString negated() const { return PauliString(factors_, phase_ + 2); }
    PauliString unsigned_string() const { return PauliString(factors_, 0); }

    bool is_identity() const {
        return std::all_of(factors_.begin(), factors_.end(), [](Pauli p) { return p == Pauli::I; });
    }

    std::string to_string() const {
        static const char* prefix[4] = {"+", "+i", "-", "-i"};
        std::string s = prefix[phase_];
        for (auto p : factors_) {
            s += pauli_char(p);
        }
        return s;
    }
    /// Factor letters only.
    std::string label() const {
        std::string s;
        for (auto p : factors_) {
            s += pauli_char(p);
        }
        return s;
    }

    Matrix to_matrix() const {
        Matrix m = Matrix::identity(1);
        for (auto p : factors_) {
            m = kron(m, pauli_matrix(p));
        }
        return m * coefficient();
    }

    /// Product with Pauli phase bookkeeping.
    friend PauliString operator*(const PauliString& a, const PauliString& b) {
        if (a.qubits() != b.qubits()) {
            throw ArgumentError("Pauli product length mismatch");
        }
        // Single-qubit products: XY = iZ, YZ = iX, ZX = iY.
        int phase = a.phase_ + b.phase_;
        std::vector<Pauli> out(a.qubits());
        for (std::size_t q = 0; q < a.qubits(); ++q) {
            const int x = static_cast<int>(a[q]);
            const int y = static_cast<int>(b[q]);
            if (x == 0 || y == 0 || x == y) {
                out[q] = static_cast<Pauli>(x ^ y);
                continue;
            }
            out[q] = static_cast<Pauli>(x ^ y);
            phase += ((y - x + 3) % 3 == 1) ? 1 : 3;
        }
        return PauliString(std::move(out), phase);
    }

    friend bool operator==(const PauliString& a, const PauliString& b) {
        return a.phase_ == b.phase_ && a.factors_ == b.factors_;
    }

    /// Maps basis index j to (coefficient, j ^ flip) with P|j> = coeff |j ^ flip>.
    std::pair<Complex, std::size_t> act_on_basis(std::size_t j) const {
        const std::size_t n = qubits();
        Complex c = coefficient();
        std::size_t flip = 0;
        for (std::size_t q = 0; q < n; ++q) {
            const std::size_t bit = detail::bit_of(j, q, n);
            const std::size_t mask = std::size_t{1} << (n - 1 - q);
            switch (factors_[q]) {
                case Pauli::I:
                    break;
                case Pauli::X:
                    flip |= mask;
                    break;
                case Pauli::Y:
                    flip |= mask;
                    c *= bit ? Complex(0, -1) : Complex(0, 1);
                    break;
                case Pauli::Z:
                    if (bit) {
                        c = -c;
                    }
                    break;
            }
        }
        return {c, j ^ flip};
    }

    StateVector apply(const StateVector& psi) const {
        if (psi.qubits() != qubits()) {
            throw ArgumentError("Pauli string length does not match the state");
        }
        std::vector<Complex> out(psi.dim());
        for (std::size_t j = 0; j < psi.dim(); ++j) {
            const auto [c, k] = act_on_basis(j);
            out[k] += c * psi[j];
        }
        return StateVector(std::move(out));
    }

   private:
    std::vector<Pauli> factors_;
    int phase_ = 0;
};

/// Tr(rho P) for a Hermitian Pauli string, computed in O(2^n).
inline double expectation(const DensityMatrix& rho, const PauliString& p) {
    if (!p.hermitian()) {
        throw ArgumentError("expectation needs a Hermitian Pauli string (sign +1 or -1)");
    }
    if (p.qubits() != rho.qubits()) {
        throw ArgumentError("Pauli string length does not match the state");
    }
    Complex s = 0.0;
    for (std::size_t j = 0; j < rho.dim(); ++j) {
        const auto [c, k] = p.act_on_basis(j);
        // (rho P)_{kk'} summed on the diagonal: rho(k, j) * c where P|j> = c|k>.
        s += rho(j, k) * c;
    }
    return s.real();
}

inline double expectation(const StateVector& psi, const PauliString& p) {
    if (p.qubits() != psi.qubits()) {
        throw ArgumentError("Pauli string length does not match the state");
    }
    Complex s = 0.0;
    for (std::size_t j = 0; j < psi.dim(); ++j) {
        const auto [c, k] = p.act_on_basis(j);
        s += std::conj(psi[k]) * c * psi[j];
    }
    return s.real();
}

// ---------------------------------------------------------------------------
// Local operations

/// Embeds a single-qubit operator on `qubit` of an n-qubit register.
inline Matrix embed(const Matrix& u, std::size_t qubit, std::size_t n) {
    if (qubit >= n) {
        throw ArgumentError("qubit index out of range");
    }
    Matrix m = Matrix::identity(1);
    for (std::size_t q = 0; q < n; ++q) {
        m = kron(m, q == qubit ? u : gates::I());
    }
    return m;
}

/// U psi with U a 2x2 operator on one qubit.
inline std::vector<Complex> apply_local(std::span<const Complex> psi, const Matrix& u, std::size_t qubit,
                                        std::size_t n) {
    const std::size_t mask = std::size_t{1} << (n - 1 - qubit);
    std::vector<Complex> out(psi.begin(), psi.end());
    for (std::size_t j = 0; j < psi.size(); ++j) {
        if (j & mask) {
            continue;
        }
        const Complex a0 = psi[j];
        const Complex a1 = psi[j | mask];
        out[j] = u(0, 0) * a0 + u(0, 1) * a1;
        out[j | mask] = u(1, 0) * a0 + u(1, 1) * a1;
    }
    return out;
}

inline StateVector apply_local(const StateVector& psi, const Matrix& u, std::size_t qubit) {
    return StateVector::normalized(apply_local(psi.amplitudes(), u, qubit, psi.qubits()));
}

/// U rho U^dagger for a single-qubit unitary U, in O(4^n).
inline Matrix conjugate_local(const Matrix& rho, const Matrix& u, std::size_t qubit, std::size_t n) {
    const std::size_t d = rho.rows();
    const std::size_t mask = std::size_t{1} << (n - 1 - qubit);
    Matrix tmp(d, d);
    // Left multiply by U on rows.
    for (std::size_t r = 0; r < d; ++r) {
        if (r & mask) {
            continue;
        }
        for (std::size_t c = 0; c < d; ++c) {
            const Complex a0 = rho(r, c);
            const Complex a1 = rho(r | mask, c);
            tmp(r, c) = u(0, 0) * a0 + u(0, 1) * a1;
            tmp(r | mask, c) = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }
    Matrix out(d, d);
    const Complex u00 = std::conj(u(0, 0)), u01 = std::conj(u(0, 1));
    const Complex u10 = std::conj(u(1, 0)), u11 = std::conj(u(1, 1));
    // Right multiply by U^dagger on columns.
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            if (c & mask) {
                continue;
            }
            const Complex b0 = tmp(r, c);
            const Complex b1 = tmp(r, c | mask);
            out(r, c) = b0 * u00 + b1 * u01;
            out(r, c | mask) = b0 * u10 + b1 * u11;
        }
    }
    return out;
}

inline DensityMatrix conjugate_local(const DensityMatrix& rho, const Matrix& u, std::size_t qubit) {
    return DensityMatrix::normalized(conjugate_local(rho.matrix(), u, qubit, rho.qubits()));
}

/// P rho P for a Pauli string (signs cancel).
inline DensityMatrix conjugate(const DensityMatrix& rho, const PauliString& p) {
    if (p.qubits() != rho.qubits()) {
        throw ArgumentError("Pauli string length does not match the state");
    }
    const std::size_t d = rho.dim();
    std::vector<std::pair<Complex, std::size_t>> act(d);
    for (std::size_t j = 0; j < d; ++j) {
        act[j] = p.act_on_basis(j);
    }
    Matrix out(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const auto [cr, kr] = act[r];
            const auto [cc, kc] = act[c];
            out(kr, kc) = cr * rho(r, c) * std::conj(cc);
        }
    }
    return DensityMatrix::normalized(std::move(out));
}

}  // namespace gqss
