#pragma once
/**
 * @file exact.hpp
 * @brief Exact integer/rational linear algebra for incidence matrices.
 *
 * Provides arbitrary-precision integer matrices, integer polynomials, a
 * fraction-free (Bareiss) determinant that also yields characteristic
 * polynomials over Z[X], and Krylov data for the sequence e, Me, M^2 e, ...
 * used by the finiteness decision procedure.
 *
 * Everything is computed over cpp_int / cpp_rational; no floating point is
 * used anywhere in this header.  Matrices stay small (alphabet-sized), so the
 * routines favour clarity over asymptotics.
 */

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace subshift {

using Integer   = boost::multiprecision::cpp_int;
using Rational  = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;

/// Domain error thrown by library routines (bad dimensions, violated
/// preconditions, failed certificates).
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// IntegerMatrix
// ---------------------------------------------------------------------------

/// Dense matrix over cpp_int with value semantics.
class IntegerMatrix {
public:
    IntegerMatrix() = default;

    IntegerMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Integer(0)) {}

    static IntegerMatrix identity(std::size_t n) {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Integer& at(std::size_t i, std::size_t j) {
        check_index(i, j);
        return a_[i * cols_ + j];
    }
    const Integer& at(std::size_t i, std::size_t j) const {
        check_index(i, j);
        return a_[i * cols_ + j];
    }

    IntegerMatrix transposed() const {
        IntegerMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend IntegerMatrix operator*(const IntegerMatrix& l, const IntegerMatrix& r) {
        if (l.cols_ != r.rows_) throw error("matrix product: dimension mismatch");
        IntegerMatrix p(l.rows_, r.cols_);
        for (std::size_t i = 0; i < l.rows_; ++i)
            for (std::size_t k = 0; k < l.cols_; ++k) {
                const Integer& lik = l.at(i, k);
                if (lik == 0) continue;
                for (std::size_t j = 0; j < r.cols_; ++j) p.at(i, j) += lik * r.at(k, j);
            }
        return p;
    }

    IntVector apply(const IntVector& v) const {
        if (v.size() != cols_) throw error("matrix apply: dimension mismatch");
        IntVector w(rows_, Integer(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) w[i] += at(i, j) * v[j];
        return w;
    }

    IntegerMatrix pow(std::size_t e) const {
        if (!square()) throw error("matrix power: matrix not square");
        IntegerMatrix acc = identity(rows_), base = *this;
        while (e > 0) {
            if (e & 1u) acc = acc * base;
            base = base * base;
            e >>= 1u;
        }
        return acc;
    }

    bool operator==(const IntegerMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const IntegerMatrix& o) const { return !(*this == o); }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i == 0 ? "[" : " ") << "[";
            for (std::size_t j = 0; j < cols_; ++j)
                os << at(i, j) << (j + 1 < cols_ ? " " : "");
            os << "]" << (i + 1 < rows_ ? "\n" : "]");
        }
        return os.str();
    }

private:
    void check_index(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw error("matrix index out of range");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> a_;
};

inline IntVector ones_vector(std::size_t n) { return IntVector(n, Integer(1)); }

// ---------------------------------------------------------------------------
// IntPolynomial
// ---------------------------------------------------------------------------

/// Polynomial over cpp_int.  Coefficient i is the coefficient of X^i; the
/// representation is normalised (no trailing zero coefficients), so the zero
/// polynomial has an empty coefficient vector and degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;

    explicit IntPolynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPolynomial constant(Integer v) { return IntPolynomial({std::move(v)}); }

    static IntPolynomial monomial(std::size_t deg, Integer coeff) {
        if (coeff == 0) return {};
        std::vector<Integer> c(deg + 1, Integer(0));
        c[deg] = std::move(coeff);
        return IntPolynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }

    /// Degree, with the convention deg 0 = -1.
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }

    const Integer& leading() const {
        if (c_.empty()) throw error("leading coefficient of the zero polynomial");
        return c_.back();
    }

    const std::vector<Integer>& coeffs() const { return c_; }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()), Integer(0));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return IntPolynomial(std::move(c));
    }
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()), Integer(0));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return IntPolynomial(std::move(c));
    }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> c(a.c_.size() + b.c_.size() - 1, Integer(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return IntPolynomial(std::move(c));
    }

    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
    bool operator!=(const IntPolynomial& o) const { return !(*this == o); }

    /// Quotient and remainder for division by a *monic* divisor; stays in Z[X].
    std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& d) const {
        if (d.is_zero() || d.leading() != 1)
            throw error("divmod_monic requires a monic divisor");
        IntPolynomial q, r = *this;
        while (!r.is_zero() && r.degree() >= d.degree()) {
            auto t = monomial(static_cast<std::size_t>(r.degree() - d.degree()), r.leading());
            q = q + t;
            r = r - t * d;
        }
        return {q, r};
    }

    /// Evaluate at an integer point.
    Integer eval(const Integer& x) const {
        Integer acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    /// Evaluate at a square matrix (Horner).
    IntegerMatrix eval(const IntegerMatrix& m) const {
        if (!m.square()) throw error("polynomial evaluation needs a square matrix");
        IntegerMatrix acc(m.rows(), m.rows());
        for (std::size_t i = c_.size(); i-- > 0;) {
            acc = acc * m;
            for (std::size_t k = 0; k < m.rows(); ++k) acc.at(k, k) += c_[i];
        }
        return acc;
    }

    /// Pretty form such as "X^3 - 4X^2 + 2X".
    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            const Integer& a = c_[i];
            if (a == 0) continue;
            Integer mag = a < 0 ? Integer(-a) : a;
            if (first) {
                if (a < 0) os << "-";
                first = false;
            } else {
                os << (a < 0 ? " - " : " + ");
            }
            if (mag != 1 || i == 0) os << mag;
            if (i >= 1) {
                os << "X";
                if (i >= 2) os << "^" << i;
            }
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Integer> c_;
};

// ---------------------------------------------------------------------------
// Fraction-free elimination (Bareiss)
// ---------------------------------------------------------------------------

namespace detail {

inline bool ring_zero(const Integer& v) { return v == 0; }
inline bool ring_zero(const IntPolynomial& p) { return p.is_zero(); }

/// Exact division in Z; throws if the division leaves a remainder, which in
/// Bareiss elimination would indicate a bug rather than bad input.
inline Integer ring_exact_div(const Integer& a, const Integer& b) {
    if (b == 0) throw error("exact division by zero");
    Integer q = a / b;
    if (q * b != a) throw error("non-exact division in fraction-free elimination");
    return q;
}

/// Exact division in Z[X] by long division.  Valid whenever b | a in Z[X]
/// (each leading-coefficient division is then exact); throws otherwise.
inline IntPolynomial ring_exact_div(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw error("exact division by zero polynomial");
    IntPolynomial q, r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Integer lc = ring_exact_div(r.leading(), b.leading());
        auto t = IntPolynomial::monomial(static_cast<std::size_t>(r.degree() - b.degree()), lc);
        q = q + t;
        r = r - t * b;
    }
    if (!r.is_zero()) throw error("non-exact polynomial division in fraction-free elimination");
    return q;
}

/// Bareiss determinant over an integral domain (Integer or IntPolynomial).
/// Works on a flat row-major copy of the matrix.
template <class T>
T bareiss_determinant(std::vector<T> a, std::size_t n) {
    if (n == 0) throw error("determinant of an empty matrix");
    auto at = [&](std::size_t i, std::size_t j) -> T& { return a[i * n + j]; };
    int sign = 1;
    T prev;  // previous pivot; default-constructed T is the zero element
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (ring_zero(at(k, k))) {
            std::size_t s = k + 1;
            while (s < n && ring_zero(at(s, k))) ++s;
            if (s == n) return T{};  // entire column below is zero => det 0
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(s, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                T num = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                at(i, j) = (k == 0) ? std::move(num) : ring_exact_div(num, prev);
            }
        prev = at(k, k);
    }
    T det = at(n - 1, n - 1);
    if (sign < 0) det = T{} - det;
    return det;
}

}  // namespace detail

/// Determinant of a square integer matrix (fraction-free).
inline Integer determinant(const IntegerMatrix& m) {
    if (!m.square()) throw error("determinant: matrix not square");
    std::vector<Integer> flat;
    flat.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) flat.push_back(m.at(i, j));
    return detail::bareiss_determinant(std::move(flat), m.rows());
}

/// Characteristic polynomial det(X I - M), monic, computed by the same
/// fraction-free elimination with entries in Z[X].
inline IntPolynomial char_poly(const IntegerMatrix& m) {
    if (!m.square()) throw error("char_poly: matrix not square");
    const std::size_t n = m.rows();
    std::vector<IntPolynomial> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntPolynomial e = IntPolynomial::constant(-m.at(i, j));
            if (i == j) e = e + IntPolynomial::monomial(1, 1);
            flat.push_back(std::move(e));
        }
    IntPolynomial p = detail::bareiss_determinant(std::move(flat), n);
    if (p.degree() != static_cast<long>(n) || p.leading() != 1)
        throw error("char_poly: internal consistency check failed");
    return p;
}

// ---------------------------------------------------------------------------
// Krylov data
// ---------------------------------------------------------------------------

/// Result of the Krylov computation for (M, v): the largest r such that
/// v, Mv, ..., M^r v are linearly independent, together with the unique
/// rational coefficients expressing M^{r+1} v in that basis.
struct KrylovData {
    std::size_t r = 0;
    std::vector<Rational> coeffs;     ///< c_0..c_r with M^{r+1}v = sum c_i M^i v
    std::vector<IntVector> iterates;  ///< v, Mv, ..., M^{r+1}v
};

namespace detail {

/// Solve sum_i c_i cols[i] = rhs by exact rational elimination.  The columns
/// are required to be linearly independent; returns nullopt when the system
/// is inconsistent (rhs outside the span).
inline std::optional<std::vector<Rational>> solve_in_span(
    const std::vector<IntVector>& cols, const IntVector& rhs) {
    const std::size_t n = rhs.size(), k = cols.size();
    // augmented matrix, n rows by k+1 columns
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) a[i][j] = Rational(cols[j][i]);
        a[i][k] = Rational(rhs[i]);
    }
    std::vector<std::size_t> pivot_row(k);
    std::size_t row = 0;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t p = row;
        while (p < n && a[p][col] == 0) ++p;
        if (p == n) throw error("solve_in_span: columns not independent");
        std::swap(a[p], a[row]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rational f = a[i][col] / a[row][col];
            for (std::size_t j = col; j <= k; ++j) a[i][j] -= f * a[row][j];
        }
        pivot_row[col] = row;
        ++row;
    }
    for (std::size_t i = row; i < n; ++i)
        if (a[i][k] != 0) return std::nullopt;  // inconsistent
    std::vector<Rational> c(k);
    for (std::size_t col = 0; col < k; ++col)
        c[col] = a[pivot_row[col]][k] / a[pivot_row[col]][col];
    return c;
}

}  // namespace detail

/// Krylov analysis of M acting on the start vector (normally the all-ones
/// vector, so that M^k v lists the letter-image lengths of sigma^k when M is
/// the transposed incidence matrix of a substitution sigma).
inline KrylovData krylov(const IntegerMatrix& m, const IntVector& start) {
    if (!m.square()) throw error("krylov: matrix not square");
    if (start.size() != m.rows()) throw error("krylov: start vector has wrong dimension");
    bool all_zero = true;
    for (const auto& v : start) all_zero = all_zero && v == 0;
    if (all_zero) throw error("krylov: start vector is zero");

    KrylovData out;
    out.iterates.push_back(start);
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        IntVector v = m.apply(out.iterates.back());
        auto c = detail::solve_in_span(out.iterates, v);
        out.iterates.push_back(std::move(v));
        if (c) {
            out.r = k - 1;
            out.coeffs = std::move(*c);
            return out;
        }
    }
    // n+1 vectors in dimension n are always dependent, so we cannot get here.
    throw error("krylov: dependence not found (internal error)");
}

inline KrylovData krylov(const IntegerMatrix& m) { return krylov(m, ones_vector(m.rows())); }

}  // namespace subshift
