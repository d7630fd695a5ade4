#pragma once

// Dense two-phase simplex, templated on the scalar type. Instantiated with
// Rational for every decision the library certifies, and with double only in
// advisory roles: scoring candidates inside randomized searches and guessing
// certificates that are then re-verified in rationals (never authoritative).
//
// All problems here are tiny in the row dimension (d+1 rows for membership,
// d rows for gauges, ~30 rows for search scoring), so the implementation
// recomputes reduced costs from scratch each pivot and uses Bland's rule
// throughout: no cycling, no tolerances in the rational instantiation.

#include <convind/errors.hpp>
#include <convind/rational.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace convind {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static int sign(const Rational& x) { return sgn(x); }
    static constexpr bool advisory = false;  // exact: pivot caps are bugs
};

template <>
struct ScalarTraits<double> {
    static int sign(double x) {
        const double tol = 1e-9;
        return x > tol ? 1 : (x < -tol ? -1 : 0);
    }
    static constexpr bool advisory = true;
};

enum class LpStatus { optimal, infeasible, unbounded };

template <class T>
struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<T> x;     // primal values of the original variables (optimal)
    T objective{};        // c·x at the optimum
    std::vector<T> farkas;  // infeasible only: y with yᵀA ≤ 0 columnwise, yᵀb > 0
    std::vector<int> basis;  // optimal only: final basic column per row
};

template <class T>
using Matrix = std::vector<std::vector<T>>;

namespace detail {

template <class T>
class Tableau {
  public:
    // M starts as [A | extra-identity], basis must index an identity block.
    Tableau(Matrix<T> m, std::vector<T> rhs, std::vector<int> basis)
        : m_(std::move(m)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

    int rows() const { return static_cast<int>(m_.size()); }
    int cols() const { return rows() ? static_cast<int>(m_[0].size()) : 0; }
    const std::vector<int>& basis() const { return basis_; }
    const T& rhs(int r) const { return rhs_[r]; }
    const T& at(int r, int j) const { return m_[r][j]; }

    void pivot(int r, int j) {
        T p = m_[r][j];
        for (auto& v : m_[r]) v = v / p;
        rhs_[r] = rhs_[r] / p;
        for (int i = 0; i < rows(); ++i) {
            if (i == r || ScalarTraits<T>::sign(m_[i][j]) == 0) continue;
            T f = m_[i][j];
            for (int k = 0; k < cols(); ++k) m_[i][k] = m_[i][k] - f * m_[r][k];
            rhs_[i] = rhs_[i] - f * rhs_[r];
        }
        basis_[r] = j;
    }

    // Minimize cost over columns with allowed[j] != 0. Bland's rule.
    LpStatus minimize(const std::vector<T>& cost, const std::vector<char>& allowed) {
        const long max_pivots = 200000L + 200L * static_cast<long>(cols());
        for (long iter = 0;; ++iter) {
            if (iter > max_pivots) {
                if (ScalarTraits<T>::advisory) return LpStatus::optimal;
                throw InconsistencyError("simplex pivot budget exceeded in exact mode");
            }
            int entering = -1;
            for (int j = 0; j < cols(); ++j) {
                if (!allowed[j]) continue;
                if (ScalarTraits<T>::sign(reduced_cost(cost, j)) < 0) { entering = j; break; }
            }
            if (entering < 0) return LpStatus::optimal;
            int leaving = -1;
            for (int i = 0; i < rows(); ++i) {
                if (ScalarTraits<T>::sign(m_[i][entering]) <= 0) continue;
                if (leaving < 0) { leaving = i; continue; }
                T diff = rhs_[i] * m_[leaving][entering] - rhs_[leaving] * m_[i][entering];
                int s = ScalarTraits<T>::sign(diff);
                if (s < 0 || (s == 0 && basis_[i] < basis_[leaving])) leaving = i;
            }
            if (leaving < 0) return LpStatus::unbounded;
            pivot(leaving, entering);
        }
    }

    T reduced_cost(const std::vector<T>& cost, int j) const {
        T r = cost[j];
        for (int i = 0; i < rows(); ++i) {
            if (ScalarTraits<T>::sign(m_[i][j]) != 0)
                r = r - cost[basis_[i]] * m_[i][j];
        }
        return r;
    }

    T objective(const std::vector<T>& cost) const {
        T obj{};
        for (int i = 0; i < rows(); ++i) obj = obj + cost[basis_[i]] * rhs_[i];
        return obj;
    }

    std::vector<T> primal(int n_vars) const {
        std::vector<T> x(n_vars, T{});
        for (int i = 0; i < rows(); ++i)
            if (basis_[i] < n_vars) x[basis_[i]] = rhs_[i];
        return x;
    }

    void drop_row(int r) {
        m_.erase(m_.begin() + r);
        rhs_.erase(rhs_.begin() + r);
        basis_.erase(basis_.begin() + r);
    }

  private:
    Matrix<T> m_;
    std::vector<T> rhs_;
    std::vector<int> basis_;
};

}  // namespace detail

// min c·x  s.t.  A x = b, x ≥ 0.
// On infeasibility, `farkas` holds y (per original row orientation) with
// yᵀA ≤ 0 for every column and yᵀb > 0.
template <class T>
LpResult<T> solve_equality_lp(const Matrix<T>& a, const std::vector<T>& b,
                              const std::vector<T>& c) {
    const int m = static_cast<int>(a.size());
    const int n = m ? static_cast<int>(a[0].size()) : static_cast<int>(c.size());
    LpResult<T> result;
    if (m == 0) {
        for (int j = 0; j < n; ++j)
            if (ScalarTraits<T>::sign(c[j]) < 0) { result.status = LpStatus::unbounded; return result; }
        result.status = LpStatus::optimal;
        result.x.assign(n, T{});
        result.objective = T{};
        return result;
    }

    // Flip rows to make b ≥ 0, remembering signs for the Farkas certificate.
    Matrix<T> m0(m, std::vector<T>(n + m, T{}));
    std::vector<T> rhs(m);
    std::vector<int> flip(m, 1);
    for (int i = 0; i < m; ++i) {
        int s = ScalarTraits<T>::sign(b[i]) < 0 ? -1 : 1;
        flip[i] = s;
        rhs[i] = s < 0 ? T{} - b[i] : b[i];
        for (int j = 0; j < n; ++j) m0[i][j] = s < 0 ? T{} - a[i][j] : a[i][j];
        m0[i][n + i] = T{1};
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;
    detail::Tableau<T> tab(std::move(m0), std::move(rhs), std::move(basis));

    // Phase 1: minimize the sum of artificials.
    std::vector<T> phase1_cost(n + m, T{});
    for (int i = 0; i < m; ++i) phase1_cost[n + i] = T{1};
    std::vector<char> all_allowed(n + m, 1);
    tab.minimize(phase1_cost, all_allowed);
    if (ScalarTraits<T>::sign(tab.objective(phase1_cost)) > 0) {
        // Farkas: y = c_B B⁻¹ read off the artificial columns, un-flipped.
        result.status = LpStatus::infeasible;
        result.farkas.assign(m, T{});
        for (int i = 0; i < m; ++i) {
            T yi{};
            for (int r = 0; r < tab.rows(); ++r)
                yi = yi + phase1_cost[tab.basis()[r]] * tab.at(r, n + i);
            result.farkas[i] = flip[i] < 0 ? T{} - yi : yi;
        }
        return result;
    }

    // Drive leftover artificials out of the basis (degenerate pivots); rows
    // that cannot pivot are redundant and dropped.
    for (int r = tab.rows() - 1; r >= 0; --r) {
        if (tab.basis()[r] < n) continue;
        int col = -1;
        for (int j = 0; j < n; ++j)
            if (ScalarTraits<T>::sign(tab.at(r, j)) != 0) { col = j; break; }
        if (col >= 0) tab.pivot(r, col);
        else tab.drop_row(r);
    }

    // Phase 2 on the original costs, artificials banned.
    std::vector<T> phase2_cost(n + m, T{});
    for (int j = 0; j < n; ++j) phase2_cost[j] = c[j];
    std::vector<char> allowed(n + m, 0);
    for (int j = 0; j < n; ++j) allowed[j] = 1;
    LpStatus st = tab.minimize(phase2_cost, allowed);
    result.status = st;
    if (st == LpStatus::optimal) {
        result.x = tab.primal(n);
        result.objective = tab.objective(phase2_cost);
        result.basis = tab.basis();
    }
    return result;
}

// min c·x  s.t.  A x ≤ b, x ≥ 0, with b ≥ 0: starts from the slack basis,
// skipping phase 1 entirely (used by the floating-point search scorer).
template <class T>
LpResult<T> solve_inequality_lp(const Matrix<T>& a, const std::vector<T>& b,
                                const std::vector<T>& c) {
    const int m = static_cast<int>(a.size());
    const int n = m ? static_cast<int>(a[0].size()) : static_cast<int>(c.size());
    LpResult<T> result;
    if (m == 0) {
        for (int j = 0; j < n; ++j)
            if (ScalarTraits<T>::sign(c[j]) < 0) { result.status = LpStatus::unbounded; return result; }
        result.status = LpStatus::optimal;
        result.x.assign(n, T{});
        result.objective = T{};
        return result;
    }
    Matrix<T> m0(m, std::vector<T>(n + m, T{}));
    std::vector<T> rhs(m);
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        if (ScalarTraits<T>::sign(b[i]) < 0)
            throw std::invalid_argument("solve_inequality_lp requires b >= 0");
        for (int j = 0; j < n; ++j) m0[i][j] = a[i][j];
        m0[i][n + i] = T{1};
        rhs[i] = b[i];
        basis[i] = n + i;
    }
    detail::Tableau<T> tab(std::move(m0), std::move(rhs), std::move(basis));
    std::vector<T> cost(n + m, T{});
    for (int j = 0; j < n; ++j) cost[j] = c[j];
    std::vector<char> allowed(n + m, 1);  // slacks may re-enter
    LpStatus st = tab.minimize(cost, allowed);
    result.status = st;
    if (st == LpStatus::optimal) {
        result.x = tab.primal(n);
        result.objective = tab.objective(cost);
        result.basis = tab.basis();
    }
    return result;
}

// Exact Gaussian elimination: some solution of A x = b with free variables
// pinned to zero, or nullopt when the system is inconsistent.
inline std::optional<std::vector<Rational>> solve_linear_system(Matrix<Rational> a,
                                                                std::vector<Rational> b) {
    const int m = static_cast<int>(a.size());
    const int n = m ? static_cast<int>(a[0].size()) : 0;
    std::vector<int> col_of_row(m, -1);
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int p = -1;
        for (int i = r; i < m; ++i)
            if (sgn(a[i][c]) != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        Rational piv = a[r][c];
        for (int k = c; k < n; ++k) a[r][k] /= piv;
        b[r] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == r || sgn(a[i][c]) == 0) continue;
            Rational f = a[i][c];
            for (int k = c; k < n; ++k) a[i][k] -= f * a[r][k];
            b[i] -= f * b[r];
        }
        col_of_row[r] = c;
        ++r;
    }
    for (int i = r; i < m; ++i)
        if (sgn(b[i]) != 0) return std::nullopt;
    std::vector<Rational> x(n, Rational(0));
    for (int i = 0; i < r; ++i) x[col_of_row[i]] = b[i];
    return x;
}

}  // namespace convind
