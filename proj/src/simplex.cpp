#include "dualkit/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dualkit {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::OPTIMAL: return "OPTIMAL";
        case SolveStatus::INFEASIBLE: return "INFEASIBLE";
        case SolveStatus::UNBOUNDED: return "UNBOUNDED";
        default: return "ITER_LIMIT";
    }
}

namespace {

constexpr double kPivotTol = 1e-10;

// Column bookkeeping for mapping the standardized solution back to the
// original variables: x_orig = sign * x[col] (+ x[col2] * -1 when split).
struct VarMap {
    std::string name;
    int col = -1;
    int col2 = -1;  // negative part when split
    double sign = 1.0;
};

struct Standardized {
    Eigen::MatrixXd A;  // equality rows, b >= 0
    Eigen::VectorXd b;
    Eigen::VectorXd c;  // minimization costs over structural+slack columns
    std::vector<VarMap> vars;
    int num_cols = 0;
};

Standardized standardize(const LinearProgram& lp, bool negate_obj) {
    struct Row {
        SparseVec coeffs;
        ConstraintSense sense;
        double rhs;
    };
    std::vector<Row> rows;
    for (const auto& c : lp.constraints) rows.push_back({c.coefficients, c.sense, c.rhs});

    Standardized st;
    int next_col = 0;
    std::map<std::string, VarMap*> by_name;
    for (const auto& v : lp.variables) {
        VarMap vm;
        vm.name = v.name;
        const bool lo_fin = std::isfinite(v.lower), up_fin = std::isfinite(v.upper);
        if (lo_fin && v.lower == 0.0 && !up_fin) {
            vm.col = next_col++;
        } else if (!lo_fin && up_fin && v.upper == 0.0) {
            vm.col = next_col++;
            vm.sign = -1.0;
        } else {
            // Non-sign bounds become rows; the variable is then free and split.
            if (lo_fin) rows.push_back({{{v.name, 1.0}}, ConstraintSense::GEQ, v.lower});
            if (up_fin) rows.push_back({{{v.name, 1.0}}, ConstraintSense::LEQ, v.upper});
            vm.col = next_col++;
            vm.col2 = next_col++;
        }
        st.vars.push_back(vm);
    }
    for (auto& vm : st.vars) by_name[vm.name] = &vm;

    const int m = static_cast<int>(rows.size());
    const int num_slack = static_cast<int>(
        std::count_if(rows.begin(), rows.end(),
                      [](const Row& r) { return r.sense != ConstraintSense::EQ; }));
    st.num_cols = next_col + num_slack;
    st.A = Eigen::MatrixXd::Zero(m, st.num_cols);
    st.b = Eigen::VectorXd::Zero(m);
    st.c = Eigen::VectorXd::Zero(st.num_cols);

    for (const auto& [name, coef] : lp.objective) {
        const VarMap* vm = by_name.at(name);
        const double cc = (negate_obj ? -coef : coef) * vm->sign;
        st.c(vm->col) += cc;
        if (vm->col2 >= 0) st.c(vm->col2) -= cc;
    }

    int slack_col = next_col;
    for (int i = 0; i < m; ++i) {
        const Row& r = rows[i];
        for (const auto& [name, coef] : r.coeffs) {
            auto it = by_name.find(name);
            if (it == by_name.end()) throw std::invalid_argument("solve: undeclared variable");
            const VarMap* vm = it->second;
            st.A(i, vm->col) += coef * vm->sign;
            if (vm->col2 >= 0) st.A(i, vm->col2) -= coef * vm->sign;
        }
        st.b(i) = r.rhs;
        if (r.sense == ConstraintSense::LEQ)
            st.A(i, slack_col++) = 1.0;
        else if (r.sense == ConstraintSense::GEQ)
            st.A(i, slack_col++) = -1.0;
        if (st.b(i) < 0) {
            st.A.row(i) = -st.A.row(i);
            st.b(i) = -st.b(i);
        }
    }
    return st;
}

enum class PivotOutcome { OPTIMAL, UNBOUNDED, ITER_LIMIT };

// Bland's rule primal iterations on an explicit tableau. `allowed` masks
// out retired artificial columns.
PivotOutcome run_simplex(Eigen::MatrixXd& T, std::vector<int>& basis,
                         const std::vector<bool>& allowed, int max_iters) {
    const int m = static_cast<int>(T.rows()) - 1;
    const int n = static_cast<int>(T.cols()) - 1;
    for (int iter = 0; iter < max_iters; ++iter) {
        int enter = -1;
        for (int j = 0; j < n; ++j)
            if (allowed[j] && T(m, j) < -kPivotTol) { enter = j; break; }
        if (enter < 0) return PivotOutcome::OPTIMAL;

        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < m; ++i) {
            if (T(i, enter) <= kPivotTol) continue;
            const double ratio = T(i, n) / T(i, enter);
            if (leave < 0 || ratio < best_ratio - kPivotTol ||
                (std::abs(ratio - best_ratio) <= kPivotTol && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return PivotOutcome::UNBOUNDED;

        T.row(leave) /= T(leave, enter);
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = T(i, enter);
            if (f != 0.0) T.row(i) -= f * T.row(leave);
        }
        basis[leave] = enter;
    }
    return PivotOutcome::ITER_LIMIT;
}

}  // namespace

SolveResult solve(const LinearProgram& lp) {
    const bool maximize = lp.objective_sense == ObjectiveSense::MAXIMIZE;
    Standardized st = standardize(lp, maximize);
    const int m = static_cast<int>(st.A.rows());
    const int n = st.num_cols;
    const int total = n + m;  // one artificial per row
    const int max_iters = 10 * (m + total);

    // Phase 1 tableau: minimize the artificial sum.
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, total + 1);
    T.block(0, 0, m, n) = st.A;
    for (int i = 0; i < m; ++i) T(i, n + i) = 1.0;
    T.col(total).head(m) = st.b;
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;
    for (int i = 0; i < m; ++i) T(m, n + i) = 1.0;     // phase-1 costs
    for (int i = 0; i < m; ++i) T.row(m) -= T.row(i);  // price out artificials

    std::vector<bool> allowed(total, true);
    auto outcome = run_simplex(T, basis, allowed, max_iters);
    if (outcome == PivotOutcome::ITER_LIMIT) return {SolveStatus::ITER_LIMIT};
    if (-T(m, total) > 1e-7) return {SolveStatus::INFEASIBLE};

    // Drive remaining artificials out of the basis, or mark their rows
    // redundant by leaving them with a zero basic value.
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n) continue;
        int pivot = -1;
        for (int j = 0; j < n; ++j)
            if (std::abs(T(i, j)) > kPivotTol) { pivot = j; break; }
        if (pivot < 0) continue;
        T.row(i) /= T(i, pivot);
        for (int k = 0; k <= m; ++k) {
            if (k == i) continue;
            const double f = T(k, pivot);
            if (f != 0.0) T.row(k) -= f * T.row(i);
        }
        basis[i] = pivot;
    }
    for (int j = n; j < total; ++j) allowed[j] = false;

    // Phase 2: replace the objective row.
    T.row(m).setZero();
    for (int j = 0; j < n; ++j) T(m, j) = st.c(j);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n && T(m, basis[i]) != 0.0) T.row(m) -= T(m, basis[i]) * T.row(i);

    outcome = run_simplex(T, basis, allowed, max_iters);
    if (outcome == PivotOutcome::ITER_LIMIT) return {SolveStatus::ITER_LIMIT};
    if (outcome == PivotOutcome::UNBOUNDED) return {SolveStatus::UNBOUNDED};

    Eigen::VectorXd x = Eigen::VectorXd::Zero(total);
    for (int i = 0; i < m; ++i) x(basis[i]) = T(i, total);

    SolveResult res;
    res.status = SolveStatus::OPTIMAL;
    for (const auto& vm : st.vars) {
        double v = x(vm.col);
        if (vm.col2 >= 0) v -= x(vm.col2);
        res.point[vm.name] = vm.sign * v;
    }
    double value = lp.objective_constant;
    for (const auto& [name, coef] : lp.objective) value += coef * res.point[name];
    res.value = value;
    return res;
}

namespace {

struct DenseRow {
    Eigen::VectorXd a;
    ConstraintSense sense;
    double rhs;
};

bool feasible_point(const std::vector<DenseRow>& rows, const Eigen::VectorXd& x, double tol) {
    for (const auto& r : rows) {
        const double lhs = r.a.dot(x);
        if (r.sense == ConstraintSense::LEQ && lhs > r.rhs + tol) return false;
        if (r.sense == ConstraintSense::GEQ && lhs < r.rhs - tol) return false;
        if (r.sense == ConstraintSense::EQ && std::abs(lhs - r.rhs) > tol) return false;
    }
    return true;
}

// Best vertex of the region clipped to the box |x_i| <= box.
std::optional<std::pair<double, Eigen::VectorXd>> best_boxed_vertex(
    const std::vector<DenseRow>& rows, const Eigen::VectorXd& c, int n, double box) {
    std::vector<DenseRow> all = rows;
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e(i) = 1.0;
        all.push_back({e, ConstraintSense::LEQ, box});
        all.push_back({e, ConstraintSense::GEQ, -box});
    }
    const int k = static_cast<int>(all.size());
    std::optional<std::pair<double, Eigen::VectorXd>> best;
    std::vector<int> idx(n);
    // Enumerate all n-subsets of boundary hyperplanes.
    std::vector<int> comb(n);
    for (int i = 0; i < n; ++i) comb[i] = i;
    auto advance = [&]() {
        int i = n - 1;
        while (i >= 0 && comb[i] == k - n + i) --i;
        if (i < 0) return false;
        ++comb[i];
        for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
        return true;
    };
    if (k < n) return best;
    do {
        Eigen::MatrixXd M(n, n);
        Eigen::VectorXd rhs(n);
        for (int i = 0; i < n; ++i) {
            M.row(i) = all[comb[i]].a.transpose();
            rhs(i) = all[comb[i]].rhs;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        if (!lu.isInvertible()) continue;
        Eigen::VectorXd x = lu.solve(rhs);
        if (!feasible_point(all, x, 1e-7 * std::max(1.0, x.cwiseAbs().maxCoeff())))
            continue;
        const double v = c.dot(x);
        if (!best || v < best->first) best = {v, x};
    } while (advance());
    return best;
}

}  // namespace

SolveResult solve_by_vertex_enumeration(const LinearProgram& lp) {
    const int n = static_cast<int>(lp.variables.size());
    if (n > 3) throw std::invalid_argument("solve_by_vertex_enumeration: more than 3 variables");
    if (n == 0) {
        // Only row feasibility of constant rows matters.
        for (const auto& c : lp.constraints) {
            const double lhs = 0.0;
            if ((c.sense == ConstraintSense::LEQ && lhs > c.rhs + 1e-9) ||
                (c.sense == ConstraintSense::GEQ && lhs < c.rhs - 1e-9) ||
                (c.sense == ConstraintSense::EQ && std::abs(lhs - c.rhs) > 1e-9))
                return {SolveStatus::INFEASIBLE};
        }
        return {SolveStatus::OPTIMAL, lp.objective_constant, {}};
    }

    std::map<std::string, int> idx;
    for (int i = 0; i < n; ++i) idx[lp.variables[i].name] = i;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    const double sign = lp.objective_sense == ObjectiveSense::MAXIMIZE ? -1.0 : 1.0;
    for (const auto& [name, coef] : lp.objective) c(idx.at(name)) = sign * coef;

    std::vector<DenseRow> rows;
    for (const auto& con : lp.constraints) {
        Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
        for (const auto& [name, coef] : con.coefficients) a(idx.at(name)) = coef;
        rows.push_back({a, con.sense, con.rhs});
    }
    for (int i = 0; i < n; ++i) {
        const Variable& v = lp.variables[i];
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e(i) = 1.0;
        if (std::isfinite(v.lower)) rows.push_back({e, ConstraintSense::GEQ, v.lower});
        if (std::isfinite(v.upper)) rows.push_back({e, ConstraintSense::LEQ, v.upper});
    }

    const double box1 = 1e5, box2 = 2e5;
    auto b1 = best_boxed_vertex(rows, c, n, box1);
    if (!b1) return {SolveStatus::INFEASIBLE};
    auto b2 = best_boxed_vertex(rows, c, n, box2);
    // A strictly better optimum on the larger box means a recession
    // direction improves the objective.
    if (!b2 || b2->first < b1->first - 1e-6 * std::max(1.0, std::abs(b1->first)))
        return {SolveStatus::UNBOUNDED};

    SolveResult res;
    res.status = SolveStatus::OPTIMAL;
    res.value = sign * b1->first + lp.objective_constant;
    for (int i = 0; i < n; ++i) res.point[lp.variables[i].name] = b1->second(i);
    return res;
}

}  // namespace dualkit
