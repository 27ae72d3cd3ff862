#pragma once

#include "nilcenter/numeric/real.hpp"

#include <functional>
#include <map>
#include <vector>

namespace nilcenter {

/// Expression DAG for an autonomous ODE x' = f(x) built from +, -, *, / and
/// constants. Nodes are evaluated in creation order, so operands always precede
/// their users.
class TaylorTape {
public:
    enum class Op { State, Const, Add, Sub, Mul, Sqr, Div, Scale, Neg };
    struct Node {
        Op op;
        int a = -1;
        int b = -1;
        Real c;
    };

    explicit TaylorTape(int num_states);

    int num_states() const { return num_states_; }
    int state(int i) const;
    int constant(const Real& c);
    int add(int a, int b);
    int sub(int a, int b);
    int mul(int a, int b);
    int div(int a, int b);
    int neg(int a);
    int scale(int a, const Real& c);
    int pow(int a, int e);
    void set_rhs(int i, int node);

    bool is_const(int node) const { return nodes_[node].op == Op::Const; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<int>& rhs() const { return rhs_; }

private:
    int push(Node n);
    int num_states_;
    std::vector<Node> nodes_;
    std::vector<int> rhs_;
    std::map<std::pair<int, int>, int> pow_cache_;
};

/// Taylor coefficients of every state on one accepted step: x(t0 + s) = sum_k coeffs[i][k] s^k, 0 <= s <= h.
struct TaylorStep {
    Real t0;
    Real h;
    std::vector<std::vector<Real>> coeffs;

    Real eval(int i, const Real& t) const;
    Real eval_derivative(int i, const Real& t) const;
};

struct TaylorStats {
    long steps = 0;
    int order = 0;
};

/// Fixed-order Taylor integrator with the Jorba-Zou step size rule
/// h = rho / e^2 * exp(-0.7/(p-1)), p = ceil(-ln(tol)/2) + 1.
class TaylorSolver {
public:
    TaylorSolver(const TaylorTape& tape, int digits);
    ~TaylorSolver();
    TaylorSolver(const TaylorSolver&) = delete;
    TaylorSolver& operator=(const TaylorSolver&) = delete;

    int order() const { return order_; }
    int digits() const { return digits_; }

    /// Called after every accepted step with the new time and state; may throw.
    using Monitor = std::function<void(const Real& t, const std::vector<Real>& x)>;

    /// Integrates from t0 to t1 > t0. Fills `dense` when given.
    std::vector<Real> integrate(const std::vector<Real>& x0, const Real& t0, const Real& t1,
                                std::vector<TaylorStep>* dense = nullptr, const Monitor& monitor = {},
                                long max_steps = 200000);

    const TaylorStats& stats() const { return stats_; }

private:
    void compute_coefficients();

    const TaylorTape& tape_;
    int digits_;
    long bits_;
    int order_;
    int width_;
    std::vector<__mpfr_struct> buf_; // node-major, (order+1) coefficients per node
    __mpfr_struct tmp_[3];
    TaylorStats stats_;

    __mpfr_struct* coef(int node, int k) { return &buf_[static_cast<size_t>(node) * width_ + k]; }
};

} // namespace nilcenter
