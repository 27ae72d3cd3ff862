#include "nilcenter/numeric/taylor.hpp"

#include "nilcenter/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nilcenter {

TaylorTape::TaylorTape(int num_states) : num_states_(num_states), rhs_(num_states, -1) {
    if (num_states < 1) throw std::invalid_argument("TaylorTape: need at least one state");
    for (int i = 0; i < num_states; ++i) nodes_.push_back(Node{Op::State, i, -1, Real(0)});
}

int TaylorTape::push(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
}

int TaylorTape::state(int i) const {
    if (i < 0 || i >= num_states_) throw std::out_of_range("TaylorTape::state");
    return i;
}

int TaylorTape::constant(const Real& c) { return push(Node{Op::Const, -1, -1, c}); }

int TaylorTape::add(int a, int b) {
    if (is_const(a) && is_const(b)) return constant(nodes_[a].c + nodes_[b].c);
    if (is_const(a) && nodes_[a].c == 0) return b;
    if (is_const(b) && nodes_[b].c == 0) return a;
    return push(Node{Op::Add, a, b, Real(0)});
}

int TaylorTape::sub(int a, int b) {
    if (is_const(a) && is_const(b)) return constant(nodes_[a].c - nodes_[b].c);
    if (is_const(b) && nodes_[b].c == 0) return a;
    if (is_const(a) && nodes_[a].c == 0) return neg(b);
    return push(Node{Op::Sub, a, b, Real(0)});
}

int TaylorTape::mul(int a, int b) {
    if (is_const(a) && is_const(b)) return constant(nodes_[a].c * nodes_[b].c);
    if (is_const(a)) return scale(b, nodes_[a].c);
    if (is_const(b)) return scale(a, nodes_[b].c);
    if (a == b) return push(Node{Op::Sqr, a, -1, Real(0)});
    return push(Node{Op::Mul, a, b, Real(0)});
}

int TaylorTape::div(int a, int b) {
    if (is_const(b)) {
        if (nodes_[b].c == 0) throw std::domain_error("TaylorTape: division by constant zero");
        return scale(a, Real(1) / nodes_[b].c);
    }
    if (is_const(a) && nodes_[a].c == 0) return a;
    return push(Node{Op::Div, a, b, Real(0)});
}

int TaylorTape::neg(int a) {
    if (is_const(a)) return constant(-nodes_[a].c);
    return push(Node{Op::Neg, a, -1, Real(0)});
}

int TaylorTape::scale(int a, const Real& c) {
    if (c == 1) return a;
    if (c == 0) return constant(Real(0));
    if (is_const(a)) return constant(nodes_[a].c * c);
    if (c == -1) return neg(a);
    if (nodes_[a].op == Op::Scale) return scale(nodes_[a].a, nodes_[a].c * c);
    return push(Node{Op::Scale, a, -1, c});
}

int TaylorTape::pow(int a, int e) {
    if (e < 0) throw std::invalid_argument("TaylorTape::pow: negative exponent");
    if (e == 0) return constant(Real(1));
    if (e == 1) return a;
    auto key = std::make_pair(a, e);
    auto it = pow_cache_.find(key);
    if (it != pow_cache_.end()) return it->second;
    int half = pow(a, e / 2);
    int r = mul(half, half);
    if (e % 2) r = mul(r, a);
    pow_cache_[key] = r;
    return r;
}

void TaylorTape::set_rhs(int i, int node) {
    if (i < 0 || i >= num_states_) throw std::out_of_range("TaylorTape::set_rhs");
    if (node < 0 || node >= static_cast<int>(nodes_.size())) throw std::out_of_range("TaylorTape::set_rhs node");
    rhs_[i] = node;
}

Real TaylorStep::eval(int i, const Real& t) const {
    Real s = t - t0;
    const auto& c = coeffs[i];
    Real acc = c.back();
    for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) acc = acc * s + c[k];
    return acc;
}

Real TaylorStep::eval_derivative(int i, const Real& t) const {
    Real s = t - t0;
    const auto& c = coeffs[i];
    Real acc = 0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) acc = acc * s + c[k] * k;
    return acc;
}

namespace {

// Natural log of |x| in double, safe for magnitudes outside the double range.
double log_abs(const __mpfr_struct* x) {
    long e = 0;
    double m = mpfr_get_d_2exp(&e, x, MPFR_RNDN);
    return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

} // namespace

TaylorSolver::TaylorSolver(const TaylorTape& tape, int digits)
    : tape_(tape), digits_(digits), bits_(digits_to_bits(digits)) {
    for (int i = 0; i < tape.num_states(); ++i) {
        if (tape.rhs()[i] < 0) throw std::invalid_argument("TaylorSolver: state without right-hand side");
    }
    double tol_log = -static_cast<double>(digits) * std::log(10.0);
    order_ = static_cast<int>(std::ceil(-tol_log / 2.0)) + 1;
    width_ = order_ + 1;
    const auto& nodes = tape.nodes();
    buf_.resize(nodes.size() * static_cast<size_t>(width_));
    for (auto& m : buf_) mpfr_init2(&m, bits_);
    for (auto& m : tmp_) mpfr_init2(&m, bits_);
    for (size_t i = 0; i < nodes.size(); ++i) {
        for (int k = 0; k < width_; ++k) mpfr_set_zero(coef(static_cast<int>(i), k), 1);
        if (nodes[i].op == TaylorTape::Op::Const) mpfr_set(coef(static_cast<int>(i), 0), nodes[i].c.backend().data(), MPFR_RNDN);
    }
}

TaylorSolver::~TaylorSolver() {
    for (auto& m : buf_) mpfr_clear(&m);
    for (auto& m : tmp_) mpfr_clear(&m);
}

void TaylorSolver::compute_coefficients() {
    using Op = TaylorTape::Op;
    const auto& nodes = tape_.nodes();
    const auto& rhs = tape_.rhs();
    const int ns = tape_.num_states();
    const int nn = static_cast<int>(nodes.size());
    __mpfr_struct* acc = &tmp_[0];
    __mpfr_struct* prod = &tmp_[1];
    for (int k = 0; k <= order_; ++k) {
        if (k > 0) {
            for (int i = 0; i < ns; ++i) mpfr_div_ui(coef(i, k), coef(rhs[i], k - 1), static_cast<unsigned long>(k), MPFR_RNDN);
        }
        for (int v = ns; v < nn; ++v) {
            const auto& nd = nodes[v];
            switch (nd.op) {
            case Op::State:
            case Op::Const:
                break;
            case Op::Add:
                mpfr_add(coef(v, k), coef(nd.a, k), coef(nd.b, k), MPFR_RNDN);
                break;
            case Op::Sub:
                mpfr_sub(coef(v, k), coef(nd.a, k), coef(nd.b, k), MPFR_RNDN);
                break;
            case Op::Neg:
                mpfr_neg(coef(v, k), coef(nd.a, k), MPFR_RNDN);
                break;
            case Op::Scale:
                mpfr_mul(coef(v, k), coef(nd.a, k), nd.c.backend().data(), MPFR_RNDN);
                break;
            case Op::Mul:
                mpfr_mul(acc, coef(nd.a, 0), coef(nd.b, k), MPFR_RNDN);
                for (int j = 1; j <= k; ++j) {
                    mpfr_mul(prod, coef(nd.a, j), coef(nd.b, k - j), MPFR_RNDN);
                    mpfr_add(acc, acc, prod, MPFR_RNDN);
                }
                mpfr_set(coef(v, k), acc, MPFR_RNDN);
                break;
            case Op::Sqr: {
                mpfr_set_zero(acc, 1);
                for (int j = 0; 2 * j < k; ++j) {
                    mpfr_mul(prod, coef(nd.a, j), coef(nd.a, k - j), MPFR_RNDN);
                    mpfr_add(acc, acc, prod, MPFR_RNDN);
                }
                mpfr_mul_2ui(acc, acc, 1, MPFR_RNDN);
                if (k % 2 == 0) {
                    mpfr_sqr(prod, coef(nd.a, k / 2), MPFR_RNDN);
                    mpfr_add(acc, acc, prod, MPFR_RNDN);
                }
                mpfr_set(coef(v, k), acc, MPFR_RNDN);
                break;
            }
            case Op::Div:
                mpfr_set(acc, coef(nd.a, k), MPFR_RNDN);
                for (int j = 1; j <= k; ++j) {
                    mpfr_mul(prod, coef(nd.b, j), coef(v, k - j), MPFR_RNDN);
                    mpfr_sub(acc, acc, prod, MPFR_RNDN);
                }
                mpfr_div(coef(v, k), acc, coef(nd.b, 0), MPFR_RNDN);
                break;
            }
        }
    }
}

std::vector<Real> TaylorSolver::integrate(const std::vector<Real>& x0, const Real& t0, const Real& t1,
                                          std::vector<TaylorStep>* dense, const Monitor& monitor, long max_steps) {
    const int ns = tape_.num_states();
    if (static_cast<int>(x0.size()) != ns) throw std::invalid_argument("TaylorSolver: state size mismatch");
    if (!(t1 > t0)) throw std::invalid_argument("TaylorSolver: need t1 > t0");
    PrecisionScope scope(digits_ + 5);
    std::vector<Real> x(x0.begin(), x0.end());
    for (auto& xi : x) xi.precision(digits_ + 5);
    Real t = t0;
    t.precision(digits_ + 5);
    const double safety = std::exp(-2.0 - 0.7 / (order_ - 1));
    stats_.order = order_;
    stats_.steps = 0;
    __mpfr_struct* hm = &tmp_[2];
    while (t < t1) {
        if (stats_.steps >= max_steps) {
            throw NumericError("Taylor integrator exceeded " + std::to_string(max_steps) + " steps at t=" +
                               to_string(t, 12));
        }
        for (int i = 0; i < ns; ++i) mpfr_set(coef(i, 0), x[i].backend().data(), MPFR_RNDN);
        compute_coefficients();

        double log_scale = 0.0;
        for (int i = 0; i < ns; ++i) {
            if (!mpfr_zero_p(coef(i, 0))) log_scale = std::max(log_scale, log_abs(coef(i, 0)));
        }
        double log_rho = std::numeric_limits<double>::infinity();
        for (int m : {order_ - 1, order_}) {
            double lnorm = -std::numeric_limits<double>::infinity();
            for (int i = 0; i < ns; ++i) {
                if (!mpfr_number_p(coef(i, m))) throw NumericError("Taylor integrator: non-finite coefficient");
                if (!mpfr_zero_p(coef(i, m))) lnorm = std::max(lnorm, log_abs(coef(i, m)));
            }
            if (std::isfinite(lnorm)) log_rho = std::min(log_rho, (log_scale - lnorm) / m);
        }
        Real remaining = t1 - t;
        Real h;
        bool last = false;
        if (!std::isfinite(log_rho)) {
            h = remaining;
            last = true;
        } else {
            double lh = log_rho + std::log(safety);
            if (lh < -0.9 * std::log(10.0) * digits_) {
                throw NumericError("Taylor integrator: step size underflow at t=" + to_string(t, 12));
            }
            h = exp(Real(lh));
            if (h >= remaining) {
                h = remaining;
                last = true;
            }
        }
        mpfr_set(hm, h.backend().data(), MPFR_RNDN);
        for (int i = 0; i < ns; ++i) {
            __mpfr_struct* a = &tmp_[0];
            mpfr_set(a, coef(i, order_), MPFR_RNDN);
            for (int k = order_ - 1; k >= 0; --k) {
                mpfr_mul(a, a, hm, MPFR_RNDN);
                mpfr_add(a, a, coef(i, k), MPFR_RNDN);
            }
            mpfr_set(x[i].backend().data(), a, MPFR_RNDN);
        }
        if (dense) {
            TaylorStep st;
            st.t0 = t;
            st.h = h;
            st.coeffs.assign(ns, std::vector<Real>(width_));
            for (int i = 0; i < ns; ++i) {
                for (int k = 0; k < width_; ++k) mpfr_set(st.coeffs[i][k].backend().data(), coef(i, k), MPFR_RNDN);
            }
            dense->push_back(std::move(st));
        }
        t = last ? t1 : t + h;
        ++stats_.steps;
        if (monitor) monitor(t, x);
    }
    return x;
}

} // namespace nilcenter
