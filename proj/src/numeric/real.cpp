#include "nilcenter/numeric/real.hpp"

#include <cstdlib>
#include <sstream>

namespace nilcenter {

Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

Rational rationalize(const Real& x, int digits) {
    Integer bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    // Exact value of x as a dyadic rational, then best approximation by convergents.
    mpq_class exact;
    {
        mpz_class m;
        long e = mpfr_get_z_2exp(m.get_mpz_t(), x.backend().data());
        exact = m;
        if (e >= 0) {
            mpq_mul_2exp(exact.get_mpq_t(), exact.get_mpq_t(), static_cast<unsigned long>(e));
        } else {
            mpq_div_2exp(exact.get_mpq_t(), exact.get_mpq_t(), static_cast<unsigned long>(-e));
        }
    }
    Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    mpq_class rem = exact;
    for (int it = 0; it < 400; ++it) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), rem.get_num_mpz_t(), rem.get_den_mpz_t());
        Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > bound) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        mpq_class frac = rem - mpq_class(a);
        if (frac == 0) break;
        rem = 1 / frac;
    }
    return Rational(h1, k1);
}

int default_digits() {
    if (const char* env = std::getenv("NILCENTER_DIGITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 10 && v <= 2000) return static_cast<int>(v);
    }
    return 30;
}

std::string to_string(const Real& x, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

} // namespace nilcenter
