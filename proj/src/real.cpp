#include "cmorder/real.hpp"

#include <cstdio>
#include <vector>

namespace cmorder {

std::string Real::str(int digits) const {
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

Real abs(Real x) {
    mpfr_abs(x.get(), x.get(), MPFR_RNDN);
    return x;
}

Real sqrt(Real x) {
    mpfr_sqrt(x.get(), x.get(), MPFR_RNDN);
    return x;
}

Real log(Real x) {
    mpfr_log(x.get(), x.get(), MPFR_RNDN);
    return x;
}

Real exp(Real x) {
    mpfr_exp(x.get(), x.get(), MPFR_RNDN);
    return x;
}

Real hypot(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real pow2(long e, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
    return r;
}

}  // namespace cmorder
