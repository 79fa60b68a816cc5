#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sepcoords/jet.hpp"
#include "sepcoords/rng.hpp"

namespace sepcoords {

// Parameter regime the series cannot handle (Gamma pole, logarithmic Whittaker case, ...).
struct SpecfunUnsupported : std::domain_error {
    using std::domain_error::domain_error;
};

struct FnEval {
    cd value{0.0};
    bool converged = false;
    std::size_t terms_used = 0;
    double est_error = 0;
    bool flagged = false;  // a connection-formula term vanished at a Gamma pole
};

// Number of special-function evaluations on this thread.
std::size_t specfun_calls();
void reset_specfun_calls();

FnEval complex_gamma(cd z);
// 1/Gamma(z), zero at the poles.
cd rgamma(cd z);

// The Jet2 overloads differentiate through the series; `info` receives value-level diagnostics.
FnEval bessel_j(cd nu, cd z);
Jet2 bessel_j(cd nu, const Jet2& z, FnEval* info = nullptr);

FnEval kummer_m(cd a, cd b, cd z);
Jet2 kummer_m(cd a, cd b, const Jet2& z, FnEval* info = nullptr);

FnEval whittaker_w(cd kappa, cd mu, cd z);
Jet2 whittaker_w(cd kappa, cd mu, const Jet2& z, FnEval* info = nullptr);

FnEval gauss_2f1(cd a, cd b, cd c, cd z);
Jet2 gauss_2f1(cd a, cd b, cd c, const Jet2& z, FnEval* info = nullptr);

FnEval legendre_p(cd nu, cd mu, cd z);
Jet2 legendre_p(cd nu, cd mu, const Jet2& z, FnEval* info = nullptr);

FnEval jacobi_p(int n, cd alpha, cd beta, cd z);
Jet2 jacobi_p(int n, cd alpha, cd beta, const Jet2& z);
Qi jacobi_p_exact(int n, const Qi& alpha, const Qi& beta, const Qi& z);

FnEval airy_ai(cd z);
Jet2 airy_ai(const Jet2& z, FnEval* info = nullptr);

// Real arguments resolve to the complex-valued overloads.
inline FnEval bessel_j(cd nu, double z) { return bessel_j(nu, cd(z)); }
inline FnEval kummer_m(cd a, cd b, double z) { return kummer_m(a, b, cd(z)); }
inline FnEval whittaker_w(cd kappa, cd mu, double z) { return whittaker_w(kappa, mu, cd(z)); }
inline FnEval gauss_2f1(cd a, cd b, cd c, double z) { return gauss_2f1(a, b, c, cd(z)); }
inline FnEval legendre_p(cd nu, cd mu, double z) { return legendre_p(nu, mu, cd(z)); }
inline FnEval jacobi_p(int n, cd alpha, cd beta, double z) { return jacobi_p(n, alpha, beta, cd(z)); }
inline FnEval airy_ai(double z) { return airy_ai(cd(z)); }

// Value, first and second derivative of a one-variable jet function at x.
template <class F>
std::array<cd, 3> derivs(F&& f, cd x) {
    Jet2 j = f(Jet2::variable(x, 0));
    return {j.v, j.g[0], j.h[0][0]};
}

// |sum of terms| / max |term|
double relative_residual(std::initializer_list<cd> terms);

struct BatteryResult {
    std::string function;
    std::string check;  // "ode" or the identity name
    std::size_t samples = 0;
    double max_residual = 0;
    double tol = 0;
    bool pass = false;
};

// Defining-ODE residuals and identities for every implemented function.
std::vector<BatteryResult> specfun_battery(SplitMix64& rng, std::size_t n_samples = 25);
nlohmann::json to_json(const BatteryResult& r);

}  // namespace sepcoords
