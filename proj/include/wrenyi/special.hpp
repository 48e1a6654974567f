#pragma once

namespace wrenyi::num {

// Gamma function for x > 0; throws InputError otherwise.
double gamma_fn(double x);
double log_gamma(double x);  // log|Gamma(x)|
// Euler beta B(a, b) for a, b > 0; symmetric to the last bit.
double beta_fn(double a, double b);
double log_beta(double a, double b);

// Regularized incomplete functions.
double ibeta(double a, double b, double x);       // I_x(a, b)
double ibetac(double a, double b, double x);      // 1 - I_x(a, b)
double gamma_p(double a, double x);               // P(a, x)
double gamma_q(double a, double x);               // Q(a, x)

// Inverses in the last argument.
double ibeta_inv(double a, double b, double u);  // x with I_x(a, b) = u
double gamma_p_inv(double a, double u);          // x with P(a, x) = u
double beta_pdf(double a, double b, double x);
double gamma_pdf(double shape, double x);         // unit scale

// Factorial in the Gamma sense: c! = Gamma(c + 1).
inline double factorial(double c) { return gamma_fn(c + 1.0); }

}  // namespace wrenyi::num
