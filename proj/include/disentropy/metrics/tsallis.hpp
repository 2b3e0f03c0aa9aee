#pragma once

namespace disentropy::metrics {

/// Tsallis q-logarithm (x^(1-q) - 1) / (1 - q), x > 0, q != 1.
/// Evaluated through expm1 so that q close to 1 converges to ln(x).
double q_log(double x, double q);

/// Tsallis q-exponential (1 + (1-q) x)^(1/(1-q)), defined while 1 + (1-q) x >= 0.
double q_exp(double x, double q);

/// Closed-form q = 2 Lambert-Tsallis function W_2(z) = z / (z + 1), z > -1.
/// Satisfies w2(z) * q_exp(w2(z), 2) == z.
double w2(double z);

}  // namespace disentropy::metrics
