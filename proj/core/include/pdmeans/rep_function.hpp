#pragma once

#include <functional>
#include <string>

namespace pdmeans {

/// A named scalar generator for mean equations.
///
/// Two roles, not always both present:
///  - g: (0,inf) -> R with g(1) = 0, g'(1) = 1, drives the generalized
///    mean equation sum_i w_i g(.) = 0;
///  - f: (0,inf) -> (0,inf) with f(1) = 1, the representing function of
///    an operator mean / alternative mean.
struct RepFunction {
    std::string name;
    std::function<double(double)> g;          // may be empty
    std::function<double(double)> f;          // may be empty
    std::function<double(double)> f_inverse;  // may be empty
    double param = 0.0;

    bool has_g() const { return static_cast<bool>(g); }
    bool has_f() const { return static_cast<bool>(f); }

    // g catalog
    static RepFunction g_log();                 // log x
    static RepFunction g_linear();              // x - 1
    static RepFunction g_inverse_linear();      // 1 - 1/x
    static RepFunction g_power(double t);       // (x^t - 1)/t, t != 0

    // f catalog
    static RepFunction f_power(double t);       // x^t
    static RepFunction f_arithmetic(double t);  // (1-t) + t x
    static RepFunction f_harmonic(double t);    // ((1-t) + t/x)^{-1}

    /// Lookup by catalog name ("log", "x-1", "1-1/x", "power").
    static RepFunction from_g_name(const std::string& name, double t);
    /// Lookup by catalog name ("power", "arith", "harm").
    static RepFunction from_f_name(const std::string& name, double t);
};

}  // namespace pdmeans
