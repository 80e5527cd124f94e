#include "pdmeans/rep_function.hpp"

#include <cmath>
#include <sstream>

#include "pdmeans/errors.hpp"

namespace pdmeans {

namespace {

// Normalization checks: g(1) = 0 exactly (1e-14) and g'(1) = 1 by central
// difference; f(1) = 1.
void check_g(const RepFunction& r) {
    if (std::fabs(r.g(1.0)) > 1e-14)
        throw DomainError("RepFunction " + r.name + ": g(1) != 0");
    const double h = 1e-6;
    const double d = (r.g(1.0 + h) - r.g(1.0 - h)) / (2.0 * h);
    if (std::fabs(d - 1.0) > 1e-6)
        throw DomainError("RepFunction " + r.name + ": g'(1) != 1");
}

void check_f(const RepFunction& r) {
    if (std::fabs(r.f(1.0) - 1.0) > 1e-14)
        throw DomainError("RepFunction " + r.name + ": f(1) != 1");
}

}  // namespace

RepFunction RepFunction::g_log() {
    RepFunction r;
    r.name = "log";
    r.g = [](double x) { return std::log(x); };
    check_g(r);
    return r;
}

RepFunction RepFunction::g_linear() {
    RepFunction r;
    r.name = "x-1";
    r.g = [](double x) { return x - 1.0; };
    check_g(r);
    return r;
}

RepFunction RepFunction::g_inverse_linear() {
    RepFunction r;
    r.name = "1-1/x";
    r.g = [](double x) { return 1.0 - 1.0 / x; };
    check_g(r);
    return r;
}

RepFunction RepFunction::g_power(double t) {
    if (t == 0.0) throw DomainError("g_power: t must be nonzero (use g_log)");
    RepFunction r;
    std::ostringstream name;
    name << "power(" << t << ")";
    r.name = name.str();
    r.param = t;
    r.g = [t](double x) { return (std::pow(x, t) - 1.0) / t; };
    check_g(r);
    return r;
}

RepFunction RepFunction::f_power(double t) {
    RepFunction r;
    std::ostringstream name;
    name << "power(" << t << ")";
    r.name = name.str();
    r.param = t;
    r.f = [t](double x) { return std::pow(x, t); };
    if (t != 0.0) r.f_inverse = [t](double y) { return std::pow(y, 1.0 / t); };
    check_f(r);
    return r;
}

RepFunction RepFunction::f_arithmetic(double t) {
    RepFunction r;
    std::ostringstream name;
    name << "arith(" << t << ")";
    r.name = name.str();
    r.param = t;
    r.f = [t](double x) { return (1.0 - t) + t * x; };
    if (t != 0.0) r.f_inverse = [t](double y) { return (y - (1.0 - t)) / t; };
    check_f(r);
    return r;
}

RepFunction RepFunction::f_harmonic(double t) {
    RepFunction r;
    std::ostringstream name;
    name << "harm(" << t << ")";
    r.name = name.str();
    r.param = t;
    r.f = [t](double x) { return 1.0 / ((1.0 - t) + t / x); };
    if (t != 0.0) r.f_inverse = [t](double y) { return t / (1.0 / y - (1.0 - t)); };
    check_f(r);
    return r;
}

RepFunction RepFunction::from_g_name(const std::string& name, double t) {
    if (name == "log") return g_log();
    if (name == "x-1") return g_linear();
    if (name == "1-1/x") return g_inverse_linear();
    if (name == "power") return g_power(t);
    throw DomainError("unknown g function: " + name);
}

RepFunction RepFunction::from_f_name(const std::string& name, double t) {
    if (name == "power") return f_power(t);
    if (name == "arith") return f_arithmetic(t);
    if (name == "harm") return f_harmonic(t);
    throw DomainError("unknown f function: " + name);
}

}  // namespace pdmeans
