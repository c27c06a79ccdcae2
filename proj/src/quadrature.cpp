#include "lss/quadrature.hpp"

namespace lss {

namespace {

struct SimpsonCtx {
    const std::function<double(double)>& f;
    std::size_t evals = 0;
    std::size_t max_evals;

    double eval(double x) {
        if (++evals > max_evals)
            throw NotConverged("adaptive_simpson: evaluation budget exhausted");
        return f(x);
    }
};

double simpson_rec(SimpsonCtx& ctx, double a, double m, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = ctx.eval(lm);
    const double frm = ctx.eval(rm);
    const double h6 = (b - a) / 12.0;
    const double left = h6 * (fa + 4.0 * flm + fm);
    const double right = h6 * (fm + 4.0 * frm + fb);
    const double err = (left + right - whole) / 15.0;
    if (depth <= 0 || std::abs(err) <= tol) return left + right + err;
    return simpson_rec(ctx, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(ctx, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth, std::size_t max_evals) {
    if (!(b > a)) return 0.0;
    SimpsonCtx ctx{f, 0, max_evals};
    const double m = 0.5 * (a + b);
    const double fa = ctx.eval(a);
    const double fm = ctx.eval(m);
    const double fb = ctx.eval(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(ctx, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

double adaptive_simpson_left_power(const std::function<double(double)>& f, double a, double b,
                                   double power, double tol, int max_depth) {
    if (!(b > a)) return 0.0;
    const double len = b - a;
    auto g = [&](double z) {
        if (z <= 0.0) return 0.0;
        const double zp = std::pow(z, power);
        return f(a + len * zp) * len * power * zp / z;
    };
    return adaptive_simpson(g, 0.0, 1.0, tol, max_depth);
}

double trapezoid(const double* grid, const double* values, std::size_t count) {
    double sum = 0.0;
    for (std::size_t i = 1; i < count; ++i)
        sum += 0.5 * (grid[i] - grid[i - 1]) * (values[i] + values[i - 1]);
    return sum;
}

} // namespace lss
