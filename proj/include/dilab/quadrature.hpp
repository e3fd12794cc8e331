#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace dilab {

// Adaptive Gauss-Kronrod (G7/K15) integration on [a, b] to an absolute
// tolerance. Recursion splits the interval wherever the embedded error
// estimate exceeds the budget.
inline double integrate_gk(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-12) {
    static const double kx[15] = {
        -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
        -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
        0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
        0.864864423359769,  0.949107912342759,  0.991455371120813};
    static const double kw[15] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
        0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
        0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
        0.104790010322250, 0.063092092629979, 0.022935322010529};
    static const double gw[7] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                 0.417959183673469, 0.381830050505119, 0.279705391489277,
                                 0.129484966168870};

    struct Panel {
        static void eval(const std::function<double(double)>& fn, double lo, double hi, double& kres,
                         double& err) {
            const double c = 0.5 * (lo + hi);
            const double h = 0.5 * (hi - lo);
            double kr = 0.0, gr = 0.0;
            for (int i = 0; i < 15; ++i) {
                const double v = fn(c + h * kx[i]);
                kr += kw[i] * v;
                if (i % 2 == 1) gr += gw[i / 2] * v;
            }
            kres = kr * h;
            err = std::fabs((kr - gr) * h);
        }
    };

    struct Rec {
        const std::function<double(double)>& fn;
        int depth_limit;
        double run(double lo, double hi, double tol, int depth) const {
            double kres, err;
            Panel::eval(fn, lo, hi, kres, err);
            if (err <= tol || depth >= depth_limit) return kres;
            const double mid = 0.5 * (lo + hi);
            return run(lo, mid, 0.5 * tol, depth + 1) + run(mid, hi, 0.5 * tol, depth + 1);
        }
    };

    if (!(b >= a)) throw std::invalid_argument("integrate_gk: b < a");
    if (a == b) return 0.0;
    return Rec{f, 48}.run(a, b, abs_tol, 0);
}

}  // namespace dilab
