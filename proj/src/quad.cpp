#include "hdisc/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace hdisc {

namespace {

// 15-point Kronrod abscissae/weights on [-1,1] and the embedded 7-point Gauss
// weights (QUADPACK dqk15 constants).
const double xgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                       0.741531185599394, 0.586087235467691, 0.405845151377397,
                       0.207784955007898, 0.000000000000000};
const double wgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                       0.140653259715525, 0.169004726639267, 0.190350578064785,
                       0.204432940075298, 0.209482141084728};
const double wg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                      0.417959183673469};

struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

}  // namespace

void gk15_panel(const std::function<double(double)>& f, double a, double b,
                double& value, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double resk = wgk[7] * fc;
    double resg = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double fa = f(c - h * xgk[j]);
        double fb = f(c + h * xgk[j]);
        resk += wgk[j] * (fa + fb);
        if (j % 2 == 1) resg += wg[j / 2] * (fa + fb);
    }
    value = resk * h;
    err = std::abs((resk - resg) * h);
}

void gk15_nodes(double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    nodes.push_back(c);
    weights.push_back(wgk[7] * h);
    for (int j = 0; j < 7; ++j) {
        nodes.push_back(c - h * xgk[j]);
        weights.push_back(wgk[j] * h);
        nodes.push_back(c + h * xgk[j]);
        weights.push_back(wgk[j] * h);
    }
}

QuadResult integrate_adaptive_panels(const std::function<double(double)>& f,
                                     const std::vector<double>& breakpoints, double abs_tol,
                                     double rel_tol, int max_panels) {
    QuadResult out;
    std::priority_queue<Panel> heap;
    double total = 0.0, total_err = 0.0;
    int evals = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        Panel p{breakpoints[i], breakpoints[i + 1], 0.0, 0.0};
        if (p.b <= p.a) continue;
        gk15_panel(f, p.a, p.b, p.value, p.err);
        evals += 15;
        total += p.value;
        total_err += p.err;
        heap.push(p);
    }
    auto tol = [&](double v) { return std::max(abs_tol, rel_tol * std::abs(v)); };
    while (total_err > tol(total) && static_cast<int>(heap.size()) < max_panels) {
        Panel p = heap.top();
        heap.pop();
        total -= p.value;
        total_err -= p.err;
        double m = 0.5 * (p.a + p.b);
        if (m <= p.a || m >= p.b) {  // interval exhausted at machine precision
            total += p.value;
            break;
        }
        Panel l{p.a, m, 0.0, 0.0}, r{m, p.b, 0.0, 0.0};
        gk15_panel(f, l.a, l.b, l.value, l.err);
        gk15_panel(f, r.a, r.b, r.value, r.err);
        evals += 30;
        total += l.value + r.value;
        total_err += l.err + r.err;
        heap.push(l);
        heap.push(r);
    }
    out.value = total;
    out.error_bound = total_err;
    out.converged = total_err <= tol(total);
    out.evaluations = evals;
    return out;
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_panels) {
    return integrate_adaptive_panels(f, {a, b}, abs_tol, rel_tol, max_panels);
}

double pairwise_sum(const std::vector<double>& v) {
    std::function<double(std::size_t, std::size_t)> rec = [&](std::size_t lo,
                                                              std::size_t hi) -> double {
        if (hi - lo <= 8) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += v[i];
            return s;
        }
        std::size_t mid = lo + (hi - lo) / 2;
        return rec(lo, mid) + rec(mid, hi);
    };
    return v.empty() ? 0.0 : rec(0, v.size());
}

}  // namespace hdisc
