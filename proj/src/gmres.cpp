#include "nlschwarz/gmres.hpp"

#include <cmath>

namespace nlschwarz {

GmresReport gmres(const LinearOperator& A, const Vector& b, Vector& x,
                  double rel_tol, int max_iter) {
    GmresReport report;
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        x.setZero(b.size());
        report.converged = true;
        report.residual_history.push_back(0.0);
        return report;
    }
    if (x.size() != b.size()) {
        x = Vector::Zero(b.size());
    }

    Vector r = x.isZero(0.0) ? b : Vector(b - A(x));
    double beta = r.norm();
    report.residual_history.push_back(beta / bnorm);
    if (beta / bnorm <= rel_tol) {
        report.converged = true;
        report.relative_residual = beta / bnorm;
        return report;
    }

    std::vector<Vector> V;
    V.reserve(max_iter + 1);
    V.push_back(r / beta);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(max_iter + 1, max_iter);
    Vector cs = Vector::Zero(max_iter), sn = Vector::Zero(max_iter);
    Vector g = Vector::Zero(max_iter + 1);
    g(0) = beta;

    int k = 0;
    bool stop = false;
    for (; k < max_iter && !stop; ++k) {
        Vector w = A(V[k]);
        const double wnorm0 = w.norm();
        for (int i = 0; i <= k; ++i) {
            H(i, k) = V[i].dot(w);
            w -= H(i, k) * V[i];
        }
        H(k + 1, k) = w.norm();
        if (H(k + 1, k) <= 1e-14 * std::max(1.0, wnorm0)) {
            report.breakdown = true;
            stop = true;
        } else {
            V.push_back(w / H(k + 1, k));
        }

        for (int i = 0; i < k; ++i) {
            double t = cs(i) * H(i, k) + sn(i) * H(i + 1, k);
            H(i + 1, k) = -sn(i) * H(i, k) + cs(i) * H(i + 1, k);
            H(i, k) = t;
        }
        double denom = std::hypot(H(k, k), H(k + 1, k));
        if (denom == 0.0) {
            cs(k) = 1.0;
            sn(k) = 0.0;
        } else {
            cs(k) = H(k, k) / denom;
            sn(k) = H(k + 1, k) / denom;
        }
        H(k, k) = denom;
        H(k + 1, k) = 0.0;
        g(k + 1) = -sn(k) * g(k);
        g(k) = cs(k) * g(k);

        double est = std::abs(g(k + 1)) / bnorm;
        report.residual_history.push_back(est);
        if (est <= rel_tol) stop = true;
    }
    report.iterations = k;

    // Back substitution on the rotated Hessenberg system.
    Vector y = Vector::Zero(k);
    for (int i = k - 1; i >= 0; --i) {
        double s = g(i);
        for (int j = i + 1; j < k; ++j) s -= H(i, j) * y(j);
        y(i) = (H(i, i) != 0.0) ? s / H(i, i) : 0.0;
    }
    for (int i = 0; i < k; ++i) x += y(i) * V[i];

    report.relative_residual = report.residual_history.back();
    report.converged = report.relative_residual <= rel_tol;
    return report;
}

}  // namespace nlschwarz
