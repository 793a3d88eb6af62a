#include "nlschwarz/cavity.hpp"

namespace nlschwarz {

CavityProblem::CavityProblem(const CavityConfig& cfg)
    : mesh_(cfg.n), cfg_(cfg), nu_(1.0 / cfg.reynolds) {
    nv_ = mesh_.velocity_node_count();
    np_ = mesh_.pressure_node_count();
    ndof_ = 2 * nv_ + np_;

    // Reference basis at the quadrature points of a degree-6 rule; the
    // convective term integrand has total degree 5.
    for (const auto& pt : duffy_triangle_rule(4)) {
        QpBasis b;
        b.w = pt.weight;
        double l0 = 1.0 - pt.xi - pt.eta, l1 = pt.xi, l2 = pt.eta;
        const double l[3] = {l0, l1, l2};
        const double dl[3][2] = {{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}};
        for (int k = 0; k < 3; ++k) {
            b.M[k] = l[k];
            b.N[k] = l[k] * (2.0 * l[k] - 1.0);
            b.dN[k][0] = (4.0 * l[k] - 1.0) * dl[k][0];
            b.dN[k][1] = (4.0 * l[k] - 1.0) * dl[k][1];
        }
        for (int k = 0; k < 3; ++k) {
            int a = k, c = (k + 1) % 3;
            b.N[3 + k] = 4.0 * l[a] * l[c];
            b.dN[3 + k][0] = 4.0 * (l[a] * dl[c][0] + l[c] * dl[a][0]);
            b.dN[3 + k][1] = 4.0 * (l[a] * dl[c][1] + l[c] * dl[a][1]);
        }
        qp_.push_back(b);
    }

    geom_.resize(mesh_.triangle_count());
    for (int t = 0; t < mesh_.triangle_count(); ++t) {
        const Triangle& tri = mesh_.triangle(t);
        auto p0 = mesh_.pressure_coord(tri.v[0]);
        auto p1 = mesh_.pressure_coord(tri.v[1]);
        auto p2 = mesh_.pressure_coord(tri.v[2]);
        double a = p1[0] - p0[0], c = p1[1] - p0[1];
        double b = p2[0] - p0[0], d = p2[1] - p0[1];
        TriGeom g;
        g.det = a * d - b * c;
        g.invJT = {{{d / g.det, -c / g.det}, {-b / g.det, a / g.det}}};
        geom_[t] = g;
    }

    constrained_.assign(ndof_, 0);
    values_.assign(ndof_, 0.0);
    int top = 2 * cfg.n;
    for (int node = 0; node < nv_; ++node) {
        if (!mesh_.velocity_on_boundary(node)) continue;
        auto l = mesh_.velocity_lattice(node);
        constrained_[vx_dof(node)] = 1;
        constrained_[vy_dof(node)] = 1;
        if (l[1] == top && (cfg.leaky_lid || (l[0] > 0 && l[0] < top)))
            values_[vx_dof(node)] = 1.0;
    }
    constrained_[pressure_dof(mesh_.pressure_node(0, 0))] = 1;
}

Vector CavityProblem::initial_guess() const {
    return Eigen::Map<const Vector>(values_.data(), ndof_);
}

std::array<int, CavityProblem::kElemDofs> CavityProblem::element_dofs(
    int tri) const {
    const Triangle& t = mesh_.triangle(tri);
    std::array<int, kElemDofs> d;
    for (int k = 0; k < 6; ++k) {
        d[k] = vx_dof(t.q[k]);
        d[6 + k] = vy_dof(t.q[k]);
    }
    for (int k = 0; k < 3; ++k) d[12 + k] = pressure_dof(t.v[k]);
    return d;
}

void CavityProblem::element_kernel(
    int tri, const Eigen::Matrix<double, kElemDofs, 1>& ul,
    Eigen::Matrix<double, kElemDofs, 1>* r,
    Eigen::Matrix<double, kElemDofs, kElemDofs>* J) const {
    const TriGeom& g = geom_[tri];
    if (r) r->setZero();
    if (J) J->setZero();
    const bool conv = cfg_.convection;

    for (const QpBasis& b : qp_) {
        double gx[6], gy[6];
        for (int k = 0; k < 6; ++k) {
            gx[k] = g.invJT[0][0] * b.dN[k][0] + g.invJT[0][1] * b.dN[k][1];
            gy[k] = g.invJT[1][0] * b.dN[k][0] + g.invJT[1][1] * b.dN[k][1];
        }
        double vx = 0, vy = 0, vxx = 0, vxy = 0, vyx = 0, vyy = 0, p = 0;
        for (int k = 0; k < 6; ++k) {
            vx += ul(k) * b.N[k];
            vy += ul(6 + k) * b.N[k];
            vxx += ul(k) * gx[k];
            vxy += ul(k) * gy[k];
            vyx += ul(6 + k) * gx[k];
            vyy += ul(6 + k) * gy[k];
        }
        for (int k = 0; k < 3; ++k) p += ul(12 + k) * b.M[k];
        const double W = b.w * g.det;

        if (r) {
            double cx = conv ? vx * vxx + vy * vxy : 0.0;
            double cy = conv ? vx * vyx + vy * vyy : 0.0;
            for (int a = 0; a < 6; ++a) {
                (*r)(a) += W * (nu_ * (vxx * gx[a] + vxy * gy[a]) +
                                cx * b.N[a] - p * gx[a]);
                (*r)(6 + a) += W * (nu_ * (vyx * gx[a] + vyy * gy[a]) +
                                    cy * b.N[a] - p * gy[a]);
            }
            for (int j = 0; j < 3; ++j)
                (*r)(12 + j) += W * (-b.M[j] * (vxx + vyy));
        }
        if (J) {
            for (int a = 0; a < 6; ++a) {
                for (int c = 0; c < 6; ++c) {
                    double diff = nu_ * (gx[c] * gx[a] + gy[c] * gy[a]);
                    if (conv) {
                        double adv = (vx * gx[c] + vy * gy[c]) * b.N[a];
                        (*J)(a, c) += W * (diff + adv + vxx * b.N[c] * b.N[a]);
                        (*J)(a, 6 + c) += W * vxy * b.N[c] * b.N[a];
                        (*J)(6 + a, c) += W * vyx * b.N[c] * b.N[a];
                        (*J)(6 + a, 6 + c) +=
                            W * (diff + adv + vyy * b.N[c] * b.N[a]);
                    } else {
                        (*J)(a, c) += W * diff;
                        (*J)(6 + a, 6 + c) += W * diff;
                    }
                }
                for (int j = 0; j < 3; ++j) {
                    (*J)(a, 12 + j) += W * (-b.M[j] * gx[a]);
                    (*J)(6 + a, 12 + j) += W * (-b.M[j] * gy[a]);
                    (*J)(12 + j, a) += W * (-b.M[j] * gx[a]);
                    (*J)(12 + j, 6 + a) += W * (-b.M[j] * gy[a]);
                }
            }
        }
    }
}

Vector CavityProblem::residual(const Vector& u) const {
    if (u.size() != ndof_)
        throw std::invalid_argument("CavityProblem::residual: size mismatch");
    Vector F = Vector::Zero(ndof_);
    Eigen::Matrix<double, kElemDofs, 1> ul, rl;
    for (int t = 0; t < mesh_.triangle_count(); ++t) {
        auto dofs = element_dofs(t);
        for (int k = 0; k < kElemDofs; ++k) ul(k) = u(dofs[k]);
        element_kernel(t, ul, &rl, nullptr);
        for (int k = 0; k < kElemDofs; ++k) F(dofs[k]) += rl(k);
    }
    for (int d = 0; d < ndof_; ++d)
        if (constrained_[d]) F(d) = 0.0;
    return F;
}

SparseMatrix CavityProblem::jacobian(const Vector& u) const {
    if (u.size() != ndof_)
        throw std::invalid_argument("CavityProblem::jacobian: size mismatch");
    SparseMatrix A(ndof_, ndof_);
    Eigen::Matrix<double, kElemDofs, 1> ul;
    Eigen::Matrix<double, kElemDofs, kElemDofs> Jl;
    for (int t = 0; t < mesh_.triangle_count(); ++t) {
        auto dofs = element_dofs(t);
        for (int k = 0; k < kElemDofs; ++k) ul(k) = u(dofs[k]);
        element_kernel(t, ul, nullptr, &Jl);
        for (int a = 0; a < kElemDofs; ++a) {
            if (constrained_[dofs[a]]) continue;
            for (int c = 0; c < kElemDofs; ++c) {
                if (constrained_[dofs[c]]) continue;
                if (Jl(a, c) != 0.0) A.add(dofs[a], dofs[c], Jl(a, c));
            }
        }
    }
    for (int d = 0; d < ndof_; ++d)
        if (constrained_[d]) A.add(d, d, 1.0);
    A.finalize();
    return A;
}

}  // namespace nlschwarz
