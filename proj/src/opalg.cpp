#include "cv2design/opalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace cv2design {

namespace {

void require_nonempty(const ComplexMatrix& x, const char* who) {
    if (x.rows() == 0 || x.cols() == 0) {
        throw DimensionError(std::string(who) + ": empty matrix");
    }
}

}  // namespace

Complex hs_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw DimensionError("hs_inner: shape mismatch");
    }
    require_nonempty(x, "hs_inner");
    // Tr(x^dag y) = sum_ij conj(x_ij) y_ij
    return (x.conjugate().cwiseProduct(y)).sum();
}

double schatten_norm(const ComplexMatrix& x, int p) {
    require_nonempty(x, "schatten_norm");
    if (p == 2) {
        return x.norm();
    }
    if (p == 1) {
        Eigen::JacobiSVD<ComplexMatrix> svd(x);
        return svd.singularValues().sum();
    }
    throw ParameterError("schatten_norm: only p = 1 and p = 2 are supported");
}

double trace_norm(const ComplexMatrix& x) { return 0.5 * schatten_norm(x, 1); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_nonempty(a, "kron");
    require_nonempty(b, "kron");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix pair_identity(int d) {
    if (d < 1) throw DimensionError("pair_identity: d must be positive");
    return ComplexMatrix::Identity(d * d, d * d);
}

ComplexMatrix pair_swap(int d) {
    if (d < 1) throw DimensionError("pair_swap: d must be positive");
    ComplexMatrix f = ComplexMatrix::Zero(d * d, d * d);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            f(a * d + b, b * d + a) = 1.0;
        }
    }
    return f;
}

ComplexMatrix pair_diag_projector(int d) {
    if (d < 1) throw DimensionError("pair_diag_projector: d must be positive");
    ComplexMatrix e = ComplexMatrix::Zero(d * d, d * d);
    for (int a = 0; a < d; ++a) {
        e(a * d + a, a * d + a) = 1.0;
    }
    return e;
}

namespace {

int reduce_offset(int d, int offset, const char* who) {
    if (d < 1) throw DimensionError(std::string(who) + ": d must be positive");
    int u = ((offset % d) + d) % d;
    if (u == 0) {
        throw ParameterError(std::string(who) +
                             ": offset must be nonzero mod d");
    }
    return u;
}

}  // namespace

ComplexMatrix ladder_diag(int d, int offset) {
    int u = reduce_offset(d, offset, "ladder_diag");
    ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
    for (int a = 0; a < d; ++a) {
        int b = (a + u) % d;
        m(a * d + b, a * d + b) = 1.0;
    }
    return m;
}

ComplexMatrix ladder_swap(int d, int offset) {
    int u = reduce_offset(d, offset, "ladder_swap");
    ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
    for (int a = 0; a < d; ++a) {
        int b = (a + u) % d;
        m(a * d + b, b * d + a) = 1.0;
    }
    return m;
}

ComplexMatrix PairBasisOperator::materialize(int d) const {
    switch (kind) {
        case Kind::Identity:
            return pair_identity(d);
        case Kind::Swap:
            return pair_swap(d);
        case Kind::DiagProjector:
            return pair_diag_projector(d);
        case Kind::LadderDiag:
            return ladder_diag(d, offset);
        case Kind::LadderSwap:
            return ladder_swap(d, offset);
    }
    throw ParameterError("PairBasisOperator: unknown kind");
}

CommutantDecomposition decompose_commutant(const ComplexMatrix& x, int d) {
    if (d < 2) {
        throw DimensionError("decompose_commutant: d must be at least 2");
    }
    const Eigen::Index n = Eigen::Index(d) * d;
    if (x.rows() != n || x.cols() != n) {
        throw DimensionError("decompose_commutant: expected a d^2 x d^2 input");
    }
    // Gram system for span{I, F}: <I,I> = <F,F> = d^2, <I,F> = Tr F = d.
    // Solve [d^2 d; d d^2] (a, f) = (Tr x, Tr Fx).
    Complex tr = x.trace();
    Complex trf = 0.0;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            trf += x(b * d + a, a * d + b);  // <ab|F x|ab> = <ba|x|ab>
        }
    }
    const double d2 = double(d) * d;
    const double det = d2 * d2 - d2;  // d^2 (d^2 - 1)
    CommutantDecomposition out;
    out.identity_coeff = (d2 * tr - double(d) * trf) / det;
    out.swap_coeff = (d2 * trf - double(d) * tr) / det;
    out.complement = x;
    out.complement -=
        out.identity_coeff * ComplexMatrix::Identity(n, n).eval();
    const ComplexMatrix f = pair_swap(d);
    out.complement -= out.swap_coeff * f;
    return out;
}

bool is_density_matrix(const ComplexMatrix& rho, double tol_herm,
                       double tol_eig, double tol_trace) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) return false;
    if ((rho - rho.adjoint().eval()).cwiseAbs().maxCoeff() > tol_herm)
        return false;
    if (std::abs(rho.trace() - Complex(1.0)) > tol_trace) return false;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho,
                                                    Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() > -tol_eig;
}

}  // namespace cv2design
