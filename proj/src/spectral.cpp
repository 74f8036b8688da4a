#include "pointcast/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "pointcast/errors.hpp"

namespace pointcast {

const char* to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::gft: return "gft";
        case BasisKind::dct: return "dct";
        case BasisKind::none: return "none";
    }
    return "?";
}

BasisKind basis_kind_from_string(const std::string& s) {
    if (s == "gft") return BasisKind::gft;
    if (s == "dct") return BasisKind::dct;
    if (s == "none" || s == "identity") return BasisKind::none;
    throw std::invalid_argument("unknown transform kind '" + s + "'");
}

namespace {

// Make the first entry of each basis vector with magnitude above tol
// positive; resolves the sign ambiguity of eigenvectors / singular vectors.
void fix_signs(Eigen::MatrixXd& basis, Eigen::MatrixXd* paired) {
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        for (Eigen::Index r = 0; r < basis.rows(); ++r) {
            const double v = basis(r, c);
            if (std::abs(v) > 1e-12) {
                if (v < 0.0) {
                    basis.col(c) = -basis.col(c);
                    if (paired) paired->col(c) = -paired->col(c);
                }
                break;
            }
        }
    }
}

bool is_symmetric_kind(LaplacianKind kind) {
    return kind == LaplacianKind::regular || kind == LaplacianKind::normalized;
}

}  // namespace

SpectralBasis build_gft_basis(const GraphSpec& graph) {
    const Eigen::Index n = graph.laplacian.rows();
    SpectralBasis basis;
    basis.kind = BasisKind::gft;

    if (is_symmetric_kind(graph.kind)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(graph.laplacian);
        if (solver.info() != Eigen::Success)
            throw NumericalError("gft: eigendecomposition did not converge");
        basis.decomposition = DecompositionKind::eigen;
        basis.forward = solver.eigenvectors();  // ascending eigenvalues
        basis.spectrum = solver.eigenvalues();
        fix_signs(basis.forward, nullptr);
        basis.inverse = basis.forward.transpose();
        return basis;
    }

    // Non-diagonalizable in general: use the SVD, take the right singular
    // vectors as the transform basis and invert it explicitly.
    Eigen::BDCSVD<Eigen::MatrixXd> svd(graph.laplacian,
                                       Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) throw NumericalError("gft: SVD did not converge");
    basis.decomposition = DecompositionKind::svd;
    basis.forward.resize(n, n);
    basis.left.resize(n, n);
    basis.spectrum.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {  // Eigen sorts descending; we keep ascending
        const Eigen::Index src = n - 1 - k;
        basis.forward.col(k) = svd.matrixV().col(src);
        basis.left.col(k) = svd.matrixU().col(src);
        basis.spectrum(k) = svd.singularValues()(src);
    }
    fix_signs(basis.forward, &basis.left);

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis.forward);
    basis.inverse = lu.inverse();
    if (lu.rcond() < 1e-8) basis.conditioning_warning = true;
    const double residual = (basis.forward * basis.inverse - Eigen::MatrixXd::Identity(n, n)).norm();
    if (!(residual < 1e-8 * std::max(1.0, std::sqrt(static_cast<double>(n)))))
        throw NumericalError("gft: basis inversion residual too large");
    return basis;
}

SpectralBasis build_dct_basis(Eigen::Index n) {
    if (n < 1) throw std::invalid_argument("dct: n must be >= 1");
    SpectralBasis basis;
    basis.kind = BasisKind::dct;
    basis.decomposition = DecompositionKind::eigen;
    basis.forward.resize(n, n);
    const double nd = static_cast<double>(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double scale = k == 0 ? std::sqrt(1.0 / nd) : std::sqrt(2.0 / nd);
        for (Eigen::Index m = 0; m < n; ++m)
            basis.forward(m, k) =
                scale * std::cos(M_PI / nd * (static_cast<double>(m) + 0.5) * static_cast<double>(k));
    }
    basis.inverse = basis.forward.transpose();
    basis.spectrum = Eigen::VectorXd::LinSpaced(n, 0.0, nd - 1.0);  // frequency index
    return basis;
}

SpectralBasis build_identity_basis(Eigen::Index n) {
    if (n < 1) throw std::invalid_argument("identity basis: n must be >= 1");
    SpectralBasis basis;
    basis.kind = BasisKind::none;
    basis.decomposition = DecompositionKind::eigen;
    basis.forward = Eigen::MatrixXd::Identity(n, n);
    basis.inverse = basis.forward;
    basis.spectrum = Eigen::VectorXd::Zero(n);
    return basis;
}

SpectralBasis build_basis(BasisKind kind, const PointCloud& block_cloud,
                          const KernelConfig& kernel, LaplacianKind laplacian, bool sparsify) {
    const Eigen::Index n = block_cloud.size();
    switch (kind) {
        case BasisKind::gft: return build_gft_basis(build_graph(block_cloud, kernel, laplacian, sparsify));
        case BasisKind::dct: return build_dct_basis(n);
        case BasisKind::none: return build_identity_basis(n);
    }
    throw std::invalid_argument("unknown basis kind");
}

SpectralCoefficients forward_transform(const SpectralBasis& basis, const GraphSignal& signal) {
    if (signal.size() != basis.size())
        throw std::invalid_argument("forward_transform: dimension mismatch");
    return basis.forward.transpose() * signal;
}

GraphSignal inverse_transform(const SpectralBasis& basis, const SpectralCoefficients& coeffs) {
    if (coeffs.size() != basis.size())
        throw std::invalid_argument("inverse_transform: dimension mismatch");
    return basis.inverse.transpose() * coeffs;
}

void dump_spectrum(const SpectralBasis& basis, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "index,spectrum\n";
    char buf[40];
    for (Eigen::Index i = 0; i < basis.spectrum.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", basis.spectrum(i));
        out << i << ',' << buf << '\n';
    }
}

}  // namespace pointcast
