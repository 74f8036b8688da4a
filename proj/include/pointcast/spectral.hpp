#ifndef POINTCAST_SPECTRAL_HPP
#define POINTCAST_SPECTRAL_HPP

#include <string>

#include <Eigen/Dense>

#include "pointcast/graph.hpp"

namespace pointcast {

enum class BasisKind { gft, dct, none };
enum class DecompositionKind { eigen, svd };

const char* to_string(BasisKind kind);
BasisKind basis_kind_from_string(const std::string& s);

/// One attribute (x, y, z, Y, U or V) over the vertices.
using GraphSignal = Eigen::VectorXd;
using SpectralCoefficients = Eigen::VectorXd;

/// Decorrelation basis. Column i of `forward` is the i-th basis vector, so
/// the coefficient vector follows the row convention s = f * Phi, and
/// reconstruction is fhat = shat * Phi^{-1}.
struct SpectralBasis {
    Eigen::MatrixXd forward;   // Phi (eigenvectors, DCT-II matrix, or identity)
    Eigen::MatrixXd inverse;   // Phi^{-1}; transpose of Phi where orthonormal
    Eigen::MatrixXd left;      // Psi, left singular vectors (SVD path only)
    Eigen::VectorXd spectrum;  // eigenvalues / singular values, ascending
    BasisKind kind = BasisKind::gft;
    DecompositionKind decomposition = DecompositionKind::eigen;
    bool conditioning_warning = false;  // set when cond(Phi) exceeds 1e8

    [[nodiscard]] Eigen::Index size() const { return forward.rows(); }
};

/// GFT basis of the graph's Laplacian. Symmetric kinds (regular, normalized)
/// use the eigendecomposition with an orthonormal basis; non-symmetric kinds
/// (transition, random_walk) use the SVD with the right singular vectors as
/// the basis and an explicitly computed inverse. The spectrum is ascending
/// and each basis vector's first nonzero entry is made positive, so the
/// output is deterministic across runs. Throws NumericalError when the
/// decomposition does not converge.
SpectralBasis build_gft_basis(const GraphSpec& graph);

/// Orthonormal DCT-II basis of size n (applied in stored point order).
SpectralBasis build_dct_basis(Eigen::Index n);

/// Identity basis of size n (the no-decorrelation baseline).
SpectralBasis build_identity_basis(Eigen::Index n);

/// Basis selection for one block per the configured transform.
SpectralBasis build_basis(BasisKind kind, const PointCloud& block_cloud,
                          const KernelConfig& kernel, LaplacianKind laplacian,
                          bool sparsify = false);

/// s = f Phi (equivalently s_i = <f, column i of Phi>).
SpectralCoefficients forward_transform(const SpectralBasis& basis, const GraphSignal& signal);

/// fhat = shat Phi^{-1}.
GraphSignal inverse_transform(const SpectralBasis& basis, const SpectralCoefficients& coeffs);

/// Writes "index,spectrum" CSV rows for spectrum inspection.
void dump_spectrum(const SpectralBasis& basis, const std::string& path);

}  // namespace pointcast

#endif
