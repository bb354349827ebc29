#pragma once

#include <memory>

#include "cubicwave/collocation.hpp"
#include "cubicwave/solutions.hpp"

namespace cubicwave {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class SectorKind {
    Radial, ///< spherically symmetric, supports a = 0 only
    Axisym, ///< axisymmetric about the x^3 axis, supports a = (0,0,a3)
};

const char* sector_name(SectorKind s);

/// Spectral collocation grid on the unit ball for one symmetry sector.
///
/// Radially: Chebyshev points of the doubled grid folded by parity, so the
/// n_r nodes lie in (0,1] with r[0] = 1 and the origin excluded.  A scalar
/// grid function is the restriction of an even function of r; in the Axisym
/// sector the parity is joint, F(-r, mu) = F(r, -mu), and the fold pairs the
/// mirrored Chebyshev column with the mu-reversed Gauss-Legendre column.
/// Flattened node index = i * n_z + k (radial major).
class Grid {
  public:
    SectorKind sector;
    int n_r = 0; ///< radial collocation count
    int n_z = 0; ///< angular (mu) count; 1 in the Radial sector

    VectorXd r;   ///< n_r radial nodes, descending from r[0] = 1
    VectorXd mu;  ///< n_z Gauss-Legendre nodes in (-1,1), ascending
    VectorXd wmu; ///< Gauss-Legendre weights

    VectorXd R;  ///< r per flattened node
    VectorXd MU; ///< mu per flattened node
    Eigen::Matrix<double, Eigen::Dynamic, 3> xi; ///< node coordinates in B

    VectorXd w_vol; ///< volume quadrature weights (includes Jacobian)
    VectorXd w_bdy; ///< boundary weights, supported on the r = 1 ring

    int nodes() const { return n_r * n_z; }

    // radial fold blocks: d/dr = Ar (x) I + Br (x) Flip on the half grid
    MatrixXd Ar, Br, Arr, Brr;
    MatrixXd Dmu, Dmu2; ///< angular differentiation (n_z x n_z)

    // first derivative in r of a grid function
    VectorXd dr(const VectorXd& f) const;
    VectorXd drr(const VectorXd& f) const;
    VectorXd dmu(const VectorXd& f) const;
    VectorXd r_dr(const VectorXd& f) const;      ///< xi^j d_j f = r d_r f
    VectorXd laplacian(const VectorXd& f) const; ///< sector Laplacian
    VectorXd d_xi3(const VectorXd& f) const;     ///< d/d xi^3

    // dense realizations of the same operators (for matrix assembly)
    MatrixXd dense_dr() const;
    MatrixXd dense_r_dr() const;
    MatrixXd dense_laplacian() const;
    MatrixXd dense_d_xi3() const;

    // H-norm Gram blocks: <u,v>_H = u1' G11 v1 + u2' G22 v2
    MatrixXd gram11() const;
    MatrixXd gram22() const;

    double volume_integral(const VectorXd& f) const { return w_vol.dot(f); }
    double boundary_integral(const VectorXd& f) const { return w_bdy.dot(f); }

  private:
    friend std::shared_ptr<const Grid> build_radial_grid(int);
    friend std::shared_ptr<const Grid> build_axisym_grid(int, int);
    Grid() = default;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Chebyshev-Gauss-Lobatto radial grid with even-parity handling at r = 0.
/// Requires n_r >= 8 and even.
GridPtr build_radial_grid(int n_r);

/// Tensor grid in (r, mu = cos theta) for the axisymmetric sector.
/// Requires n_r >= 8, n_z >= 8.
GridPtr build_axisym_grid(int n_r, int n_z);

/// Discretized pair (u1, u2) on a grid.
struct FieldState {
    GridPtr grid;
    VectorXd u1, u2;

    FieldState() = default;
    FieldState(GridPtr g, VectorXd a, VectorXd b)
        : grid(std::move(g)), u1(std::move(a)), u2(std::move(b)) {}
    static FieldState zero(const GridPtr& g) {
        return {g, VectorXd::Zero(g->nodes()), VectorXd::Zero(g->nodes())};
    }

    FieldState& operator+=(const FieldState& o);
    FieldState& operator-=(const FieldState& o);
    FieldState& operator*=(double c);
    friend FieldState operator+(FieldState a, const FieldState& b) { return a += b; }
    friend FieldState operator-(FieldState a, const FieldState& b) { return a -= b; }
    friend FieldState operator*(double c, FieldState a) { return a *= c; }

    bool finite() const { return u1.allFinite() && u2.allFinite(); }
};

void check_same_grid(const FieldState& x, const FieldState& y, const char* op);

/// H inner product: int grad u1 . grad v1 + int_{dB} u1 v1 + int u2 v2.
double inner_product_H(const FieldState& x, const FieldState& y);

inline double norm_H(const FieldState& x) { return std::sqrt(inner_product_H(x, x)); }

/// Pointwise evaluation of a PairField on the grid nodes.
FieldState eval_on_grid(const PairField& f, const GridPtr& g);

/// H^1 x L^2 product norm from the same quadrature (norm-equivalence checks).
double norm_H1L2(const FieldState& x);

} // namespace cubicwave
