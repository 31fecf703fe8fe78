#pragma once

// Exact bivariate polynomials and the generating function
// G(x, y) = (E - x sum_j y^j A_{s0+j})^{-1} = N(x, y) / H(x, y).

#include "rotor/matrix.hpp"
#include "rotor/rational.hpp"
#include "rotor/symbolic_graph.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace rotor {

/// Dense integer polynomial in x and y; c[dx][dy] is the coefficient of
/// x^dx y^dy. Trailing zero rows and columns are trimmed.
class BivarPoly {
public:
    BivarPoly() = default;
    BivarPoly(long constant);
    BivarPoly(BigInt constant);

    static BivarPoly monomial(BigInt coeff, std::size_t dx, std::size_t dy);
    /// Takes ownership of a coefficient grid (rows may have different lengths).
    static BivarPoly from_grid(std::vector<std::vector<BigInt>> grid);

    bool is_zero() const noexcept { return c_.empty(); }
    /// Degrees in x and y; 0 for the zero polynomial.
    std::size_t deg_x() const noexcept { return c_.empty() ? 0 : c_.size() - 1; }
    std::size_t deg_y() const noexcept;
    BigInt coeff(std::size_t dx, std::size_t dy) const;
    const std::vector<std::vector<BigInt>>& grid() const noexcept { return c_; }

    BivarPoly& operator+=(const BivarPoly& other);
    BivarPoly& operator-=(const BivarPoly& other);
    BivarPoly& operator*=(const BivarPoly& other);
    friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
    friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
    BivarPoly operator-() const;
    friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.c_ == b.c_; }

    BigInt eval(const BigInt& x, const BigInt& y) const;
    double eval(double x, double y) const;

    /// Canonical text, terms ascending by (dx, dy): "1 - x - x^2*y - x^3*y".
    std::string to_string() const;

private:
    void trim();

    std::vector<std::vector<BigInt>> c_;
};

using PolyMatrix = Matrix<BivarPoly>;

struct Partials {
    double value = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    double dxx = 0.0;
    double dyy = 0.0;
    double dxy = 0.0;
};

/// Value and partials up to second order by nested Horner.
Partials eval_with_partials(const BivarPoly& poly, double x, double y);

/// E - x sum_j y^j A_{s0+j}, with shifted weights as y exponents.
PolyMatrix transfer_matrix(const WeightedGraph& graph);

enum class DetMethod {
    Auto,          ///< cofactor up to kCofactorLimit, interpolation above
    Cofactor,      ///< subset-DP Laplace expansion, O(2^p p) polynomial products
    Interpolation, ///< integer-point evaluation (Bareiss) and Newton interpolation
};

inline constexpr std::size_t kCofactorLimit = 8;

BivarPoly determinant(const PolyMatrix& m, DetMethod method = DetMethod::Auto);
/// adj(M), so that adj(M) M = det(M) E.
PolyMatrix adjugate(const PolyMatrix& m, DetMethod method = DetMethod::Auto);

/// H(x, y) = det(E - x sum_j y^j A_{s0+j}).
BivarPoly denominator_H(const WeightedGraph& graph, DetMethod method = DetMethod::Auto);
/// N = H G, the adjugate of the transfer matrix.
PolyMatrix numerator_matrix(const WeightedGraph& graph, DetMethod method = DetMethod::Auto);

/// Exact determinant of an integer matrix (Bareiss).
BigInt determinant(const Matrix<BigInt>& m);

} // namespace rotor
