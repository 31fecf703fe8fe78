#include "rotor/genfun.hpp"

#include "rotor/error.hpp"

#include <algorithm>
#include <sstream>

namespace rotor {

BivarPoly::BivarPoly(long constant) : BivarPoly(BigInt(constant)) {}

BivarPoly::BivarPoly(BigInt constant)
{
    if (constant != 0) c_ = {{std::move(constant)}};
}

BivarPoly BivarPoly::monomial(BigInt coeff, std::size_t dx, std::size_t dy)
{
    BivarPoly p;
    if (coeff == 0) return p;
    p.c_.assign(dx + 1, {});
    p.c_[dx].assign(dy + 1, BigInt(0));
    p.c_[dx][dy] = std::move(coeff);
    return p;
}

BivarPoly BivarPoly::from_grid(std::vector<std::vector<BigInt>> grid)
{
    BivarPoly p;
    p.c_ = std::move(grid);
    p.trim();
    return p;
}

void BivarPoly::trim()
{
    for (auto& row : c_) {
        while (!row.empty() && row.back() == 0) row.pop_back();
    }
    while (!c_.empty() && c_.back().empty()) c_.pop_back();
}

std::size_t BivarPoly::deg_y() const noexcept
{
    std::size_t d = 0;
    for (const auto& row : c_)
        if (!row.empty()) d = std::max(d, row.size() - 1);
    return d;
}

BigInt BivarPoly::coeff(std::size_t dx, std::size_t dy) const
{
    if (dx >= c_.size() || dy >= c_[dx].size()) return 0;
    return c_[dx][dy];
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& other)
{
    if (c_.size() < other.c_.size()) c_.resize(other.c_.size());
    for (std::size_t i = 0; i < other.c_.size(); ++i) {
        auto& row = c_[i];
        const auto& src = other.c_[i];
        if (row.size() < src.size()) row.resize(src.size(), BigInt(0));
        for (std::size_t j = 0; j < src.size(); ++j) row[j] += src[j];
    }
    trim();
    return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& other)
{
    return *this += -other;
}

BivarPoly BivarPoly::operator-() const
{
    BivarPoly p = *this;
    for (auto& row : p.c_)
        for (auto& v : row) v = -v;
    return p;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::vector<BigInt>> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        for (std::size_t k = 0; k < b.c_.size(); ++k) {
            const auto& ra = a.c_[i];
            const auto& rb = b.c_[k];
            if (ra.empty() || rb.empty()) continue;
            auto& row = out[i + k];
            if (row.size() < ra.size() + rb.size() - 1) row.resize(ra.size() + rb.size() - 1, BigInt(0));
            for (std::size_t j = 0; j < ra.size(); ++j) {
                if (ra[j] == 0) continue;
                for (std::size_t l = 0; l < rb.size(); ++l) row[j + l] += ra[j] * rb[l];
            }
        }
    }
    return BivarPoly::from_grid(std::move(out));
}

BivarPoly& BivarPoly::operator*=(const BivarPoly& other)
{
    *this = *this * other;
    return *this;
}

BigInt BivarPoly::eval(const BigInt& x, const BigInt& y) const
{
    BigInt acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) {
        BigInt row = 0;
        for (std::size_t j = c_[i].size(); j-- > 0;) row = row * y + c_[i][j];
        acc = acc * x + row;
    }
    return acc;
}

double BivarPoly::eval(double x, double y) const
{
    return eval_with_partials(*this, x, y).value;
}

std::string BivarPoly::to_string() const
{
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        for (std::size_t j = 0; j < c_[i].size(); ++j) {
            const BigInt& v = c_[i][j];
            if (v == 0) continue;
            const bool negative = v < 0;
            if (first) os << (negative ? "-" : "");
            else os << (negative ? " - " : " + ");
            first = false;

            const BigInt mag = abs(v);
            std::vector<std::string> factors;
            if (mag != 1 || (i == 0 && j == 0)) factors.push_back(mag.get_str());
            if (i == 1) factors.emplace_back("x");
            else if (i > 1) factors.push_back("x^" + std::to_string(i));
            if (j == 1) factors.emplace_back("y");
            else if (j > 1) factors.push_back("y^" + std::to_string(j));
            for (std::size_t f = 0; f < factors.size(); ++f) os << (f ? "*" : "") << factors[f];
        }
    }
    return os.str();
}

Partials eval_with_partials(const BivarPoly& poly, double x, double y)
{
    // Per x-degree: the y-polynomial and its first two y-derivatives, then
    // Horner in x carrying first and second x-derivatives.
    struct Triple {
        double v = 0.0, d1 = 0.0, d2 = 0.0;
    };
    const auto& c = poly.grid();
    Triple b, b1, b2;
    for (std::size_t i = c.size(); i-- > 0;) {
        Triple q;
        double h2 = 0.0;
        for (std::size_t j = c[i].size(); j-- > 0;) {
            h2 = h2 * y + q.d1;
            q.d1 = q.d1 * y + q.v;
            q.v = q.v * y + c[i][j].get_d();
        }
        q.d2 = 2.0 * h2;
        b2 = {b2.v * x + b1.v, b2.d1 * x + b1.d1, b2.d2 * x + b1.d2};
        b1 = {b1.v * x + b.v, b1.d1 * x + b.d1, b1.d2 * x + b.d2};
        b = {b.v * x + q.v, b.d1 * x + q.d1, b.d2 * x + q.d2};
    }
    return {b.v, b1.v, b.d1, 2.0 * b2.v, b.d2, b1.d1};
}

PolyMatrix transfer_matrix(const WeightedGraph& graph)
{
    const std::size_t p = graph.size();
    PolyMatrix m = PolyMatrix::identity(p, BivarPoly(), BivarPoly(1));
    for (const auto& e : graph.edges()) {
        m(e.from, e.to) -= BivarPoly::monomial(1, 1, static_cast<std::size_t>(e.weight - graph.s0()));
    }
    return m;
}

BigInt determinant(const Matrix<BigInt>& m)
{
    const std::size_t n = m.rows();
    if (n != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
    if (n == 0) return 1;
    Matrix<BigInt> a = m;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = std::move(t);
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

BivarPoly det_cofactor(const PolyMatrix& m)
{
    // dp[mask]: signed sum over injections of the first popcount(mask) rows
    // onto the columns in mask.
    const std::size_t n = m.rows();
    std::vector<BivarPoly> dp(std::size_t{1} << n);
    dp[0] = BivarPoly(1);
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
        if (dp[mask].is_zero()) continue;
        const auto row = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (row == n) continue;
        for (std::size_t col = 0; col < n; ++col) {
            if (mask & (std::size_t{1} << col) || m(row, col).is_zero()) continue;
            const int above = __builtin_popcountll(mask >> (col + 1));
            BivarPoly term = dp[mask] * m(row, col);
            if (above % 2) dp[mask | (std::size_t{1} << col)] -= term;
            else dp[mask | (std::size_t{1} << col)] += term;
        }
    }
    return dp.back();
}

// Coefficients of the polynomial through (k, values[k]), k = 0..D.
std::vector<BigInt> interpolate(const std::vector<BigInt>& values)
{
    const std::size_t n = values.size();
    std::vector<Rational> dd(values.begin(), values.end());
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t k = n - 1; k >= level; --k) {
            dd[k] = (dd[k] - dd[k - 1]) / Rational(static_cast<long>(level));
        }
    std::vector<Rational> poly{dd[n - 1]};
    for (std::size_t k = n - 1; k-- > 0;) {
        // poly = poly * (t - k) + dd[k]
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j + 1] += poly[j];
            next[j] -= poly[j] * Rational(static_cast<long>(k));
        }
        next[0] += dd[k];
        poly = std::move(next);
    }
    std::vector<BigInt> out;
    out.reserve(poly.size());
    for (auto& v : poly) {
        if (v.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "interpolated determinant is not integral");
        out.emplace_back(v.get_num());
    }
    return out;
}

BivarPoly det_interpolation(const PolyMatrix& m)
{
    const std::size_t n = m.rows();
    std::size_t row_x = 0, row_y = 0, col_x = 0, col_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rx = 0, ry = 0, cx = 0, cy = 0;
        for (std::size_t j = 0; j < n; ++j) {
            rx = std::max(rx, m(i, j).deg_x());
            ry = std::max(ry, m(i, j).deg_y());
            cx = std::max(cx, m(j, i).deg_x());
            cy = std::max(cy, m(j, i).deg_y());
        }
        row_x += rx;
        row_y += ry;
        col_x += cx;
        col_y += cy;
    }
    const std::size_t dx = std::min(row_x, col_x);
    const std::size_t dy = std::min(row_y, col_y);

    // by_x[i][dy]: coefficient of y^dy in det at x = i.
    std::vector<std::vector<BigInt>> by_x(dx + 1);
    Matrix<BigInt> point(n, n, BigInt(0));
    for (std::size_t i = 0; i <= dx; ++i) {
        std::vector<BigInt> column(dy + 1);
        for (std::size_t j = 0; j <= dy; ++j) {
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    point(r, c) = m(r, c).eval(BigInt(static_cast<long>(i)), BigInt(static_cast<long>(j)));
            column[j] = determinant(point);
        }
        by_x[i] = interpolate(column);
    }
    std::vector<std::vector<BigInt>> grid(dx + 1, std::vector<BigInt>(dy + 1, BigInt(0)));
    for (std::size_t j = 0; j <= dy; ++j) {
        std::vector<BigInt> samples(dx + 1);
        for (std::size_t i = 0; i <= dx; ++i) samples[i] = by_x[i][j];
        const auto coeffs = interpolate(samples);
        for (std::size_t i = 0; i <= dx; ++i) grid[i][j] = coeffs[i];
    }
    return BivarPoly::from_grid(std::move(grid));
}

PolyMatrix minor_matrix(const PolyMatrix& m, std::size_t skip_row, std::size_t skip_col)
{
    const std::size_t n = m.rows();
    PolyMatrix out(n - 1, n - 1);
    for (std::size_t i = 0, r = 0; i < n; ++i) {
        if (i == skip_row) continue;
        for (std::size_t j = 0, c = 0; j < n; ++j) {
            if (j == skip_col) continue;
            out(r, c++) = m(i, j);
        }
        ++r;
    }
    return out;
}

} // namespace

BivarPoly determinant(const PolyMatrix& m, DetMethod method)
{
    if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
    if (m.rows() == 0) return BivarPoly(1);
    if (method == DetMethod::Auto) method = m.rows() <= kCofactorLimit ? DetMethod::Cofactor : DetMethod::Interpolation;
    if (method == DetMethod::Cofactor && m.rows() > 20)
        throw Error(ErrorCode::InvalidArgument, "cofactor expansion is limited to 20 rows");
    return method == DetMethod::Cofactor ? det_cofactor(m) : det_interpolation(m);
}

PolyMatrix adjugate(const PolyMatrix& m, DetMethod method)
{
    const std::size_t n = m.rows();
    if (n != m.cols()) throw Error(ErrorCode::InvalidArgument, "adjugate of a non-square matrix");
    PolyMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = BivarPoly(1);
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            BivarPoly d = determinant(minor_matrix(m, j, i), method);
            adj(i, j) = (i + j) % 2 ? -d : d;
        }
    return adj;
}

BivarPoly denominator_H(const WeightedGraph& graph, DetMethod method)
{
    return determinant(transfer_matrix(graph), method);
}

PolyMatrix numerator_matrix(const WeightedGraph& graph, DetMethod method)
{
    return adjugate(transfer_matrix(graph), method);
}

} // namespace rotor
