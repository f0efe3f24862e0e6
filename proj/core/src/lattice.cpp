#include "qnet/lattice.hpp"

#include <numeric>
#include <tuple>
#include <utility>

#include "qnet/error.hpp"

namespace qnet {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::invalid_argument, "integer overflow in lattice reduction");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::invalid_argument, "integer overflow in lattice reduction");
    return r;
}

// row_a <- x*row_a + y*row_b (element-wise, checked)
IntVector mix(const IntVector& a, std::int64_t x, const IntVector& b, std::int64_t y) {
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_add(checked_mul(x, a[i]), checked_mul(y, b[i]));
    return out;
}

// Extended Euclid: returns g = gcd(a, b) >= 0 with s*a + t*b == g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
    std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        const std::int64_t q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    if (a < 0) {
        a = -a;
        s0 = -s0;
        t0 = -t0;
    }
    s = s0;
    t = t0;
    return a;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace

IntegerLattice::IntegerLattice(std::vector<IntVector> generators, std::size_t dim) : dim_(dim), count_(generators.size()) {
    std::vector<IntVector> rows = std::move(generators);
    std::vector<IntVector> trans(rows.size(), IntVector(rows.size(), 0));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != dim) throw Error(ErrorKind::invalid_argument, "lattice generator has the wrong dimension");
        trans[i][i] = 1;
    }

    std::size_t top = 0;
    for (std::size_t col = 0; col < dim && top < rows.size(); ++col) {
        // Fold every lower row into `top` so that only `top` is nonzero in this column.
        for (std::size_t r = top + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            const std::int64_t a = rows[top][col];
            const std::int64_t b = rows[r][col];
            std::int64_t s, t;
            const std::int64_t g = ext_gcd(a, b, s, t);
            const std::int64_t u = a / g;
            const std::int64_t v = b / g;
            IntVector new_top = mix(rows[top], s, rows[r], t);
            IntVector new_r = mix(rows[r], u, rows[top], -v);
            IntVector new_top_t = mix(trans[top], s, trans[r], t);
            IntVector new_r_t = mix(trans[r], u, trans[top], -v);
            rows[top] = std::move(new_top);
            rows[r] = std::move(new_r);
            trans[top] = std::move(new_top_t);
            trans[r] = std::move(new_r_t);
        }
        if (rows[top][col] == 0) continue;
        if (rows[top][col] < 0) {
            for (auto& x : rows[top]) x = -x;
            for (auto& x : trans[top]) x = -x;
        }
        // Reduce the entries above the pivot into [0, pivot).
        for (std::size_t r = 0; r < top; ++r) {
            const std::int64_t q = floor_div(rows[r][col], rows[top][col]);
            if (q == 0) continue;
            rows[r] = mix(rows[r], 1, rows[top], -q);
            trans[r] = mix(trans[r], 1, trans[top], -q);
        }
        pivots_.push_back(col);
        ++top;
    }
    rows.resize(top);
    trans.resize(top);
    basis_ = std::move(rows);
    transform_ = std::move(trans);
}

std::optional<IntVector> IntegerLattice::coefficients(const IntVector& v) const {
    if (v.size() != dim_) throw Error(ErrorKind::invalid_argument, "vector has the wrong dimension");
    IntVector rest = v;
    IntVector coeff(count_, 0);
    std::size_t r = 0;
    for (std::size_t col = 0; col < dim_; ++col) {
        if (r < pivots_.size() && pivots_[r] == col) {
            const std::int64_t p = basis_[r][col];
            if (rest[col] % p != 0) return std::nullopt;
            const std::int64_t q = rest[col] / p;
            if (q != 0) {
                rest = mix(rest, 1, basis_[r], -q);
                for (std::size_t j = 0; j < count_; ++j) coeff[j] = checked_add(coeff[j], checked_mul(q, transform_[r][j]));
            }
            ++r;
        } else if (rest[col] != 0) {
            return std::nullopt;
        }
    }
    return coeff;
}

bool IntegerLattice::contains(const IntVector& v) const { return coefficients(v).has_value(); }

} // namespace qnet
