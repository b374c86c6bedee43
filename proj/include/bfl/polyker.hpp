#pragma once

#include "bfl/rational.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace bfl {

using Exponents = std::vector<int>;  // one entry per variable, all >= 0

/// Homogeneous polynomial of fixed degree k in N variables with rational
/// coefficients, stored sparsely by exponent vector.
class HomoPoly {
public:
    HomoPoly(int nvars, int degree) : nvars_(nvars), degree_(degree) {
        if (nvars < 1) throw std::invalid_argument("HomoPoly: need at least one variable");
        if (degree < 0) throw std::invalid_argument("HomoPoly: negative degree");
    }

    static HomoPoly monomial(int nvars, Exponents m, const Rational& coeff = 1) {
        int deg = 0;
        for (int e : m) deg += e;
        HomoPoly p(nvars, deg);
        p.add(std::move(m), coeff);
        return p;
    }

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(Exponents m, const Rational& coeff) {
        if (static_cast<int>(m.size()) != nvars_)
            throw std::invalid_argument("HomoPoly: exponent arity mismatch");
        int deg = 0;
        for (int e : m) {
            if (e < 0) throw std::invalid_argument("HomoPoly: negative exponent");
            deg += e;
        }
        if (deg != degree_) throw std::invalid_argument("HomoPoly: inhomogeneous term");
        if (coeff == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) terms_.emplace(std::move(m), coeff);
        else {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    HomoPoly& operator+=(const HomoPoly& o) {
        if (o.nvars_ != nvars_ || o.degree_ != degree_)
            throw std::invalid_argument("HomoPoly: shape mismatch");
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    friend HomoPoly operator+(HomoPoly a, const HomoPoly& b) { return a += b; }

    HomoPoly operator*(const Rational& r) const {
        HomoPoly out(nvars_, degree_);
        if (r == 0) return out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * r);
        return out;
    }

    /// Multiplication by the variable y_j (1-based).
    HomoPoly times_var(int j) const {
        HomoPoly out(nvars_, degree_ + 1);
        for (const auto& [m, c] : terms_) {
            Exponents e = m;
            e[j - 1] += 1;
            out.terms_.emplace(std::move(e), c);
        }
        return out;
    }

    /// Partial derivative with respect to y_j (1-based).
    HomoPoly d_var(int j) const {
        if (degree_ == 0) return HomoPoly(nvars_, 0);
        HomoPoly out(nvars_, degree_ - 1);
        for (const auto& [m, c] : terms_) {
            if (m[j - 1] == 0) continue;
            Exponents e = m;
            e[j - 1] -= 1;
            out.add(std::move(e), c * Rational(m[j - 1]));
        }
        return out;
    }

    bool operator==(const HomoPoly& o) const {
        return nvars_ == o.nvars_ && degree_ == o.degree_ && terms_ == o.terms_;
    }

private:
    int nvars_;
    int degree_;
    std::map<Exponents, Rational> terms_;
};

/// Element of P^k (x) L: a sum of (homogeneous polynomial) (x) (coordinate s_j).
struct PolyTensor {
    std::vector<std::pair<HomoPoly, int>> parts;  // (p, j) with j 1-based

    int nvars() const { return parts.empty() ? 0 : parts.front().first.nvars(); }
    int degree() const { return parts.empty() ? 0 : parts.front().first.degree(); }

    void check_shape() const {
        for (const auto& [p, j] : parts) {
            if (p.nvars() != nvars() || p.degree() != degree())
                throw std::invalid_argument("PolyTensor: mixed shapes");
            if (j < 1 || j > nvars()) throw std::invalid_argument("PolyTensor: bad index");
        }
    }
};

/// G+ : P^k (x) L -> P^{k+1},  p (x) s_j  |->  p * y_j.
inline HomoPoly gplus(const PolyTensor& t) {
    t.check_shape();
    HomoPoly out(t.nvars(), t.degree() + 1);
    for (const auto& [p, j] : t.parts) out += p.times_var(j);
    return out;
}

/// g- : P^k (x) L -> P^{k-1},  p (x) s_j  |->  dp/dy_j.
inline HomoPoly gminus(const PolyTensor& t) {
    t.check_shape();
    if (t.degree() < 1) throw std::invalid_argument("gminus: degree k >= 1 required");
    HomoPoly out(t.nvars(), t.degree() - 1);
    for (const auto& [p, j] : t.parts) out += p.d_var(j);
    return out;
}

/// All exponent vectors of length nvars summing to total, lexicographic order.
inline std::vector<Exponents> exponents_of_degree(int nvars, int total) {
    std::vector<Exponents> out;
    Exponents cur(nvars, 0);
    auto rec = [&](auto&& self, int pos, int rest) -> void {
        if (pos == nvars - 1) {
            cur[pos] = rest;
            out.push_back(cur);
            return;
        }
        for (int e = rest; e >= 0; --e) {
            cur[pos] = e;
            self(self, pos + 1, rest - e);
        }
    };
    rec(rec, 0, total);
    return out;
}

inline int max_ind(const Exponents& m) {
    for (int i = static_cast<int>(m.size()); i-- > 0;)
        if (m[i] > 0) return i + 1;  // 1-based; 0 for the zero vector
    return 0;
}

/// Kernel basis of G+ on P^k (x) L: elements y^m (y_i (x) s_j - y_j (x) s_i)
/// with |m| = k-1, j > i and j >= max ind(m).
inline std::vector<PolyTensor> kernel_basis(int nvars, int k) {
    if (nvars < 2) throw std::invalid_argument("kernel_basis: N >= 2 required");
    if (k < 1) throw std::invalid_argument("kernel_basis: k >= 1 required");
    std::vector<PolyTensor> out;
    for (const auto& m : exponents_of_degree(nvars, k - 1)) {
        const int lo = max_ind(m);
        for (int j = 2; j <= nvars; ++j) {
            if (j < lo) continue;
            for (int i = 1; i < j; ++i) {
                PolyTensor q;
                q.parts.emplace_back(HomoPoly::monomial(nvars, m).times_var(i), j);
                q.parts.emplace_back(HomoPoly::monomial(nvars, m).times_var(j) * Rational(-1), i);
                out.push_back(std::move(q));
            }
        }
    }
    return out;
}

/// Exact average of p over the unit sphere S^{N-1}:
/// zero unless every exponent is even, otherwise
///   prod_i (m_i - 1)!! / prod_{j=0}^{|m|/2 - 1} (N + 2j).
inline Rational sphere_average(const HomoPoly& p) {
    Rational acc(0);
    for (const auto& [m, c] : p.terms()) {
        bool odd = false;
        for (int e : m)
            if (e % 2 != 0) { odd = true; break; }
        if (odd) continue;
        BigInt num = 1;
        int total = 0;
        for (int e : m) {
            for (int v = e - 1; v >= 1; v -= 2) num *= v;
            total += e;
        }
        BigInt den = 1;
        for (int j = 0; j < total / 2; ++j) den *= (p.nvars() + 2 * j);
        acc += c * Rational(num, den);
    }
    return acc;
}

/// Exact rank by fraction-free Gaussian elimination over the rationals
/// (rows cleared to integers first).
inline int exact_rank(std::vector<std::vector<Rational>> mat) {
    if (mat.empty()) return 0;
    const size_t ncols = mat.front().size();
    size_t row = 0;
    int rank = 0;
    for (size_t col = 0; col < ncols && row < mat.size(); ++col) {
        size_t pivot = row;
        while (pivot < mat.size() && mat[pivot][col] == 0) ++pivot;
        if (pivot == mat.size()) continue;
        std::swap(mat[row], mat[pivot]);
        for (size_t r = row + 1; r < mat.size(); ++r) {
            if (mat[r][col] == 0) continue;
            const Rational factor = mat[r][col] / mat[row][col];
            for (size_t c = col; c < ncols; ++c) mat[r][c] -= factor * mat[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

inline size_t homo_dim(int nvars, int degree) {
    // C(degree + nvars - 1, nvars - 1)
    BigInt num = 1, den = 1;
    for (int i = 1; i <= nvars - 1; ++i) {
        num *= degree + i;
        den *= i;
    }
    return static_cast<size_t>(BigInt(num / den));
}

struct ImageRankReport {
    int nvars = 0;
    int k = 0;
    size_t kernel_size = 0;
    bool kernel_annihilated = false;   // G+ maps every basis element to zero
    bool kernel_independent = false;   // rank of the basis equals its size
    bool images_zero_average = false;  // each g- image has zero sphere average
    int image_rank = 0;
    size_t dim_p0 = 0;                 // dim of zero-average subspace of P^{k-1}
    size_t dim_p = 0;                  // dim P^{k-1}
    bool equal = false;                // image_rank == dim_p0
};

/// Full check of the Euclidean image lemma for one (N, k).
inline ImageRankReport image_rank_check(int nvars, int k) {
    ImageRankReport rep;
    rep.nvars = nvars;
    rep.k = k;
    const auto basis = kernel_basis(nvars, k);
    rep.kernel_size = basis.size();

    rep.kernel_annihilated = true;
    for (const auto& q : basis)
        if (!gplus(q).is_zero()) rep.kernel_annihilated = false;

    // Independence: coordinates of each tensor over the monomial (x) s_j basis.
    const auto monos = exponents_of_degree(nvars, k);
    std::map<Exponents, size_t> mono_index;
    for (size_t i = 0; i < monos.size(); ++i) mono_index.emplace(monos[i], i);
    std::vector<std::vector<Rational>> rows;
    rows.reserve(basis.size());
    for (const auto& q : basis) {
        std::vector<Rational> row(monos.size() * nvars, Rational(0));
        for (const auto& [p, j] : q.parts)
            for (const auto& [m, c] : p.terms())
                row[mono_index.at(m) * nvars + (j - 1)] += c;
        rows.push_back(std::move(row));
    }
    rep.kernel_independent = (exact_rank(rows) == static_cast<int>(basis.size()));

    // Images under g- and their rank over P^{k-1}.
    const auto monos_lo = exponents_of_degree(nvars, k - 1);
    std::map<Exponents, size_t> lo_index;
    for (size_t i = 0; i < monos_lo.size(); ++i) lo_index.emplace(monos_lo[i], i);
    std::vector<std::vector<Rational>> img_rows;
    rep.images_zero_average = true;
    for (const auto& q : basis) {
        const HomoPoly img = gminus(q);
        if (sphere_average(img) != 0) rep.images_zero_average = false;
        std::vector<Rational> row(monos_lo.size(), Rational(0));
        for (const auto& [m, c] : img.terms()) row[lo_index.at(m)] += c;
        img_rows.push_back(std::move(row));
    }
    rep.image_rank = exact_rank(img_rows);

    rep.dim_p = homo_dim(nvars, k - 1);
    // The sphere-average functional vanishes identically on odd degrees.
    rep.dim_p0 = rep.dim_p - ((k - 1) % 2 == 0 ? 1 : 0);
    rep.equal = (rep.image_rank == static_cast<int>(rep.dim_p0));
    return rep;
}

}  // namespace bfl
