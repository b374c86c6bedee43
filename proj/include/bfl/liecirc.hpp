#pragma once

#include "bfl/trigpoly.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace bfl {

/// Finite sum over degrees k of H_{k,h_k}(s,y) = h_k(s) y^k / sqrt(1+y^2),
/// stored as the map k -> h_k with exact rational coefficient functions.
class GradedElement {
public:
    GradedElement() : ring_(Ring::CircleTrig) {}
    explicit GradedElement(Ring ring) : ring_(ring) {}

    static GradedElement term(int degree, CoeffFn h) {
        GradedElement e(h.ring());
        e.set(degree, std::move(h));
        return e;
    }

    Ring ring() const { return ring_; }
    const std::map<int, CoeffFn>& parts() const { return parts_; }
    bool is_zero() const { return parts_.empty(); }
    int max_degree() const { return parts_.empty() ? 0 : parts_.rbegin()->first; }

    /// Max frequency (resp. s-degree) over all stored coefficient functions.
    int max_band() const {
        int b = 0;
        for (const auto& [k, h] : parts_) b = std::max(b, h.band());
        return b;
    }

    void set(int degree, CoeffFn h) {
        if (degree < 0) throw std::invalid_argument("GradedElement: negative degree");
        if (h.ring() != ring_) throw std::domain_error("GradedElement: ring mismatch");
        if (h.is_zero()) parts_.erase(degree);
        else parts_[degree] = std::move(h);
    }

    void add(int degree, const CoeffFn& h) {
        if (h.is_zero()) return;
        if (h.ring() != ring_) throw std::domain_error("GradedElement: ring mismatch");
        auto it = parts_.find(degree);
        if (it == parts_.end()) parts_.emplace(degree, h);
        else {
            it->second += h;
            if (it->second.is_zero()) parts_.erase(it);
        }
    }

    /// Projection pi_k: the stored coefficient at degree k (zero if absent).
    CoeffFn project(int k) const {
        auto it = parts_.find(k);
        return it == parts_.end() ? CoeffFn::zero(ring_) : it->second;
    }

    GradedElement& operator+=(const GradedElement& o) {
        for (const auto& [k, h] : o.parts_) add(k, h);
        return *this;
    }
    GradedElement& operator-=(const GradedElement& o) {
        for (const auto& [k, h] : o.parts_) add(k, h * Rational(-1));
        return *this;
    }
    friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
    friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
    GradedElement operator*(const Rational& r) const {
        GradedElement out(ring_);
        if (r == 0) return out;
        for (const auto& [k, h] : parts_) out.parts_.emplace(k, h * r);
        return out;
    }

    bool operator==(const GradedElement& o) const {
        return ring_ == o.ring_ && parts_ == o.parts_;
    }

private:
    Ring ring_;
    std::map<int, CoeffFn> parts_;
};

/// {H_{d,f}, H_{k,g}} = H_{d+k-1, d f g' - k f' g} + H_{d+k+1, (d-1) f g' - (k-1) f' g},
/// extended bilinearly; degree -1 contributions vanish identically.
inline GradedElement bracket(const GradedElement& a, const GradedElement& b) {
    if (a.ring() != b.ring()) throw std::domain_error("bracket: ring mismatch");
    GradedElement out(a.ring());
    for (const auto& [d, f] : a.parts()) {
        const CoeffFn fp = f.derivative();
        for (const auto& [k, g] : b.parts()) {
            const CoeffFn gp  = g.derivative();
            const CoeffFn fgp = f * gp;
            const CoeffFn fpg = fp * g;
            if (d + k - 1 >= 0) out.add(d + k - 1, fgp * Rational(d) - fpg * Rational(k));
            out.add(d + k + 1, fgp * Rational(d - 1) - fpg * Rational(k - 1));
        }
    }
    return out;
}

/// Circle average of h as a multiple of 2*pi: returns h-hat / (2*pi) exactly.
inline Rational average_over_2pi(const CoeffFn& h) { return h.mean_coeff(); }

struct RapavResult {
    Rational lhs;  // (d+k-2) * h-hat_{d+k-1} / (2 pi)
    Rational rhs;  // (d+k)   * h-hat_{d+k+1} / (2 pi)
    bool equal;
};

/// Checks (d+k-2) hhat_{d+k-1} = (d+k) hhat_{d+k+1} for the bracket coefficients
/// h_{d+k-1} = (d+k) f g' - k (fg)', h_{d+k+1} = (d+k-2) f g' - (k-1) (fg)'.
inline RapavResult rapav_check(int d, int k, const CoeffFn& f, const CoeffFn& g) {
    if (f.ring() != Ring::CircleTrig || g.ring() != Ring::CircleTrig)
        throw std::domain_error("rapav_check: circle ring required");
    const CoeffFn fgp  = f * g.derivative();
    const CoeffFn fgd  = (f * g).derivative();
    const CoeffFn hlo  = fgp * Rational(d + k) - fgd * Rational(k);
    const CoeffFn hhi  = fgp * Rational(d + k - 2) - fgd * Rational(k - 1);
    RapavResult r;
    r.lhs   = Rational(d + k - 2) * hlo.mean_coeff();
    r.rhs   = Rational(d + k) * hhi.mean_coeff();
    r.equal = (r.lhs == r.rhs);
    return r;
}

/// R_j = j y^{2j-1} + (j-1) y^{2j+1} as a constant-coefficient graded element.
inline GradedElement r_poly(int j, Ring ring = Ring::CircleTrig) {
    if (j < 2) throw std::invalid_argument("r_poly: j >= 2 required");
    GradedElement e(ring);
    e.set(2 * j - 1, CoeffFn::constant(ring, Rational(j)));
    e.set(2 * j + 1, CoeffFn::constant(ring, Rational(j - 1)));
    return e;
}

struct OddConstraintReport {
    // a_j = constant Fourier coefficient of h_{2j+1} (j >= 1), i.e. hhat_{2j+1}/(2 pi).
    std::vector<std::pair<int, Rational>> a;  // (j, a_j), nonzero entries only
    Rational constraint{0};                   // sum_j (-1)^j j a_j
    bool member = false;
};

/// Membership test for the closed-curve algebra: degree 1 and all even degrees
/// are unconstrained; zero-average odd parts are unconstrained; the constant
/// parts a_j of odd degrees 2j+1 >= 3 must satisfy sum (-1)^j j a_j = 0.
inline OddConstraintReport gglob_membership(const GradedElement& e) {
    if (e.ring() != Ring::CircleTrig)
        throw std::domain_error("gglob_membership: circle ring required");
    OddConstraintReport rep;
    for (const auto& [deg, h] : e.parts()) {
        if (deg < 3 || deg % 2 == 0) continue;
        const int j = (deg - 1) / 2;
        const Rational aj = h.mean_coeff();
        if (aj != 0) rep.a.emplace_back(j, aj);
        rep.constraint += Rational((j % 2 == 0) ? j : -j) * aj;
    }
    rep.member = (rep.constraint == 0);
    return rep;
}

// ---------------------------------------------------------------------------
// Exact linear algebra over the graded coordinate basis.
// Coordinates: (degree k, band b, slot) with slot 0 = cos/power, 1 = sin.
// ---------------------------------------------------------------------------

struct GradedCoord {
    int degree;
    int band;
    int slot;
    auto operator<=>(const GradedCoord&) const = default;
};

using SparseVec = std::map<GradedCoord, Rational>;

inline SparseVec to_coords(const GradedElement& e) {
    SparseVec v;
    for (const auto& [k, h] : e.parts()) {
        if (h.ring() == Ring::CircleTrig) {
            for (const auto& [freq, pair] : h.trig().terms()) {
                if (pair.c != 0) v[{k, freq, 0}] = pair.c;
                if (pair.s != 0) v[{k, freq, 1}] = pair.s;
            }
        } else {
            const auto& c = h.poly().coeffs();
            for (int p = 0; p < static_cast<int>(c.size()); ++p)
                if (c[p] != 0) v[{k, p, 0}] = c[p];
        }
    }
    return v;
}

/// Incremental reduced basis over exact rationals (one pivot per row).
class RowBasis {
public:
    /// Reduces v against the basis; inserts the remainder if nonzero.
    /// Returns true when the vector added a new dimension.
    bool insert(SparseVec v) {
        reduce(v);
        if (v.empty()) return false;
        const GradedCoord pivot = v.begin()->first;
        const Rational lead = v.begin()->second;
        for (auto& [c, x] : v) x /= lead;
        // Keep existing rows reduced against the new pivot.
        for (auto& [p, row] : rows_) {
            auto it = row.find(pivot);
            if (it == row.end()) continue;
            const Rational factor = it->second;
            axpy(row, v, -factor);
        }
        rows_.emplace(pivot, std::move(v));
        return true;
    }

    /// True when v lies in the current span.
    bool contains(SparseVec v) const {
        reduce(v);
        return v.empty();
    }

    size_t dimension() const { return rows_.size(); }
    const std::map<GradedCoord, SparseVec>& rows() const { return rows_; }

private:
    static void axpy(SparseVec& dst, const SparseVec& src, const Rational& factor) {
        if (factor == 0) return;
        for (const auto& [c, x] : src) {
            auto it = dst.find(c);
            if (it == dst.end()) {
                Rational nv = factor * x;
                if (nv != 0) dst.emplace(c, std::move(nv));
            } else {
                it->second += factor * x;
                if (it->second == 0) dst.erase(it);
            }
        }
    }
    void reduce(SparseVec& v) const {
        while (!v.empty()) {
            auto it = rows_.find(v.begin()->first);
            if (it == rows_.end()) return;
            axpy(v, it->second, -v.begin()->second);
        }
    }

    std::map<GradedCoord, SparseVec> rows_;
};

struct ClosureOptions {
    int max_degree = 5;   // reported window: y-degree
    int max_band   = 5;   // reported window: frequency / s-degree
    int depth      = 5;   // maximum number of bracket sweeps
    // Closure pool caps; pairs whose bracket would exceed them are skipped so
    // every produced element is an exact algebra member.
    int cap_degree = -1;  // default 2*max_degree
    int cap_band   = -1;  // default 2*max_band
};

struct ClosureResult {
    std::vector<GradedElement> basis;       // in-window reduced representatives
    size_t dimension = 0;                   // in-window span dimension
    size_t pool_size = 0;                   // all closure elements kept (capped)
    int sweeps_used = 0;
    bool saturated = false;                 // stopped because a sweep added nothing in-window
    std::vector<OddConstraintReport> membership;  // per reported basis element (circle ring)
};

/// Iterated-bracket closure with exact row reduction. The reported span counts
/// only elements lying entirely inside the (max_degree, max_band) window;
/// out-of-window elements stay in the pool (up to the caps) for further
/// bracketing. `on_element`, when set, observes every produced element.
template <class ElementSink = std::nullptr_t>
ClosureResult closure_span(const std::vector<GradedElement>& generators,
                           const ClosureOptions& opt,
                           ElementSink&& on_element = nullptr) {
    if (generators.empty()) throw std::invalid_argument("closure_span: no generators");
    const Ring ring = generators.front().ring();
    const int cap_degree = opt.cap_degree > 0 ? opt.cap_degree : 2 * opt.max_degree;
    const int cap_band   = opt.cap_band > 0 ? opt.cap_band : 2 * opt.max_band;

    auto in_window = [&](const GradedElement& e) {
        return e.max_degree() <= opt.max_degree && e.max_band() <= opt.max_band;
    };
    auto observe = [&](const GradedElement& e) {
        if constexpr (!std::is_same_v<std::decay_t<ElementSink>, std::nullptr_t>) on_element(e);
    };

    ClosureResult res;
    RowBasis pool;      // spans everything produced (capped space)
    RowBasis window;    // spans the in-window elements only
    std::vector<GradedElement> pool_elems;

    for (const auto& g : generators) {
        if (g.ring() != ring) throw std::domain_error("closure_span: mixed rings");
        if (g.max_degree() > cap_degree || g.max_band() > cap_band)
            throw std::invalid_argument("closure_span: truncation window too small for generators");
        observe(g);
        if (pool.insert(to_coords(g))) pool_elems.push_back(g);
        if (in_window(g) && window.insert(to_coords(g))) res.basis.push_back(g);
    }

    size_t frontier_begin = 0;
    for (int sweep = 0; sweep < opt.depth; ++sweep) {
        const size_t frontier_end = pool_elems.size();
        if (frontier_begin == frontier_end) break;
        bool window_grew = false;
        std::vector<GradedElement> fresh;
        // Bracket every new element against everything seen so far.
        for (size_t i = frontier_begin; i < frontier_end; ++i) {
            for (size_t j = 0; j < frontier_end; ++j) {
                const auto& a = pool_elems[i];
                const auto& b = pool_elems[j];
                if (a.max_degree() + b.max_degree() + 1 > cap_degree) continue;
                if (a.max_band() + b.max_band() > cap_band) continue;
                GradedElement c = bracket(a, b);
                if (c.is_zero()) continue;
                observe(c);
                if (!pool.insert(to_coords(c))) continue;
                if (in_window(c) && window.insert(to_coords(c))) {
                    res.basis.push_back(c);
                    window_grew = true;
                }
                fresh.push_back(std::move(c));
            }
        }
        for (auto& e : fresh) pool_elems.push_back(std::move(e));
        frontier_begin = frontier_end;
        res.sweeps_used = sweep + 1;
        if (!window_grew) {
            res.saturated = true;
            break;
        }
    }

    res.dimension = window.dimension();
    res.pool_size = pool_elems.size();
    if (ring == Ring::CircleTrig)
        for (const auto& e : res.basis) res.membership.push_back(gglob_membership(e));
    return res;
}

}  // namespace bfl
