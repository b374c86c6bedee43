#pragma once

#include "bfl/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <vector>

namespace bfl {

/// Real trigonometric polynomial sum_k (c_k cos ks + s_k sin ks) with exact
/// rational coefficients, stored sparsely by frequency. Frequency 0 keeps only
/// the cosine slot.
class TrigPoly {
public:
    struct Pair {
        Rational c{0};
        Rational s{0};
        bool operator==(const Pair& o) const { return c == o.c && s == o.s; }
    };

    TrigPoly() = default;

    static TrigPoly constant(const Rational& value) {
        TrigPoly p;
        p.set_cos(0, value);
        return p;
    }
    static TrigPoly cosine(int freq, const Rational& coeff = 1) {
        TrigPoly p;
        p.set_cos(freq, coeff);
        return p;
    }
    static TrigPoly sine(int freq, const Rational& coeff = 1) {
        TrigPoly p;
        p.set_sin(freq, coeff);
        return p;
    }

    void set_cos(int freq, const Rational& v) {
        if (freq < 0) throw std::invalid_argument("TrigPoly: negative frequency");
        terms_[freq].c = v;
        prune(freq);
    }
    void set_sin(int freq, const Rational& v) {
        if (freq < 0) throw std::invalid_argument("TrigPoly: negative frequency");
        if (freq == 0 && v != 0) throw std::invalid_argument("TrigPoly: sin(0) term");
        if (freq > 0) terms_[freq].s = v;
        prune(freq);
    }

    Rational cos_coeff(int freq) const {
        auto it = terms_.find(freq);
        return it == terms_.end() ? Rational(0) : it->second.c;
    }
    Rational sin_coeff(int freq) const {
        auto it = terms_.find(freq);
        return it == terms_.end() ? Rational(0) : it->second.s;
    }

    const std::map<int, Pair>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    int max_freq() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    TrigPoly& operator+=(const TrigPoly& o) {
        for (const auto& [k, p] : o.terms_) {
            auto& mine = terms_[k];
            mine.c += p.c;
            mine.s += p.s;
            prune(k);
        }
        return *this;
    }
    TrigPoly& operator-=(const TrigPoly& o) {
        for (const auto& [k, p] : o.terms_) {
            auto& mine = terms_[k];
            mine.c -= p.c;
            mine.s -= p.s;
            prune(k);
        }
        return *this;
    }
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }

    TrigPoly operator*(const Rational& r) const {
        TrigPoly out;
        if (r == 0) return out;
        for (const auto& [k, p] : terms_) {
            out.terms_[k] = Pair{p.c * r, p.s * r};
        }
        return out;
    }

    /// Exact product via the product-to-sum identities.
    TrigPoly operator*(const TrigPoly& o) const {
        TrigPoly out;
        const Rational half(1, 2);
        for (const auto& [a, pa] : terms_) {
            for (const auto& [b, pb] : o.terms_) {
                const int sum = a + b;
                const int dif = std::abs(a - b);
                // cos a cos b = (cos(a-b) + cos(a+b))/2
                out.add_cos(dif, half * pa.c * pb.c);
                out.add_cos(sum, half * pa.c * pb.c);
                // sin a sin b = (cos(a-b) - cos(a+b))/2
                out.add_cos(dif, half * pa.s * pb.s);
                out.add_cos(sum, -half * pa.s * pb.s);
                // sin a cos b = (sin(a-b) + sin(a+b))/2, sign of sin(a-b) follows a-b
                out.add_sin_signed(a - b, half * pa.s * pb.c);
                out.add_sin_signed(sum, half * pa.s * pb.c);
                // cos a sin b = (sin(a+b) - sin(a-b))/2
                out.add_sin_signed(sum, half * pa.c * pb.s);
                out.add_sin_signed(-(a - b), half * pa.c * pb.s);
            }
        }
        out.prune_all();
        return out;
    }

    /// d/ds: cos ks -> -k sin ks, sin ks -> k cos ks.
    TrigPoly derivative() const {
        TrigPoly out;
        for (const auto& [k, p] : terms_) {
            if (k == 0) continue;
            out.add_cos(k, p.s * k);
            out.add_sin_signed(k, -p.c * k);
        }
        out.prune_all();
        return out;
    }

    /// Constant Fourier coefficient; the circle average is 2*pi times this.
    Rational mean_coeff() const { return cos_coeff(0); }

    double evaluate(double s) const {
        double acc = 0.0;
        for (const auto& [k, p] : terms_) {
            acc += to_double(p.c) * std::cos(k * s);
            if (k > 0) acc += to_double(p.s) * std::sin(k * s);
        }
        return acc;
    }

    bool operator==(const TrigPoly& o) const { return terms_ == o.terms_; }

private:
    void add_cos(int freq, const Rational& v) {
        if (v == 0) return;
        terms_[freq].c += v;
    }
    void add_sin_signed(int freq, const Rational& v) {
        // sin(-x) = -sin(x); freq 0 contributes nothing.
        if (v == 0 || freq == 0) return;
        if (freq > 0) terms_[freq].s += v;
        else terms_[-freq].s -= v;
    }
    void prune(int freq) {
        auto it = terms_.find(freq);
        if (it != terms_.end() && it->second.c == 0 && it->second.s == 0) terms_.erase(it);
    }
    void prune_all() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second.c == 0 && it->second.s == 0) it = terms_.erase(it);
            else ++it;
        }
    }

    std::map<int, Pair> terms_;
};

/// Dense univariate polynomial with exact rational coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Poly constant(const Rational& v) { return Poly({v}); }
    static Poly monomial(int power, const Rational& coeff = 1) {
        std::vector<Rational> c(power + 1, Rational(0));
        c[power] = coeff;
        return Poly(std::move(c));
    }

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }

    Rational coeff(int power) const {
        if (power < 0 || power >= static_cast<int>(coeffs_.size())) return Rational(0);
        return coeffs_[power];
    }

    Poly& operator+=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
        for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
        for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    Poly operator*(const Rational& r) const {
        if (r == 0) return Poly();
        std::vector<Rational> out(coeffs_.size(), Rational(0));
        for (size_t i = 0; i < coeffs_.size(); ++i) out[i] = coeffs_[i] * r;
        return Poly(std::move(out));
    }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
        for (size_t i = 0; i < coeffs_.size(); ++i)
            for (size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
        return Poly(std::move(out));
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<Rational> out(coeffs_.size() - 1, Rational(0));
        for (size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * Rational(i);
        return Poly(std::move(out));
    }

    double evaluate(double x) const {
        double acc = 0.0;
        for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + to_double(coeffs_[i]);
        return acc;
    }

    bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

enum class Ring { CircleTrig, IntervalPoly };

/// Coefficient function h(s) of a graded Hamiltonian term: a trig polynomial
/// on the circle or a plain polynomial on the interval, tagged by ring.
class CoeffFn {
public:
    CoeffFn() : ring_(Ring::CircleTrig) {}
    explicit CoeffFn(TrigPoly tp) : ring_(Ring::CircleTrig), trig_(std::move(tp)) {}
    explicit CoeffFn(Poly p) : ring_(Ring::IntervalPoly), poly_(std::move(p)) {}

    static CoeffFn zero(Ring ring) {
        return ring == Ring::CircleTrig ? CoeffFn(TrigPoly{}) : CoeffFn(Poly{});
    }
    static CoeffFn constant(Ring ring, const Rational& v) {
        return ring == Ring::CircleTrig ? CoeffFn(TrigPoly::constant(v))
                                        : CoeffFn(Poly::constant(v));
    }

    Ring ring() const { return ring_; }
    const TrigPoly& trig() const { require(Ring::CircleTrig); return trig_; }
    const Poly& poly() const { require(Ring::IntervalPoly); return poly_; }

    bool is_zero() const {
        return ring_ == Ring::CircleTrig ? trig_.is_zero() : poly_.is_zero();
    }

    CoeffFn derivative() const {
        return ring_ == Ring::CircleTrig ? CoeffFn(trig_.derivative())
                                         : CoeffFn(poly_.derivative());
    }

    CoeffFn operator*(const CoeffFn& o) const {
        check_same(o);
        return ring_ == Ring::CircleTrig ? CoeffFn(trig_ * o.trig_) : CoeffFn(poly_ * o.poly_);
    }
    CoeffFn operator*(const Rational& r) const {
        return ring_ == Ring::CircleTrig ? CoeffFn(trig_ * r) : CoeffFn(poly_ * r);
    }
    CoeffFn& operator+=(const CoeffFn& o) {
        check_same(o);
        if (ring_ == Ring::CircleTrig) trig_ += o.trig_;
        else poly_ += o.poly_;
        return *this;
    }
    CoeffFn& operator-=(const CoeffFn& o) {
        check_same(o);
        if (ring_ == Ring::CircleTrig) trig_ -= o.trig_;
        else poly_ -= o.poly_;
        return *this;
    }
    friend CoeffFn operator+(CoeffFn a, const CoeffFn& b) { return a += b; }
    friend CoeffFn operator-(CoeffFn a, const CoeffFn& b) { return a -= b; }

    /// Constant Fourier coefficient; h-hat = 2*pi * mean_coeff (circle ring only).
    Rational mean_coeff() const {
        if (ring_ != Ring::CircleTrig)
            throw std::domain_error("CoeffFn: average is defined on the circle ring only");
        return trig_.mean_coeff();
    }

    double evaluate(double s) const {
        return ring_ == Ring::CircleTrig ? trig_.evaluate(s) : poly_.evaluate(s);
    }

    /// Max frequency (trig) or degree (poly); the truncation bin.
    int band() const {
        return ring_ == Ring::CircleTrig ? trig_.max_freq() : poly_.degree();
    }

    bool operator==(const CoeffFn& o) const {
        return ring_ == o.ring_ && trig_ == o.trig_ && poly_ == o.poly_;
    }

private:
    void require(Ring r) const {
        if (ring_ != r) throw std::domain_error("CoeffFn: wrong ring access");
    }
    void check_same(const CoeffFn& o) const {
        if (ring_ != o.ring_) throw std::domain_error("CoeffFn: ring mismatch");
    }

    Ring ring_;
    TrigPoly trig_;
    Poly poly_;
};

}  // namespace bfl
