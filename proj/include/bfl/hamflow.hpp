#pragma once

#include "bfl/curve.hpp"
#include "bfl/liecirc.hpp"
#include "bfl/ode.hpp"
#include "bfl/phase.hpp"

#include <vector>

namespace bfl {

/// One graded Hamiltonian H_{k,h}(s,y) = h(s) y^k / sqrt(1+y^2) on the phase
/// cylinder, y = cot(theta) = w/sqrt(1-w^2). Exact rational coefficients; the
/// s-derivative is taken at the coefficient level on construction.
struct HamiltonianTerm {
    int degree = 0;
    CoeffFn h;

    HamiltonianTerm(int k, CoeffFn coeff) : degree(k), h(std::move(coeff)) {
        if (k < 0) throw std::invalid_argument("HamiltonianTerm: degree must be >= 0");
    }

    GradedElement as_element() const { return GradedElement::term(degree, h); }
};

/// The Hamiltonian of the thin-film derivative v_f: H_{0,-2f}.
inline HamiltonianTerm perline_hamiltonian(const TrigPoly& f) {
    return HamiltonianTerm(0, CoeffFn(f * Rational(-2)));
}
inline HamiltonianTerm perline_hamiltonian(const Poly& f) {
    return HamiltonianTerm(0, CoeffFn(f * Rational(-2)));
}

/// y^m / sqrt(1+y^2) expressed through w: w^m / (sqrt(1-w^2))^{m-1}.
double graded_weight(int degree, double w);
/// d/dw of the weight: m y^{m-1} + (m-1) y^{m+1} evaluated at y(w).
double graded_weight_dw(int degree, double w);

double ham_value(const HamiltonianTerm& t, const PhasePoint& p);
double ham_value(const GradedElement& e, const PhasePoint& p);

/// Analytic partial derivatives of the graded sum at a phase point.
struct HamPartials {
    double dH_ds = 0.0;
    double dH_dw = 0.0;
};
HamPartials ham_partials(const GradedElement& e, const PhasePoint& p);

/// Hamiltonian vector field in the (s, w) chart. Signs are pinned by the
/// thin-film geometry (see the flat two-plate test): with the symplectic form
/// dw ^ ds, the field of H is (ds/dt, dw/dt) = (-dH/dw, +dH/ds), so that
/// H_{0,-2f} generates the measured derivative of the compositional ratio.
PhaseTangent ham_field(const HamiltonianTerm& t, const PhasePoint& p);
PhaseTangent ham_field(const GradedElement& e, const PhasePoint& p);

/// Field of H = -2 sqrt(1-w^2) f for a curve-borne profile given by value and
/// arclength derivative of f at the point: (-2 w f / sqrt(1-w^2), -2 sqrt(1-w^2) f').
PhaseTangent profile_field(double f_value, double f_arclength_derivative, const PhasePoint& p);

/// Numeric Poisson bracket {A,B} = A_w B_s - A_s B_w from analytic partials.
double poisson_numeric(const GradedElement& a, const GradedElement& b, const PhasePoint& p);
inline double poisson_numeric(const HamiltonianTerm& a, const HamiltonianTerm& b,
                              const PhasePoint& p) {
    return poisson_numeric(a.as_element(), b.as_element(), p);
}

struct FlowOptions {
    double tol = 1e-12;
    double w_margin = 1e-6;  // refuse |w| > 1 - margin along the trajectory
};

/// Reference time-t flow map of the Hamiltonian field of e.
/// Throws OdeLeftRegion when the trajectory reaches the chart boundary.
PhasePoint flow(const GradedElement& e, double time, const PhasePoint& p,
                const FlowOptions& opt = {});
inline PhasePoint flow(const HamiltonianTerm& t, double time, const PhasePoint& p,
                       const FlowOptions& opt = {}) {
    return flow(t.as_element(), time, p, opt);
}

/// Reusable flow handle for the composition schemes.
class FlowMap {
public:
    FlowMap(GradedElement e, double time, FlowOptions opt = {})
        : element_(std::move(e)), time_(time), opt_(opt) {}

    PhasePoint operator()(const PhasePoint& p) const { return flow(element_, time_, p, opt_); }
    const GradedElement& element() const { return element_; }
    double time() const { return time_; }

private:
    GradedElement element_;
    double time_;
    FlowOptions opt_;
};

}  // namespace bfl
