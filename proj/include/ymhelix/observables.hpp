#pragma once

// Helicity observables f^phi_Sigma, the presymplectic pairing, Poisson
// brackets, Hamilton's-equation check, the coordinate form of the helicity
// current on structured boxes, the commutator field, and the separation
// certificate.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ymhelix/hypersurface.hpp"
#include "ymhelix/ym.hpp"

namespace ymhelix {

// Pair (phi, Sigma): evaluation is affine in the argument connection.
struct Observable {
    Cochain generator;                     // coclosed linearized solution
    std::shared_ptr<Hypersurface> cut;
};

struct ObservableValue {
    double value = 0.0;
    double generator_residual = 0.0;  // interior equation residual of phi
    double argument_residual = 0.0;   // same for eta
    bool on_shell = true;             // both residuals within tolerance
};

// f^phi_S(eta) = 1/2 (Flux(phi; eta) - Flux(eta; phi)); the antisymmetric
// component of the relative helicity.
ObservableValue helicity_observable(const YmOps& ops, const Observable& obs,
                                    const Connection& eta, double tol = 1e-8);

// omega_SL(v, w) = 1/2 (Flux(v; w) - Flux(w; v)); independent of the base
// point in the linear theory, antisymmetric by construction.
double symplectic_pairing(const YmOps& ops, const Hypersurface& cut,
                          const Cochain& v, const Cochain& w);

// theta_SL[eta](v) = -Flux(v; eta).
double presymplectic_potential(const YmOps& ops, const Hypersurface& cut,
                               const Connection& eta, const Cochain& v);

// {f^phi, f^phi'}_S = omega_SL(v_phi, v_phi'); constant across solutions.
double poisson_bracket(const YmOps& ops, const Observable& a, const Observable& b);

enum class LieMode { ExactAffine, CentralDifference };

// Directional derivative of f^phi_S at eta along w. The observable is affine,
// so the exact mode is one evaluation difference; the finite-difference mode
// (eps = 1e-4, central) cross-validates.
double lie_derivative(const YmOps& ops, const Observable& obs, const Connection& eta,
                      const Cochain& w, LieMode mode = LieMode::ExactAffine);

// | L_w f^phi_S(eta) - omega_SL(v_phi, w) |, expected ~ 0 on shell.
double hamilton_check(const YmOps& ops, const Observable& obs,
                      const Connection& eta, const Cochain& w);

// ---------------------------------------------------------------------------
// Structured-box operations (finite differences of sampled component fields).

struct BoxGrid {
    int n = 0;
    std::vector<int> cells_per_axis;
    std::vector<double> spacing;
    std::vector<double> origin;

    static BoxGrid detect(const Mesh& mesh);
    std::size_t cube_count() const;
};

struct CoordinateCurrentResult {
    BoxGrid grid;
    // Density component F_1 (flux through planes x_1 = const) per grid cube.
    std::vector<double> density_axis0;
    double coordinate_plane_flux = 0.0;  // mid-plane integral of the density
    double pairing_value = 0.0;          // same current via the flux pairing
    double discrepancy = 0.0;
};

// Coordinate formula of the helicity current F^phi evaluated from sampled
// component fields, compared against the flux-pairing kernel across the
// mid-plane of the box.
CoordinateCurrentResult helicity_current_coordinate(const YmOps& ops,
                                                    const Cochain& phi,
                                                    const Connection& eta);

struct CommutatorResult {
    Cochain field;                      // the bracket field as a 1-cochain
    std::vector<double> observable_values;  // f^{field}_S across sample solutions
    double eta_dependence_spread = 0.0;     // max - min of the values
};

// Coordinate bracket of two sampled divergence-free fields by centered
// differences, and the constancy report of its observable across solutions.
CommutatorResult commutator_field(const YmOps& ops, const Cochain& phi1,
                                  const Cochain& phi2);

// ---------------------------------------------------------------------------
// Separation certificate.

struct SeparationResult {
    enum class Kind { GaugeWitness, Separated, Undecided };
    Kind kind = Kind::Undecided;
    Cochain witness;            // interior gauge function, when gauge
    int generator_index = -1;   // first separating pair in canonical order
    int cut_index = -1;
    std::string cut_label;
    double value_a = 0.0, value_b = 0.0;
    double difference = 0.0;
    double threshold = 0.0;
};

// Deterministic candidate families for the certificate.
struct SeparationContext {
    std::vector<Cochain> generators;            // linearized solutions
    std::vector<std::shared_ptr<Hypersurface>> cuts;
    std::vector<std::string> cut_labels;

    static SeparationContext standard(const YmOps& ops);
};

SeparationResult separation_certificate(const YmOps& ops,
                                        const SeparationContext& ctx,
                                        const Connection& a, const Connection& b,
                                        double gauge_tol = 1e-8);

}  // namespace ymhelix
