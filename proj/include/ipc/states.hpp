#pragma once

// Named state families and seeded random generators.

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "ipc/qmat.hpp"

namespace ipc {

/// |Ψ> = Σ_i |ii>/√d.
Pure max_entangled(int d);

/// Isotropic state with fidelity x against |Ψ>:
/// (1-x)/(d²-1) I + (d²x-1)/(d²-1) |Ψ><Ψ|. Positive only for x >= 1/d²; smaller x throws.
State isotropic(int d, double x);

/// (1-x) I_{(d-1)²}/(d-1)² + x|Ψ><Ψ|, the identity block spanning |ij> with i,j <= d-2. d >= 3.
State example2(int d, double x);

/// Σ_{i<d-1} y|ii> + √(1-(d-1)y²) |(d-1)(d-1)>, y in [0, 1/√(d-1)].
Pure theta_state(int d, double y);

/// Σ_j |j>^{⊗n}/√d.
Pure ghz(int n, int d);

/// p |GHZ><GHZ| + (1-p) I/dⁿ.
State ghz_noisy(int n, int d, double p);

/// ½|Ψ₃><Ψ₃| + ½|Φ><Φ| on 4x4 with |Ψ₃> = (|00>+|11>+|22>)/√3 and |Φ> = (|23>+|32>)/√2.
State example3_state();

/// √(1/3+t)(|00>+|11>) + √(1/3-2t)|22> on 4x4, t in [-1/3, 1/6].
Pure example3_probe(double t);

/// N Σ_k λ_k^{-1/2} |e_k f_k> built from the Schmidt decomposition of a two-party vector.
Pure verifier_state(const Pure& v);

/// GG†/Tr with G a dim x rank complex Gaussian matrix.
State random_mixed(const Dims& dims, int rank, std::uint64_t seed);
Pure random_pure(const Dims& dims, std::uint64_t seed);

/// Haar-random pure vector drawn from an existing engine.
Pure random_pure(const Dims& dims, std::mt19937_64& rng);

/// Convex mixture of 2·Πdims random product pure states with Dirichlet(1,...,1) weights.
State random_separable(const Dims& dims, std::uint64_t seed);

/// Random pure state with its Schmidt series truncated to `rank` terms and renormalized.
Pure random_schmidt_limited(int da, int db, int rank, std::mt19937_64& rng);

/// Mixture of `terms` pure states of Schmidt rank <= `rank` with Dirichlet weights.
State random_schmidt_mixture(int da, int db, int rank, int terms, std::uint64_t seed);

/// Serializable description of one state, as read by the CLI.
struct StateSpec {
  std::string family;                   // isotropic | example2 | theta | ghz-noisy | ghz-pure |
                                        // max-entangled | example3 | verifier | random-mixed |
                                        // random-pure
  std::map<std::string, double> params; // d, n, x, y, p, rank, dims0, dims1, ...
  std::uint64_t seed = 0;
};

/// Builds the density operator of a spec. Pure families return their projector.
State build_state(const StateSpec& spec);

}  // namespace ipc
