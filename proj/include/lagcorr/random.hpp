#pragma once

// Random exact test data: integer symplectic matrices, Lagrangian
// correspondences and composable sequences. Draws depend only on the seed, so
// samples are reproducible on every platform.

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>

#include "lagcorr/correspondence.hpp"
#include "lagcorr/linalg.hpp"
#include "lagcorr/sequence.hpp"
#include "lagcorr/symplectic.hpp"

namespace lagcorr {

class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    bool coin() { return uniform(0, 1) == 1; }

private:
    std::mt19937_64 engine_;
};

/// Product of 1..max_generators elementary symplectic matrices of size 2n:
/// symmetric shears in either corner, quarter turns of one coordinate plane,
/// and diag(A, A^-T) for an elementary A. Symplectic for the standard form.
Matrix random_symplectic_matrix(RandomSource& rng, std::size_t n, std::size_t max_generators = 6);

/// P with P^T Omega P equal to the standard form, i.e. columns e_1..e_n,
/// f_1..f_n form a symplectic basis of v.
Matrix symplectic_basis(const SymplecticSpace& v);

LagrangianSubspace random_lagrangian(RandomSource& rng, const SymplecticSpace& v);
LagrangianCorrespondence random_correspondence(RandomSource& rng, const SymplecticSpace& source,
                                               const SymplecticSpace& target);

/// Standard space "R<n>"; equal n gives equal spaces.
SymplecticSpace random_space(RandomSource& rng, std::size_t min_half_dim, std::size_t max_half_dim);

/// A composable pair through a middle space of positive dimension. With
/// allow_degenerate, about half the pairs are built to fail transversality
/// (split correspondences through a shared Lagrangian, or l followed by its
/// transpose through a larger space).
std::pair<LagrangianCorrespondence, LagrangianCorrespondence> random_composable_pair(RandomSource& rng,
                                                                                     bool allow_degenerate);

/// Three chained sequences of lengths 0..2 over spaces of half-dimension 0..2.
ComposableTriple random_triple(RandomSource& rng);

}  // namespace lagcorr
