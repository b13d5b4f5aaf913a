#pragma once

#include <cstdint>
#include <string>

#include "lagcorr/sequence.hpp"

namespace lagcorr {

/// Z_N with N even and at least 2.
class GradingContext {
public:
    /// Throws Error(TypeMismatch) for odd N or N < 2.
    explicit GradingContext(std::int64_t modulus);

    std::int64_t modulus() const noexcept { return modulus_; }

    bool operator==(const GradingContext&) const = default;

private:
    std::int64_t modulus_;
};

/// A residue mod N. value() is the canonical representative in [0, N), which
/// is also what every sign exponent uses.
class Degree {
public:
    Degree(std::int64_t value, GradingContext context);

    std::int64_t value() const noexcept { return value_; }
    const GradingContext& context() const noexcept { return context_; }

    Degree operator+(const Degree& rhs) const;
    bool operator==(const Degree&) const = default;

private:
    std::int64_t value_;
    GradingContext context_;
};

/// Half the total dimension of every space listed in s and t, endpoints
/// included. The point contributes 0.
std::int64_t degree_shift(const GeneralizedCorrespondence& s, const GeneralizedCorrespondence& t);

/// Half the total dimension of the spaces of one sequence.
std::int64_t half_dimension_sum(const GeneralizedCorrespondence& s);

/// (-1)^(|f'| |g|)
int koszul_sign(const Degree& f_prime, const Degree& g);

/// A morphism known only by its symbol, degree and endpoints. Endpoints are
/// names of generalized correspondences.
struct FormalGradedMorphism {
    std::string symbol;
    Degree degree;
    std::string source;
    std::string target;

    bool operator==(const FormalGradedMorphism&) const = default;
};

/// A pair (f, g) in a product category together with an accumulated sign.
struct SignedPair {
    int sign = 1;
    FormalGradedMorphism first;
    FormalGradedMorphism second;

    bool operator==(const SignedPair&) const = default;
};

/// f o f' in diagrammatic order: target(f) must equal source(f'). Symbols are
/// joined with '.', degrees add. Throws Error(NotComposable).
FormalGradedMorphism compose_formal(const FormalGradedMorphism& f, const FormalGradedMorphism& f_prime);

/// (f,g) o (f',g') = (-1)^(|f'||g|) (f o f', g o g'), with the input signs
/// multiplied in. Throws Error(NotComposable).
SignedPair product_compose(const SignedPair& lhs, const SignedPair& rhs);

/// (-1)^(|x3| * h1). Sign of the second gluing in the associativity
/// comparison, the one into the first incoming end; h1 is half the dimension
/// sum of the first sequence. The first gluing carries sign +1.
int gluing_sign_second(const Degree& x3, std::int64_t half_dims_1);

/// (-1)^(h1 * h2), relating the patch orderings of the two gluings.
int reorder_sign(std::int64_t half_dims_1, std::int64_t half_dims_2);

enum class CapArgument { First, Second };

/// Sign for gluing the quilted cap into the pair of pants: +1 into the second
/// argument, (-1)^(|x| * h) into the first.
int cap_gluing_sign(CapArgument argument, const Degree& x, std::int64_t half_dims);

enum class EndConfiguration { TwoOut, InOut, TwoIn };
std::string to_string(EndConfiguration c);

/// n * d with d = 1, 0, -1 for two outgoing, mixed, two incoming ends.
std::int64_t strip_shrink_shift(std::int64_t n_patch, EndConfiguration config);

}  // namespace lagcorr
