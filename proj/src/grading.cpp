#include "lagcorr/grading.hpp"

#include "lagcorr/error.hpp"

namespace lagcorr {

namespace {

int parity_sign(std::int64_t exponent) { return (exponent % 2 == 0) ? 1 : -1; }

std::int64_t floor_mod(std::int64_t v, std::int64_t n) {
    const std::int64_t r = v % n;
    return r < 0 ? r + n : r;
}

}  // namespace

GradingContext::GradingContext(std::int64_t modulus) : modulus_(modulus) {
    if (modulus < 2 || modulus % 2 != 0) {
        throw Error(ErrorKind::TypeMismatch, "grading modulus must be even and >= 2, got " + std::to_string(modulus));
    }
}

Degree::Degree(std::int64_t value, GradingContext context)
    : value_(floor_mod(value, context.modulus())), context_(context) {}

Degree Degree::operator+(const Degree& rhs) const {
    if (!(context_ == rhs.context_)) {
        throw Error(ErrorKind::TypeMismatch, "degrees from different gradings");
    }
    return Degree(value_ + rhs.value_, context_);
}

std::int64_t half_dimension_sum(const GeneralizedCorrespondence& s) {
    std::int64_t total = 0;
    for (const auto& space : s.spaces()) total += static_cast<std::int64_t>(space.dim());
    return total / 2;
}

std::int64_t degree_shift(const GeneralizedCorrespondence& s, const GeneralizedCorrespondence& t) {
    return half_dimension_sum(s) + half_dimension_sum(t);
}

int koszul_sign(const Degree& f_prime, const Degree& g) { return parity_sign(f_prime.value() * g.value()); }

FormalGradedMorphism compose_formal(const FormalGradedMorphism& f, const FormalGradedMorphism& f_prime) {
    if (f.target != f_prime.source) {
        throw Error(ErrorKind::NotComposable, "'" + f.symbol + "' ends at '" + f.target + "' but '" + f_prime.symbol +
                                                  "' starts at '" + f_prime.source + "'");
    }
    return FormalGradedMorphism{f.symbol + "." + f_prime.symbol, f.degree + f_prime.degree, f.source, f_prime.target};
}

SignedPair product_compose(const SignedPair& lhs, const SignedPair& rhs) {
    auto first = compose_formal(lhs.first, rhs.first);
    auto second = compose_formal(lhs.second, rhs.second);
    const int sign = lhs.sign * rhs.sign * koszul_sign(rhs.first.degree, lhs.second.degree);
    return SignedPair{sign, std::move(first), std::move(second)};
}

int gluing_sign_second(const Degree& x3, std::int64_t half_dims_1) { return parity_sign(x3.value() * half_dims_1); }

int reorder_sign(std::int64_t half_dims_1, std::int64_t half_dims_2) { return parity_sign(half_dims_1 * half_dims_2); }

int cap_gluing_sign(CapArgument argument, const Degree& x, std::int64_t half_dims) {
    return argument == CapArgument::Second ? 1 : parity_sign(x.value() * half_dims);
}

std::string to_string(EndConfiguration c) {
    switch (c) {
        case EndConfiguration::TwoOut: return "two-out";
        case EndConfiguration::InOut: return "in-out";
        case EndConfiguration::TwoIn: return "two-in";
    }
    return "in-out";
}

std::int64_t strip_shrink_shift(std::int64_t n_patch, EndConfiguration config) {
    switch (config) {
        case EndConfiguration::TwoOut: return n_patch;
        case EndConfiguration::InOut: return 0;
        case EndConfiguration::TwoIn: return -n_patch;
    }
    return 0;
}

}  // namespace lagcorr
