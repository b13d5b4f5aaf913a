#include "lagcorr/random.hpp"

#include <string>
#include <vector>

#include "lagcorr/error.hpp"

namespace lagcorr {

std::int64_t RandomSource::uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % span;
    std::uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return lo + static_cast<std::int64_t>(draw % span);
}

namespace {

Matrix elementary_generator(RandomSource& rng, std::size_t n) {
    Matrix m = Matrix::identity(2 * n);
    switch (rng.uniform(0, 3)) {
        case 0:
        case 1: {
            // [[I, S], [0, I]] or [[I, 0], [S, I]] with S symmetric
            const bool upper = rng.uniform(0, 1) == 0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i; j < n; ++j) {
                    const Scalar s = rng.uniform(-2, 2);
                    if (upper) {
                        m(i, n + j) = s;
                        m(j, n + i) = s;
                    } else {
                        m(n + i, j) = s;
                        m(n + j, i) = s;
                    }
                }
            }
            break;
        }
        case 2: {
            const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
            m(i, i) = 0;
            m(n + i, n + i) = 0;
            m(i, n + i) = -1;
            m(n + i, i) = 1;
            break;
        }
        default: {
            if (n < 2) break;
            const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
            auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 2));
            if (j >= i) ++j;
            const Scalar c = rng.uniform(-2, 2);
            m(i, j) = c;           // A = I + c E_ij
            m(n + j, n + i) = -c;  // A^-T = I - c E_ji
            break;
        }
    }
    return m;
}

SymplecticSpace half_dim_space(std::size_t n) { return standard_space(n, "R" + std::to_string(n)); }

}  // namespace

Matrix random_symplectic_matrix(RandomSource& rng, std::size_t n, std::size_t max_generators) {
    Matrix m = Matrix::identity(2 * n);
    if (n == 0) return m;
    const auto count = rng.uniform(1, static_cast<std::int64_t>(std::max<std::size_t>(max_generators, 1)));
    for (std::int64_t k = 0; k < count; ++k) m = elementary_generator(rng, n) * m;
    return m;
}

Matrix symplectic_basis(const SymplecticSpace& v) {
    const Matrix& omega = v.form();
    const std::size_t dim = v.dim();
    auto w = [&](const Vector& a, const Vector& b) {
        Scalar s = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < dim; ++j) s += a[i] * omega(i, j) * b[j];
        }
        return s;
    };

    std::vector<Vector> rest;
    for (std::size_t i = 0; i < dim; ++i) {
        Vector e(dim, 0);
        e[i] = 1;
        rest.push_back(std::move(e));
    }
    std::vector<Vector> es, fs;
    while (!rest.empty()) {
        Vector e = rest.front();
        rest.erase(rest.begin());
        std::size_t k = 0;
        while (k < rest.size() && w(e, rest[k]) == 0) ++k;
        if (k == rest.size()) throw Error(ErrorKind::InvalidSpace, "form of '" + v.name() + "' is degenerate");
        Vector f = rest[k];
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
        const Scalar scale = 1 / w(e, f);
        for (auto& x : f) x *= scale;

        std::vector<Vector> next;
        for (auto& r : rest) {
            const Scalar rf = w(r, f);
            const Scalar re = w(r, e);
            for (std::size_t i = 0; i < dim; ++i) r[i] += -rf * e[i] + re * f[i];
            bool zero = true;
            for (const auto& x : r) zero = zero && x == 0;
            if (!zero) next.push_back(std::move(r));
        }
        rest = std::move(next);
        es.push_back(std::move(e));
        fs.push_back(std::move(f));
    }
    std::vector<Vector> cols = es;
    cols.insert(cols.end(), fs.begin(), fs.end());
    return Matrix::from_columns(cols, dim);
}

LagrangianSubspace random_lagrangian(RandomSource& rng, const SymplecticSpace& v) {
    const std::size_t n = v.half_dim();
    const Matrix p = symplectic_basis(v) * random_symplectic_matrix(rng, n);
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < n; ++i) cols.push_back(p.column(i));
    return LagrangianSubspace(v, Subspace::span(cols, v.dim()));
}

LagrangianCorrespondence random_correspondence(RandomSource& rng, const SymplecticSpace& source,
                                               const SymplecticSpace& target) {
    const SymplecticSpace ambient = product(dual(source), target);
    return LagrangianCorrespondence(source, target, random_lagrangian(rng, ambient).subspace());
}

SymplecticSpace random_space(RandomSource& rng, std::size_t min_half_dim, std::size_t max_half_dim) {
    return half_dim_space(static_cast<std::size_t>(
        rng.uniform(static_cast<std::int64_t>(min_half_dim), static_cast<std::int64_t>(max_half_dim))));
}

std::pair<LagrangianCorrespondence, LagrangianCorrespondence> random_composable_pair(RandomSource& rng,
                                                                                     bool allow_degenerate) {
    const SymplecticSpace v0 = random_space(rng, 0, 2);
    const SymplecticSpace v1 = random_space(rng, 1, 2);
    const SymplecticSpace v2 = random_space(rng, 0, 2);
    if (!allow_degenerate || rng.coin()) {
        return {random_correspondence(rng, v0, v1), random_correspondence(rng, v1, v2)};
    }
    if (rng.coin() || v0.half_dim() >= v1.half_dim()) {
        // both legs pass through the same Lagrangian of v1
        const LagrangianSubspace shared = random_lagrangian(rng, v1);
        const LagrangianSubspace x0 = random_lagrangian(rng, dual(v0));
        const LagrangianSubspace z2 = random_lagrangian(rng, v2);
        return {product_of_lagrangians(x0, shared),
                product_of_lagrangians(LagrangianSubspace(dual(v1), shared.subspace()), z2)};
    }
    const LagrangianCorrespondence l = random_correspondence(rng, v0, v1);
    return {l, transpose(l)};
}

ComposableTriple random_triple(RandomSource& rng) {
    SymplecticSpace current = random_space(rng, 0, 2);
    auto member = [&]() {
        const auto len = rng.uniform(0, 2);
        std::vector<LagrangianCorrespondence> steps;
        const SymplecticSpace start = current;
        for (std::int64_t i = 0; i < len; ++i) {
            SymplecticSpace next = random_space(rng, 0, 2);
            steps.push_back(random_correspondence(rng, current, next));
            current = next;
        }
        return GeneralizedCorrespondence(start, std::move(steps));
    };
    GeneralizedCorrespondence a = member();
    GeneralizedCorrespondence b = member();
    GeneralizedCorrespondence c = member();
    return ComposableTriple{std::move(a), std::move(b), std::move(c)};
}

}  // namespace lagcorr
