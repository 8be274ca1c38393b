#include "eld/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace eld {

SpectralEmbedding SpectralEmbedding::from_parts(std::size_t n, std::size_t k,
                                                std::vector<double> eigenvalues,
                                                std::vector<double> vectors) {
    if (eigenvalues.size() != k || vectors.size() != n * k)
        throw DimensionMismatchError("embedding parts");
    SpectralEmbedding emb;
    emb.n_ = n;
    emb.k_ = k;
    emb.eigenvalues_ = std::move(eigenvalues);
    emb.vectors_ = std::move(vectors);
    return emb;
}

std::vector<double> sign_fix(std::vector<double> v) {
    for (double x : v) {
        if (std::abs(x) > 1e-12) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            return v;
        }
    }
    throw AllZeroVectorError();
}

double embedding_trace(const SpectralEmbedding& emb, const SymMatrix& L) {
    if (L.dim() != emb.n()) throw DimensionMismatchError("embedding_trace");
    const std::size_t n = emb.n();
    std::vector<double> y(n);
    double trace = 0.0;
    for (std::size_t r = 0; r < emb.k(); ++r) {
        std::span<const double> v(emb.column(r), n);
        L.matvec(v, y);
        trace += std::inner_product(v.begin(), v.end(), y.begin(), 0.0);
    }
    return trace;
}

namespace {

// Fixed-stream generator for reproducible Lanczos start vectors.
std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void fill_start_vector(Eigen::Ref<Eigen::VectorXd> v, std::uint64_t& state) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v[i] = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53 - 0.5;
}

struct RawPairs {
    std::vector<double> values;   // ascending
    Eigen::MatrixXd vectors;      // n x k, column r pairs with values[r]
};

RawPairs dense_smallest_k(const SymMatrix& L, int k) {
    const Eigen::Index n = L.dim();
    Eigen::MatrixXd A(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double a = L.entry(static_cast<vertex_t>(i), static_cast<vertex_t>(j));
            A(i, j) = a;
            A(j, i) = a;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success)
        throw ConvergenceFailureError("dense eigendecomposition failed");
    RawPairs out;
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
    out.vectors = es.eigenvectors().leftCols(k);
    return out;
}

// One Lanczos sweep with full reorthogonalization on B = c*I - L
// (c = Gershgorin bound, so the smallest eigenvalues of L are the
// extremal ones of B), restricted to the orthogonal complement of
// `deflate`.  Breakdown triggers a restart with a fresh direction
// (beta = 0 kept in the tridiagonal); the basis may grow to the full
// complement, at which point the solve is exact.
RawPairs lanczos_sweep(const SymMatrix& L, double c, int k_want,
                       const Eigen::Ref<const Eigen::MatrixXd>& deflate, std::uint64_t& stream,
                       const EmbedOptions& opts) {
    const Eigen::Index n = L.dim();
    const Eigen::Index d = deflate.cols();
    const Eigen::Index nc = n - d;  // complement dimension
    const std::size_t max_steps =
        std::max<std::size_t>(opts.max_iterations_factor * static_cast<std::size_t>(n), 32);

    Eigen::MatrixXd basis(
        n, std::min<Eigen::Index>(nc, std::max<Eigen::Index>(2 * k_want + 16, 48)));
    std::vector<double> alpha, offdiag;  // offdiag[i] couples basis columns i and i+1

    Eigen::VectorXd v(n), w(n), tmp(n), tmp2(n);
    auto project_out = [&](Eigen::VectorXd& x, Eigen::Index m) {
        for (int pass = 0; pass < 2; ++pass) {
            if (d > 0) {
                tmp2.head(d).noalias() = deflate.transpose() * x;
                x.noalias() -= deflate * tmp2.head(d);
            }
            if (m > 0) {
                tmp.head(m).noalias() = basis.leftCols(m).transpose() * x;
                x.noalias() -= basis.leftCols(m) * tmp.head(m);
            }
        }
    };

    double norm = 0.0;
    for (int attempt = 0; attempt < 64 && norm <= 1e-8; ++attempt) {
        fill_start_vector(v, stream);
        project_out(v, 0);
        norm = v.norm();
    }
    if (norm <= 1e-8) throw ConvergenceFailureError("could not seed the iteration");
    v /= norm;

    auto ensure_capacity = [&](Eigen::Index m) {
        if (m >= basis.cols()) {
            Eigen::Index grown = std::min<Eigen::Index>(nc, basis.cols() * 2);
            basis.conservativeResize(Eigen::NoChange, std::max(grown, m + 1));
        }
    };
    ensure_capacity(0);
    basis.col(0) = v;

    const double breakdown_tol = 1e-13 * std::max(1.0, c);
    std::size_t steps = 0;
    Eigen::Index m = 1;  // current basis size
    Eigen::Index next_check = k_want;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tsolver;
    Eigen::VectorXd tdiag, tsub;

    while (true) {
        if (++steps > max_steps)
            throw ConvergenceFailureError("iteration limit reached (n=" + std::to_string(n) +
                                          ", k=" + std::to_string(k_want) + ")");
        // w = B v_{m-1} = c v - L v
        L.matvec(std::span<const double>(basis.col(m - 1).data(), static_cast<std::size_t>(n)),
                 std::span<double>(w.data(), static_cast<std::size_t>(n)));
        w = c * basis.col(m - 1) - w;
        const double a = basis.col(m - 1).dot(w);
        alpha.push_back(a);
        w -= a * basis.col(m - 1);
        if (m >= 2) w -= offdiag[static_cast<std::size_t>(m) - 2] * basis.col(m - 2);
        project_out(w, m);
        double beta = w.norm();

        const bool basis_full = (m == nc);
        bool want_check = basis_full || beta <= breakdown_tol || m >= next_check;
        if (m < k_want) want_check = false;

        if (want_check) {
            tdiag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
            tsub = m > 1 ? Eigen::Map<const Eigen::VectorXd>(offdiag.data(), m - 1)
                         : Eigen::VectorXd();
            tsolver.computeFromTridiagonal(tdiag, tsub, Eigen::ComputeEigenvectors);
            if (tsolver.info() != Eigen::Success)
                throw ConvergenceFailureError("tridiagonal solve failed");
            // largest k_want eigenvalues of T = smallest k_want of L
            bool all_ok = true;
            for (int r = 0; r < k_want; ++r) {
                const Eigen::Index idx = m - 1 - r;
                const double lam = c - tsolver.eigenvalues()[idx];
                const double resid = std::abs(beta * tsolver.eigenvectors()(m - 1, idx));
                if (resid > opts.residual_tol * std::max(1.0, std::abs(lam))) {
                    all_ok = false;
                    break;
                }
            }
            if (all_ok || basis_full) {
                RawPairs out;
                out.values.resize(k_want);
                out.vectors.resize(n, k_want);
                for (int r = 0; r < k_want; ++r) {
                    const Eigen::Index idx = m - 1 - r;
                    out.values[k_want - 1 - r] = c - tsolver.eigenvalues()[idx];
                    out.vectors.col(k_want - 1 - r).noalias() =
                        basis.leftCols(m) * tsolver.eigenvectors().col(idx);
                    const double vnorm = out.vectors.col(k_want - 1 - r).norm();
                    if (vnorm > 0.0) out.vectors.col(k_want - 1 - r) /= vnorm;
                }
                return out;
            }
            // retune the next checkpoint: geometric backoff keeps the
            // cumulative tridiagonal-solve cost near one final solve
            next_check = std::min<Eigen::Index>(nc, m + std::max<Eigen::Index>(4, m / 4));
        }

        ensure_capacity(m);
        if (beta <= breakdown_tol) {
            // invariant subspace found; restart with a fresh direction
            bool placed = false;
            for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
                fill_start_vector(v, stream);
                project_out(v, m);
                const double vn = v.norm();
                if (vn > 1e-8) {
                    basis.col(m) = v / vn;
                    placed = true;
                }
            }
            if (!placed)
                throw ConvergenceFailureError("restart could not find a new direction");
            offdiag.push_back(0.0);
        } else {
            basis.col(m) = w / beta;
            offdiag.push_back(beta);
        }
        ++m;
    }
}

// A single Krylov sweep cannot produce two eigenvectors for one repeated
// eigenvalue, so the smallest-k set it returns may under-count
// multiplicities.  Certify by probing the orthogonal complement of
// everything found: if the smallest eigenvalue there still undercuts the
// current k-th value, a copy was missing -- adopt it and probe again.
RawPairs lanczos_smallest_k(const SymMatrix& L, int k, const EmbedOptions& opts) {
    const Eigen::Index n = L.dim();
    const double c = L.gershgorin_bound();
    std::uint64_t stream = 0x51f0e1d2c3b4a596ULL;

    Eigen::MatrixXd found(n, std::min<Eigen::Index>(n, k + 8));
    RawPairs first = lanczos_sweep(L, c, k, found.leftCols(0), stream, opts);

    std::vector<std::pair<double, int>> pairs;  // (eigenvalue, column in found), ascending
    for (int r = 0; r < k; ++r) {
        found.col(r) = first.vectors.col(r);
        pairs.emplace_back(first.values[r], r);
    }
    std::sort(pairs.begin(), pairs.end());
    Eigen::Index f = k;

    bool certified = (f >= n);
    const int max_rounds = 2 * k + 8;
    for (int round = 0; round < max_rounds && !certified; ++round) {
        const double lam_k = pairs[static_cast<std::size_t>(k) - 1].first;
        RawPairs probe = lanczos_sweep(L, c, 1, found.leftCols(f), stream, opts);
        const double mu = probe.values[0];
        if (mu >= lam_k - 1e-9 * std::max(1.0, lam_k)) {
            certified = true;
            break;
        }
        if (f == found.cols())
            found.conservativeResize(Eigen::NoChange,
                                     std::min<Eigen::Index>(n, found.cols() * 2));
        found.col(f) = probe.vectors.col(0);
        pairs.insert(std::lower_bound(pairs.begin(), pairs.end(),
                                      std::pair{mu, static_cast<int>(f)}),
                     {mu, static_cast<int>(f)});
        ++f;
        if (f >= n) certified = true;
    }
    if (!certified)
        throw ConvergenceFailureError("eigenvalue multiplicities did not settle");

    RawPairs out;
    out.values.resize(k);
    out.vectors.resize(n, k);
    for (int r = 0; r < k; ++r) {
        out.values[r] = pairs[r].first;
        out.vectors.col(r) = found.col(pairs[r].second);
    }
    return out;
}

}  // namespace

SpectralEmbedding embed(const Graph& g, int k, LaplacianMode mode, const EmbedOptions& opts) {
    const std::size_t n = g.vertex_count();
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw KTooLargeError(static_cast<std::size_t>(std::max(k, 0)), n);

    const bool iterative = opts.force_iterative.value_or(n > opts.sparse_threshold);
    const auto storage = iterative ? SymMatrix::Storage::sparse : SymMatrix::Storage::dense;
    const SymMatrix L = mode == LaplacianMode::combinatorial
                            ? laplacian(g, storage)
                            : normalized_laplacian(g, storage);

    RawPairs raw = iterative ? lanczos_smallest_k(L, k, opts) : dense_smallest_k(L, k);

    // ascending order and non-negativity (tiny negatives are roundoff)
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return raw.values[a] < raw.values[b]; });

    std::vector<double> eigenvalues(static_cast<std::size_t>(k));
    std::vector<double> vectors(n * static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) {
        eigenvalues[r] = std::max(raw.values[order[r]], 0.0);
        Eigen::VectorXd col = raw.vectors.col(order[r]);
        const double nrm = col.norm();
        if (nrm > 0.0) col /= nrm;
        std::vector<double> fixed = sign_fix(std::vector<double>(col.data(), col.data() + n));
        std::copy(fixed.begin(), fixed.end(), vectors.begin() + r * n);
    }

    // deterministic order inside degenerate blocks: lexicographic columns.
    // eigenvalues keep their sorted positions -- block members agree to
    // 1e-9, so any pairing stays within the residual tolerance.
    int lo = 0;
    while (lo < k) {
        int hi = lo + 1;
        while (hi < k && eigenvalues[hi] - eigenvalues[hi - 1] <= 1e-9) ++hi;
        if (hi - lo > 1) {
            std::vector<int> blk(hi - lo);
            std::iota(blk.begin(), blk.end(), lo);
            std::stable_sort(blk.begin(), blk.end(), [&](int a, int b) {
                return std::lexicographical_compare(
                    vectors.begin() + a * n, vectors.begin() + (a + 1) * n,
                    vectors.begin() + b * n, vectors.begin() + (b + 1) * n);
            });
            std::vector<double> scratch(n * static_cast<std::size_t>(hi - lo));
            for (int t = 0; t < hi - lo; ++t)
                std::copy(vectors.begin() + blk[t] * n, vectors.begin() + (blk[t] + 1) * n,
                          scratch.begin() + t * n);
            std::copy(scratch.begin(), scratch.end(), vectors.begin() + lo * n);
        }
        lo = hi;
    }

    // verify the advertised invariants with true residuals
    std::vector<double> y(n);
    for (int r = 0; r < k; ++r) {
        std::span<const double> col(vectors.data() + r * n, n);
        L.matvec(col, y);
        double resid2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = y[i] - eigenvalues[r] * col[i];
            resid2 += d * d;
        }
        if (std::sqrt(resid2) > 1e-8 * std::max(1.0, eigenvalues[r]))
            throw ConvergenceFailureError("residual check failed for eigenpair " +
                                          std::to_string(r));
    }

    return SpectralEmbedding::from_parts(n, static_cast<std::size_t>(k),
                                         std::move(eigenvalues), std::move(vectors));
}

}  // namespace eld
