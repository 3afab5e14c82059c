#include "qlat/covering.hpp"

#include "qlat/errors.hpp"
#include "qlat/measures.hpp"

#include <algorithm>
#include <bit>
#include <thread>

namespace qlat {

namespace {

std::uint64_t space_size(int q, int n) {
    std::uint64_t s = 1;
    for (int i = 0; i < n; ++i) s *= static_cast<std::uint64_t>(q);
    return s;
}

// Codes of the span of `span` extended by v, given the field tables.
void extend_span(const Field& f, int n, const std::vector<std::uint64_t>& span, std::uint64_t v,
                 std::vector<std::uint64_t>& out) {
    const int q = f.order();
    const auto dv = decode_vector(v, q, n);
    out.clear();
    out.reserve(span.size() * static_cast<std::size_t>(q));
    std::vector<std::uint8_t> acc(static_cast<std::size_t>(n));
    for (std::uint64_t s : span) {
        const auto ds = decode_vector(s, q, n);
        for (int c = 0; c < q; ++c) {
            for (int i = 0; i < n; ++i) {
                acc[i] = f.add_raw(ds[i], f.mul_raw(static_cast<std::uint8_t>(c), dv[i]));
            }
            out.push_back(encode_vector(acc, q));
        }
    }
}

void check_linear(const Lattice& lattice) {
    if (lattice.is_boolean()) throw UsageError("covering machinery needs a linear lattice");
}

} // namespace

std::uint64_t for_each_basis(int q, int n, const std::function<void(const Basis&)>& fn, int stride, int offset) {
    if (n < 1) throw DomainError("basis enumeration needs n >= 1");
    if (stride < 1 || offset < 0 || offset >= stride) throw UsageError("bad basis partition");
    const Field f(FieldSpec::for_order(q));
    const std::uint64_t total = space_size(q, n);
    Basis basis;
    // spans[k]: codes in the span of the first k chosen vectors; member[k] marks them.
    std::vector<std::vector<std::uint64_t>> spans(static_cast<std::size_t>(n) + 1);
    std::vector<std::vector<bool>> member(static_cast<std::size_t>(n) + 1, std::vector<bool>(total, false));
    spans[0] = {0};
    member[0][0] = true;
    std::uint64_t visited = 0;

    auto rec = [&](auto&& self, std::size_t k, std::uint64_t from) -> void {
        if (k == static_cast<std::size_t>(n)) {
            ++visited;
            fn(basis);
            return;
        }
        for (std::uint64_t v = from; v < total; ++v) {
            if (k == 0 && (v - 1) % static_cast<std::uint64_t>(stride) != static_cast<std::uint64_t>(offset)) continue;
            if (member[k][v]) continue;
            extend_span(f, n, spans[k], v, spans[k + 1]);
            std::fill(member[k + 1].begin(), member[k + 1].end(), false);
            for (auto c : spans[k + 1]) member[k + 1][c] = true;
            basis.push_back(v);
            self(self, k + 1, v + 1);
            basis.pop_back();
        }
    };
    rec(rec, 0, 1);
    return visited;
}

std::vector<Basis> enumerate_bases(int q, int n, const CoveringOptions& options) {
    const BigInt expected = alpha(q, n);
    if (expected > BigInt(options.max_bases)) {
        throw ResourceError("alpha(" + std::to_string(q) + "," + std::to_string(n) + ") = " + expected.str() +
                            " bases exceed the cap " + std::to_string(options.max_bases));
    }
    std::vector<Basis> out;
    out.reserve(static_cast<std::size_t>(expected));
    for_each_basis(q, n, [&](const Basis& b) { out.push_back(b); });
    return out;
}

BasisSublattice make_sublattice(const Lattice& lattice, const Basis& basis) {
    check_linear(lattice);
    const int n = lattice.n();
    if (basis.size() != static_cast<std::size_t>(n)) throw UsageError("basis has the wrong number of vectors");
    BasisSublattice out{basis, std::vector<Handle>(std::size_t{1} << n)};
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        Matrix rows(0, n);
        for (int i = 0; i < n; ++i) {
            if (s & (1u << i)) rows.append_row(decode_vector(basis[static_cast<std::size_t>(i)], lattice.q(), n));
        }
        out.image[s] = lattice.span_of(rows);
    }
    return out;
}

CoveringFamily build_covering_family(const Lattice& lattice, const CoveringOptions& options) {
    check_linear(lattice);
    CoveringFamily out{lattice.q(), lattice.n(), {}, {}};
    for (const auto& b : enumerate_bases(lattice.q(), lattice.n(), options)) out.gamma.push_back(make_sublattice(lattice, b));
    for (int i = 0; i <= lattice.n(); ++i) out.t.push_back(covering_multiplicity(lattice.q(), lattice.n(), i));
    return out;
}

CoveringReport verify_covering(const Lattice& lattice, const CoveringOptions& options) {
    check_linear(lattice);
    const int q = lattice.q();
    const int n = lattice.n();
    CoveringReport report;
    report.q = q;
    report.n = n;
    report.expected_gamma = alpha(q, n);
    if (report.expected_gamma > BigInt(options.max_bases)) {
        throw ResourceError("alpha(" + std::to_string(q) + "," + std::to_string(n) + ") = " +
                            report.expected_gamma.str() + " bases exceed the cap " + std::to_string(options.max_bases));
    }
    const int workers = std::max(1, options.workers);
    std::vector<std::vector<std::uint64_t>> counts(static_cast<std::size_t>(workers),
                                                   std::vector<std::uint64_t>(lattice.size(), 0));
    std::vector<std::uint64_t> seen(static_cast<std::size_t>(workers), 0);
    auto work = [&](int w) {
        auto& mine = counts[static_cast<std::size_t>(w)];
        seen[static_cast<std::size_t>(w)] = for_each_basis(
            q, n,
            [&](const Basis& b) {
                for (Handle h : make_sublattice(lattice, b).image) ++mine[h];
            },
            workers, w);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    std::vector<std::uint64_t> total(lattice.size(), 0);
    for (int w = 0; w < workers; ++w) {
        report.gamma_size += seen[static_cast<std::size_t>(w)];
        for (Handle h = 0; h < lattice.size(); ++h) total[h] += counts[static_cast<std::size_t>(w)][h];
    }
    for (int i = 0; i <= n; ++i) {
        LevelMultiplicity lm{i, covering_multiplicity(q, n, i), UINT64_MAX, 0};
        for (Handle h = lattice.level_begin(i); h < lattice.level_end(i); ++h) {
            lm.min_observed = std::min(lm.min_observed, total[h]);
            lm.max_observed = std::max(lm.max_observed, total[h]);
            if (BigInt(total[h]) != lm.expected_t) {
                ++report.violation_count;
                if (report.violations.size() < 32) report.violations.push_back(h);
            }
        }
        report.per_level.push_back(std::move(lm));
    }
    return report;
}

TransferReport verify_transfer_identity(const Family& family, const std::optional<WeightVector>& beta,
                                        const CoveringFamily* gamma) {
    const Lattice& lat = family.lattice();
    check_linear(lat);
    const int q = lat.q();
    const int n = lat.n();
    const WeightVector w = beta ? *beta : WeightVector::ones(n);
    if (w.n() != n) throw UsageError("weight vector length must be n + 1");
    TransferReport report;
    report.weighted_sum = 0;
    for (int i = 0; i <= n; ++i) {
        const auto cnt = family.profile()[static_cast<std::size_t>(i)];
        if (cnt == 0) continue;
        report.weighted_sum += w.beta[static_cast<std::size_t>(i)] * Rational(covering_multiplicity(q, n, i)) /
                               Rational(binom(n, i)) * Rational(static_cast<long long>(cnt));
    }
    report.lubell_times_gamma = weighted_lubell(family, w) * Rational(alpha(q, n));
    if (gamma != nullptr) {
        if (gamma->q != q || gamma->n != n) throw UsageError("covering family belongs to another lattice");
        Rational sum = 0;
        for (const auto& g : gamma->gamma) {
            for (std::uint32_t s = 0; s < g.image.size(); ++s) {
                if (!family.contains(g.image[s])) continue;
                const int i = std::popcount(s);
                sum += w.beta[static_cast<std::size_t>(i)] / Rational(binom(n, i));
            }
        }
        report.sublattice_sum = sum;
    }
    return report;
}

Family sublattice_restriction(const Family& family, const BasisSublattice& sublattice, const Lattice& boolean_lattice) {
    if (!boolean_lattice.is_boolean() || boolean_lattice.n() != family.lattice().n()) {
        throw UsageError("restriction target must be the Boolean lattice of the same rank");
    }
    if (sublattice.image.size() != boolean_lattice.size()) throw UsageError("sublattice does not match the lattice");
    Family out(boolean_lattice);
    for (std::uint32_t s = 0; s < sublattice.image.size(); ++s) {
        if (family.contains(sublattice.image[s])) out.insert(boolean_lattice.handle_of_mask(s));
    }
    return out;
}

} // namespace qlat
