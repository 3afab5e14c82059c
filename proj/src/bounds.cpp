#include "qlat/bounds.hpp"

#include "qlat/counting.hpp"
#include "qlat/errors.hpp"

#include <algorithm>

namespace qlat {

namespace {

BigInt coeff(int n, int i, int q) { return q == 0 ? binom(n, i) : gauss_binom(n, i, q); }

void require_matching(const Lattice& lattice, int n, int q) {
    const bool ok = lattice.n() == n && (q == 0 ? lattice.is_boolean() : (!lattice.is_boolean() && lattice.q() == q));
    if (!ok) throw UsageError("construction lattice does not match the bound parameters");
}

void require_kleitman(int n, int s) {
    if (s < 3 || n < s) throw UsageError("requires n >= s >= 3");
}

BoundReport real_report(std::string id, std::map<std::string, long long> params, const Real& value) {
    BoundReport r;
    r.theorem_id = std::move(id);
    r.params = std::move(params);
    r.real = value;
    r.upper = upper_guard(value);
    return r;
}

BoundReport kleitman(int n, int s, int q, const std::string& prefix) {
    require_kleitman(n, s);
    BoundReport r;
    r.params = {{"n", n}, {"s", s}, {"q", q}};
    if ((n + 1) % s == 0) {
        const int k = (n + 1) / s;
        BigInt sum = 0;
        for (int i = k; i <= n; ++i) sum += coeff(n, i, q);
        r.theorem_id = prefix + "i";
        r.params["k"] = k;
        r.exact = Rational(sum);
    } else {
        const int k = n / s;
        const int rem = n % s;
        BigInt sum = 0;
        for (int i = k + 1; i <= n; ++i) sum += coeff(n, i, q);
        r.theorem_id = prefix + "ii";
        r.params["k"] = k;
        r.params["r"] = rem;
        r.exact = Rational(sum) + Rational(s - rem - 1, s) * Rational(coeff(n, k, q));
    }
    return r;
}

Family levels_from(const Lattice& lattice, int lo) { return Family::levels(lattice, lo, lattice.n()); }

long long param(const std::map<std::string, long long>& params, const std::string& key) {
    const auto it = params.find(key);
    if (it == params.end()) throw UsageError("missing parameter --" + key);
    return it->second;
}

long long param_or(const std::map<std::string, long long>& params, const std::string& key, long long fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

} // namespace

std::optional<BigInt> BoundReport::floor_value() const {
    if (exact) return qlat::floor(*exact);
    if (upper) return qlat::floor(*upper);
    return std::nullopt;
}

std::size_t BoundReport::construction_size() const {
    std::size_t total = 0;
    for (const auto& f : construction) total += f.size();
    return total;
}

bool BoundReport::has_flag(const std::string& flag) const {
    return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

BoundReport bound_sperner(int n, int q) {
    BoundReport r;
    r.theorem_id = q == 0 ? "T1.1" : "T1.3";
    r.params = {{"n", n}, {"q", q}};
    r.exact = Rational(coeff(n, n / 2, q));
    return r;
}

BoundReport bound_k_sperner(int n, int k, int q) {
    BoundReport r;
    r.theorem_id = q == 0 ? "T1.2" : "T1.4";
    r.params = {{"n", n}, {"k", k}, {"q", q}};
    r.exact = Rational(q == 0 ? sigma_sets(n, k) : sigma_spaces(n, k, q));
    return r;
}

BoundReport bound_lubell_k_sperner(int n, int k, int q) {
    if (k < 1) throw UsageError("k must be at least 1");
    BoundReport r;
    r.theorem_id = k == 1 ? (q == 0 ? "T1.5" : "T3.1") : (q == 0 ? "T1.6" : "T3.2");
    r.params = {{"n", n}, {"k", k}, {"q", q}};
    r.exact = Rational(k);
    return r;
}

BoundReport bound_kleitman_sets(int n, int s) { return kleitman(n, s, 0, "T1.12"); }

BoundReport bound_kleitman_spaces(int n, int s, int q, const Lattice* lattice) {
    if (q < 2) throw UsageError("q must be a prime power >= 2");
    BoundReport r = kleitman(n, s, q, "T1.13");
    if (lattice != nullptr && (n + 1) % s == 0) {
        require_matching(*lattice, n, q);
        r.construction.push_back(levels_from(*lattice, (n + 1) / s));
        r.note = "construction: all subspaces of dimension >= k";
    }
    return r;
}

BoundReport bound_cross_dependent(int n, int s, int q, const Lattice* lattice) {
    if (s < 3) throw UsageError("requires s >= 3");
    if (q < 2) throw UsageError("q must be a prime power >= 2");
    if (n < 0) throw UsageError("requires n >= 0");
    const int l = n / s;
    const int rem = n % s;
    BigInt sum = 0;
    for (int j = l + 1; j <= n; ++j) sum += gauss_binom(n, j, q);
    BoundReport r;
    r.theorem_id = "T1.14";
    r.params = {{"n", n}, {"s", s}, {"q", q}, {"l", l}, {"r", rem}};
    r.exact = Rational(BigInt(s) * sum + BigInt(s - rem - 1) * gauss_binom(n, l, q));
    if (lattice != nullptr) {
        require_matching(*lattice, n, q);
        r.construction = make_construction("cross_dependent_sharp", *lattice, {{"s", s}, {"l", l}, {"r", rem}});
        r.note = "construction: r+1 families of dimension > l, s-r-1 families of dimension >= l";
    }
    return r;
}

Rational bound_frankl_norm(int n, int s) {
    if (s < 2) throw UsageError("requires s >= 2");
    return Rational((s - 1) * (n + 1), s);
}

Rational bound_frankl_norm_sum(int n, int s) {
    if (s < 2) throw UsageError("requires s >= 2");
    return Rational((s - 1) * (n + 1));
}

Rational qperfect_rhs(int n, int q, int l, const Rational& value) {
    if (l < 0 || l >= n) throw DomainError("requires 0 <= l < n");
    if (value >= Rational(n + 1)) throw DomainError("requires a Lubell value below n + 1");
    BigInt low = 0;
    for (int i = 0; i < l; ++i) low += coeff(n, i, q);
    return Rational(low) + (value - Rational(l)) * Rational(coeff(n, l, q));
}

Rational bound_qperfect_rhs(const Lattice& lattice, int l, const Rational& value) {
    return qperfect_rhs(lattice.n(), lattice.is_boolean() ? 0 : lattice.q(), l, value);
}

LemmaRow evaluate_lemma_4_9(int q, int l, int k, int n) {
    if (q < 2 || l < 0 || !(l < k && k <= n - 1) || n < 3 * l) {
        throw DomainError("requires l < k <= n-1, q >= 2, n >= 3l");
    }
    LemmaRow row{q, l, k, n, 0, 0, false};
    for (int j = l; j <= k; ++j) row.lhs += gauss_binom(n, j, q);
    row.rhs = BigInt(k - l + 1) * gauss_binom(n, l, q);
    row.holds = row.lhs >= row.rhs;
    return row;
}

bool check_lemma_4_9(int q, int l, int k, int n) { return evaluate_lemma_4_9(q, l, k, n).holds; }

std::vector<LemmaRow> scan_lemma_4_9(const std::vector<int>& qs, int max_l, int extra_n) {
    std::vector<LemmaRow> rows;
    for (int q : qs) {
        for (int l = 0; l <= max_l; ++l) {
            for (int n = 3 * l; n <= 3 * l + extra_n; ++n) {
                for (int k = l + 1; k <= n - 1; ++k) rows.push_back(evaluate_lemma_4_9(q, l, k, n));
            }
        }
    }
    return rows;
}

bool qalgebra_hypothesis(int n, int d) {
    const Real t = boost::multiprecision::pow(Real(2), d) - Real(2) / boost::multiprecision::log(Real(2));
    return Real(n) >= t * t;
}

BoundReport bound_qalgebra_lubell(int n, int d, int q) {
    if (d < 1) throw UsageError("requires d >= 1");
    if (n < 0) throw UsageError("requires n >= 0");
    const Real expo = Real(1) - boost::multiprecision::pow(Real(2), 1 - d);
    BoundReport r = real_report(q == 0 ? "T5.5" : "T5.8", {{"n", n}, {"d", d}, {"q", q}},
                                Real(2) * boost::multiprecision::pow(Real(n + 1), expo));
    if (d < 3 || !qalgebra_hypothesis(n, d)) r.flags.push_back(kHypothesisUnmet);
    return r;
}

BoundReport bound_qalgebra_size(int n, int d, int q) {
    if (q < 2) throw UsageError("q must be a prime power >= 2");
    BoundReport base = bound_qalgebra_lubell(n, d, q);
    BoundReport r = real_report("T5.9", {{"n", n}, {"d", d}, {"q", q}},
                                *base.real * Real(gauss_binom(n, (n + 1) / 2, q)));
    r.flags = base.flags;
    return r;
}

BoundReport bound_polymath(int n, int d) {
    if (n < 1 || d < 1) throw UsageError("requires n >= 1 and d >= 1");
    const Real root = boost::multiprecision::pow(Real(25) / Real(n), Real(1) / boost::multiprecision::pow(Real(2), d));
    return real_report("T5.3", {{"n", n}, {"d", d}}, root * boost::multiprecision::pow(Real(2), n));
}

BoundReport bound_diamond_asymptotic(int n, int q) {
    const Real c = (boost::multiprecision::sqrt(Real(2)) + Real(3)) / Real(2);
    BoundReport r = real_report(q == 0 ? "T3.3" : "T3.6", {{"n", n}, {"q", q}}, c * Real(coeff(n, n / 2, q)));
    r.flags.push_back(kAsymptotic);
    r.note = "constant (sqrt(2)+3)/2 times the middle level size; the o(1) term is unquantified";
    return r;
}

BigInt ramsey_lower(const BigInt& n, int d) {
    if (d < 1) throw UsageError("requires d >= 1");
    if (n < 1) return 0;
    // (2r)^(2^(d-1)) <= n, by repeated squaring with early exit.
    auto fits = [&](const BigInt& r) {
        BigInt x = 2 * r;
        for (int i = 0; i < d - 1; ++i) {
            if (x > n) return false;
            x *= x;
        }
        return x <= n;
    };
    BigInt lo = 0;
    BigInt hi = n;
    while (lo < hi) {
        const BigInt mid = (lo + hi + 1) / 2;
        if (fits(mid)) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

BoundReport bound_ramsey(int n, int d) {
    if (d < 3) throw UsageError("requires d >= 3");
    BoundReport r;
    r.theorem_id = "T5.10";
    r.params = {{"n", n}, {"d", d}};
    r.exact = Rational(ramsey_lower(BigInt(n), d));
    if (!qalgebra_hypothesis(n, d)) r.flags.push_back(kHypothesisUnmet);
    r.note = "lower bound on the largest r such that every r-coloring has a monochromatic d-dimensional q-algebra";
    return r;
}

std::vector<Family> make_construction(const std::string& kind, const Lattice& lattice,
                                      const std::map<std::string, long long>& params) {
    const int n = lattice.n();
    std::vector<Family> out;
    if (kind == "middle_levels") {
        const int k = static_cast<int>(param(params, "k"));
        if (k < 1 || k > n + 1) throw UsageError("middle_levels requires 1 <= k <= n+1");
        const int base = floor_div(n - k, 2);
        out.push_back(Family::levels(lattice, base + 1, base + k));
    } else if (kind == "top_dims") {
        const int k = static_cast<int>(param(params, "k"));
        if (k < 0 || k > n) throw UsageError("top_dims requires 0 <= k <= n");
        out.push_back(levels_from(lattice, k));
    } else if (kind == "sperner_star") {
        const int k = static_cast<int>(param(params, "k"));
        if (k < 1 || k > n + 1) throw UsageError("sperner_star requires 1 <= k <= n+1");
        if ((n + k) % 2 != 0) {
            const int base = floor_div(n - k, 2);
            out.push_back(Family::levels(lattice, base + 1, base + k));
        } else {
            const int base = (n - k) / 2;
            out.push_back(Family::levels(lattice, base, base + k - 1));
            out.push_back(Family::levels(lattice, base + 1, base + k));
        }
    } else if (kind == "kleitman_sharp") {
        const long long s = param(params, "s");
        const long long k = param(params, "k");
        if (s * k - 1 != n) throw UsageError("kleitman_sharp requires n = sk - 1");
        out.push_back(levels_from(lattice, static_cast<int>(k)));
    } else if (kind == "cross_dependent_sharp") {
        const long long s = param(params, "s");
        const long long l = param(params, "l");
        const long long r = param(params, "r");
        if (s < 1 || l < 0 || r < 0 || r >= s || s * l + r != n) {
            throw UsageError("cross_dependent_sharp requires n = sl + r with 0 <= r < s");
        }
        for (long long i = 0; i < s; ++i) out.push_back(levels_from(lattice, static_cast<int>(i <= r ? l + 1 : l)));
    } else {
        throw UsageError("unknown construction kind: " + kind);
    }
    return out;
}

BoundReport bound_by_id(const std::string& id, const std::map<std::string, long long>& params,
                        const Lattice* lattice) {
    auto get = [&](const std::string& key) { return static_cast<int>(param(params, key)); };
    const int q = static_cast<int>(param_or(params, "q", 0));
    if (id == "T1.1" || id == "T1.3") return bound_sperner(get("n"), id == "T1.1" ? 0 : q);
    if (id == "T1.2" || id == "T1.4") return bound_k_sperner(get("n"), get("k"), id == "T1.2" ? 0 : q);
    if (id == "T1.5" || id == "T3.1") return bound_lubell_k_sperner(get("n"), 1, id == "T1.5" ? 0 : q);
    if (id == "T1.6" || id == "T3.2") return bound_lubell_k_sperner(get("n"), get("k"), id == "T1.6" ? 0 : q);
    if (id == "T1.12" || id == "T1.12i" || id == "T1.12ii") return bound_kleitman_sets(get("n"), get("s"));
    if (id == "T1.13" || id == "T1.13i" || id == "T1.13ii") return bound_kleitman_spaces(get("n"), get("s"), q, lattice);
    if (id == "T1.14") return bound_cross_dependent(get("n"), get("s"), q, lattice);
    if (id == "C4.3" || id == "T4.6" || id == "T4.2" || id == "T4.5") {
        BoundReport r;
        r.theorem_id = id;
        r.params = {{"n", get("n")}, {"s", get("s")}};
        const bool sum = id == "T4.2" || id == "T4.5";
        r.exact = sum ? bound_frankl_norm_sum(get("n"), get("s")) : bound_frankl_norm(get("n"), get("s"));
        return r;
    }
    if (id == "P4.11") {
        BoundReport r;
        r.theorem_id = id;
        r.params = params;
        const Rational value(param(params, "value_num"), param_or(params, "value_den", 1));
        r.exact = qperfect_rhs(get("n"), q, get("l"), value);
        if (get("n") < 3 * get("l")) r.flags.push_back(kHypothesisUnmet);
        return r;
    }
    if (id == "L4.9") {
        const LemmaRow row = evaluate_lemma_4_9(q == 0 ? 2 : q, get("l"), get("k"), get("n"));
        BoundReport r;
        r.theorem_id = id;
        r.params = {{"q", row.q}, {"l", row.l}, {"k", row.k}, {"n", row.n}};
        r.exact = Rational(row.rhs);
        r.note = "lhs " + row.lhs.str() + (row.holds ? " >= " : " < ") + "rhs " + row.rhs.str();
        return r;
    }
    if (id == "T3.3" || id == "T3.6") return bound_diamond_asymptotic(get("n"), id == "T3.3" ? 0 : q);
    if (id == "P3.4" || id == "P3.5") {
        const Real c = (boost::multiprecision::sqrt(Real(2)) + Real(3)) / Real(2);
        BoundReport r = real_report(id, {{"q", id == "P3.4" ? 0 : q}}, c);
        r.flags.push_back(kAsymptotic);
        r.note = "Lubell bound for diamond-free families up to an unquantified o(1)";
        return r;
    }
    if (id == "T3.8" || id == "T3.9" || id == "T3.10" || id == "T3.11") {
        BoundReport r;
        r.theorem_id = id;
        r.params = {{"n", get("n")}, {"q", id == "T3.8" || id == "T3.10" ? 0 : q}};
        r.exact = Rational(1);
        return r;
    }
    if (id == "T5.3") return bound_polymath(get("n"), get("d"));
    if (id == "T5.5") return bound_qalgebra_lubell(get("n"), get("d"), 0);
    if (id == "T5.8") return bound_qalgebra_lubell(get("n"), get("d"), q == 0 ? 2 : q);
    if (id == "T5.9") return bound_qalgebra_size(get("n"), get("d"), q == 0 ? 2 : q);
    if (id == "T5.10") return bound_ramsey(get("n"), get("d"));
    throw UsageError("unknown theorem id: " + id);
}

} // namespace qlat
