#include "qlat/lattice.hpp"

#include "qlat/counting.hpp"
#include "qlat/errors.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

namespace qlat {

std::string LatticeSpec::name() const {
    if (is_boolean()) return "B" + std::to_string(n);
    return "L" + std::to_string(n) + "(" + std::to_string(q) + ")";
}

namespace {

constexpr std::size_t kJoinTableLimit = 512;

std::uint32_t reverse_bits(std::uint32_t v, int n) {
    std::uint32_t out = 0;
    for (int i = 0; i < n; ++i) {
        if (v & (1u << i)) out |= 1u << (n - 1 - i);
    }
    return out;
}

std::uint64_t small_binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t out = 1;
    for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return out;
}

std::string key_of(std::span<const std::uint8_t> digits) {
    return std::string(reinterpret_cast<const char*>(digits.data()), digits.size());
}

Matrix matrix_of(std::span<const std::uint8_t> digits, int dim, int n) {
    Matrix m(dim, n);
    std::copy(digits.begin(), digits.end(), m.data.begin());
    return m;
}

// All k x n RREF matrices over GF(q), as concatenated digit strings.
void enumerate_rref(int q, int n, int k, std::vector<std::string>& out) {
    std::vector<int> pivots(static_cast<std::size_t>(k));
    std::iota(pivots.begin(), pivots.end(), 0);
    if (k == 0) {
        out.emplace_back();
        return;
    }
    while (true) {
        // Free positions: right of the row's pivot and not in a pivot column.
        std::vector<std::size_t> free_pos;
        std::string base(static_cast<std::size_t>(k) * n, '\0');
        for (int r = 0; r < k; ++r) {
            base[static_cast<std::size_t>(r) * n + pivots[r]] = 1;
            for (int c = pivots[r] + 1; c < n; ++c) {
                if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) {
                    free_pos.push_back(static_cast<std::size_t>(r) * n + c);
                }
            }
        }
        std::vector<int> counter(free_pos.size(), 0);
        while (true) {
            std::string cur = base;
            for (std::size_t i = 0; i < free_pos.size(); ++i) cur[free_pos[i]] = static_cast<char>(counter[i]);
            out.push_back(std::move(cur));
            std::size_t i = 0;
            while (i < counter.size() && ++counter[i] == q) counter[i++] = 0;
            if (i == counter.size()) break;
        }
        // Next pivot set in lexicographic order.
        int i = k - 1;
        while (i >= 0 && pivots[i] == n - k + i) --i;
        if (i < 0) break;
        ++pivots[i];
        for (int j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
    }
}

} // namespace

int meet_dim(const Subspace& a, const Subspace& b) {
    if (a.q != b.q || a.n != b.n) throw UsageError("meet_dim: subspaces of different lattices");
    const Field f(FieldSpec::for_order(a.q, 255));
    return a.dim + b.dim - rank(f, stack(a.basis, b.basis));
}

Subspace join(const Subspace& a, const Subspace& b) {
    if (a.q != b.q || a.n != b.n) throw UsageError("join: subspaces of different lattices");
    const Field f(FieldSpec::for_order(a.q, 255));
    Matrix m = stack(a.basis, b.basis);
    m.cols = a.n;
    const int r = rref(f, m);
    return Subspace{a.q, a.n, r, std::move(m)};
}

Lattice Lattice::build(const LatticeSpec& spec, const LatticeOptions& options) {
    Lattice lat;
    lat.spec_ = spec;
    const int n = spec.n;
    if (n < 0) throw DomainError("lattice dimension must be >= 0");

    if (spec.is_boolean()) {
        if (n > options.max_boolean_n) {
            throw ResourceError("Boolean lattice B" + std::to_string(n) + " exceeds the cap n <= " +
                                std::to_string(options.max_boolean_n));
        }
        if (small_binom(n, n / 2) > options.max_level_size) {
            throw ResourceError("level " + std::to_string(n / 2) + " of B" + std::to_string(n) +
                                " exceeds the level size cap");
        }
        lat.field_ = std::make_shared<const Field>(FieldSpec::for_order(2));
        lat.level_start_.push_back(0);
        for (int k = 0; k <= n; ++k) {
            // Colex order of the bit-reversed masks is the (dim, lexicographic digits) order.
            if (k == 0) {
                lat.masks_.push_back(0);
            } else {
                std::uint32_t j = (1u << k) - 1;
                const std::uint64_t limit = 1ull << n;
                while (j < limit) {
                    lat.masks_.push_back(reverse_bits(j, n));
                    const std::uint32_t c = j & (0u - j);
                    const std::uint32_t r = j + c;
                    if (r == 0 || r >= limit) break;
                    j = (((r ^ j) >> 2) / c) | r;
                }
            }
            lat.dims_.resize(lat.masks_.size(), static_cast<std::uint8_t>(k));
            lat.level_start_.push_back(static_cast<Handle>(lat.masks_.size()));
        }
    } else {
        lat.field_ = std::make_shared<const Field>(FieldSpec::for_order(spec.q, options.max_q));
        for (int k = 0; k <= n; ++k) {
            const BigInt count = gauss_binom(n, k, spec.q);
            if (count > BigInt(options.max_level_size)) {
                throw ResourceError("level " + std::to_string(k) + " of " + spec.name() + " has " + count.str() +
                                    " elements, above the cap " + std::to_string(options.max_level_size));
            }
        }
        lat.level_start_.push_back(0);
        for (int k = 0; k <= n; ++k) {
            std::vector<std::string> level;
            enumerate_rref(spec.q, n, k, level);
            std::sort(level.begin(), level.end());
            for (auto& key : level) {
                lat.offset_.push_back(lat.digits_.size());
                lat.digits_.insert(lat.digits_.end(), key.begin(), key.end());
                lat.dims_.push_back(static_cast<std::uint8_t>(k));
            }
            lat.level_start_.push_back(static_cast<Handle>(lat.dims_.size()));
        }
    }
    lat.index_elements();
    lat.build_vector_sets();
    lat.build_relation(options);
    return lat;
}

void Lattice::index_elements() {
    if (is_boolean()) return;
    index_.clear();
    index_.reserve(size());
    for (Handle h = 0; h < size(); ++h) {
        const auto d = digits(h);
        index_.emplace(key_of(d), h);
    }
}

void Lattice::build_vector_sets() {
    vectors_.clear();
    words_per_ = 0;
    if (is_boolean()) return;
    const int q = spec_.q;
    std::uint64_t space = 1;
    for (int i = 0; i < n(); ++i) space *= static_cast<std::uint64_t>(q);
    if (space > (1u << 16) || space * size() > (1ull << 28)) return;
    words_per_ = static_cast<std::size_t>((space + 63) / 64);
    vectors_.assign(words_per_ * size(), 0);
    std::vector<std::uint8_t> acc(static_cast<std::size_t>(n()));
    for (Handle h = 0; h < size(); ++h) {
        const Subspace s = subspace(h);
        std::vector<int> coeff(static_cast<std::size_t>(s.dim), 0);
        while (true) {
            std::fill(acc.begin(), acc.end(), 0);
            for (int r = 0; r < s.dim; ++r) {
                if (coeff[r] == 0) continue;
                const auto row = s.basis.row(r);
                for (int c = 0; c < n(); ++c) {
                    acc[c] = field_->add_raw(acc[c], field_->mul_raw(static_cast<std::uint8_t>(coeff[r]), row[c]));
                }
            }
            const std::uint64_t code = encode_vector(acc, q);
            vectors_[h * words_per_ + code / 64] |= 1ull << (code % 64);
            int i = 0;
            while (i < s.dim && ++coeff[i] == q) coeff[i++] = 0;
            if (i == s.dim) break;
        }
    }
}

std::size_t Lattice::common_vectors(Handle a, Handle b) const {
    std::size_t count = 0;
    const std::uint64_t* wa = vectors_.data() + a * words_per_;
    const std::uint64_t* wb = vectors_.data() + b * words_per_;
    for (std::size_t i = 0; i < words_per_; ++i) count += static_cast<std::size_t>(std::popcount(wa[i] & wb[i]));
    return count;
}

void Lattice::build_relation(const LatticeOptions& options) {
    below_.clear();
    above_.clear();
    disjoint_.clear();
    join_.clear();
    if (size() > options.relation_table_limit) return;
    const std::size_t count = size();
    below_.assign(count, Bitset(count));
    above_.assign(count, Bitset(count));
    for (Handle v = 0; v < count; ++v) {
        below_[v].set(v);
        above_[v].set(v);
        for (Handle u = 0; u < level_begin(dim(v)); ++u) {
            const bool inside = contains_slow(u, v);
            if (inside) {
                below_[v].set(u);
                above_[u].set(v);
            }
        }
    }
    disjoint_.assign(count, Bitset(count));
    for (Handle a = 0; a < count; ++a) {
        for (Handle b = a; b < count; ++b) {
            if (meet_dim(a, b) == 0) {
                disjoint_[a].set(b);
                disjoint_[b].set(a);
            }
        }
    }
    if (count <= kJoinTableLimit) {
        std::vector<Handle> table(count * count);
        for (Handle a = 0; a < count; ++a) {
            for (Handle b = a; b < count; ++b) table[a * count + b] = table[b * count + a] = join(a, b);
        }
        join_ = std::move(table);
    }
}

Subspace Lattice::subspace(Handle h) const {
    const int k = dim(h);
    return Subspace{q(), n(), k, matrix_of(digits(h), k, n())};
}

std::vector<std::uint8_t> Lattice::digits(Handle h) const {
    const int k = dim(h);
    if (is_boolean()) {
        std::vector<std::uint8_t> d(static_cast<std::size_t>(k) * n(), 0);
        int r = 0;
        for (int i = 0; i < n(); ++i) {
            if (masks_[h] & (1u << i)) d[static_cast<std::size_t>(r++) * n() + i] = 1;
        }
        return d;
    }
    const auto begin = digits_.begin() + static_cast<std::ptrdiff_t>(offset_[h]);
    return std::vector<std::uint8_t>(begin, begin + static_cast<std::ptrdiff_t>(k) * n());
}

std::uint32_t Lattice::mask(Handle h) const {
    if (!is_boolean()) throw UsageError("mask() is only defined on Boolean lattices");
    return masks_.at(h);
}

Handle Lattice::handle_of_mask(std::uint32_t m) const {
    if (!is_boolean()) throw UsageError("handle_of_mask() is only defined on Boolean lattices");
    if (n() < 32 && (m >> n()) != 0) throw UsageError("mask has bits outside [n]");
    const std::uint32_t j = reverse_bits(m, n());
    std::uint64_t rank = 0;
    int idx = 0;
    for (int c = 0; c < n(); ++c) {
        if (j & (1u << c)) rank += small_binom(c, ++idx);
    }
    return level_begin(std::popcount(m)) + static_cast<Handle>(rank);
}

Handle Lattice::find(const Matrix& basis) const {
    if (is_boolean()) {
        std::uint32_t m = 0;
        for (int r = 0; r < basis.rows; ++r) {
            const auto row = basis.row(r);
            int ones = 0;
            for (int c = 0; c < basis.cols; ++c) {
                if (row[c] == 1) {
                    m |= 1u << c;
                    ++ones;
                } else if (row[c] != 0) {
                    ones = 99;
                }
            }
            if (ones != 1) throw UsageError("not a coordinate subspace of the Boolean lattice");
        }
        return handle_of_mask(m);
    }
    const auto it = index_.find(key_of(basis.data));
    if (it == index_.end()) throw UsageError("matrix is not a canonical basis of this lattice");
    return it->second;
}

Handle Lattice::span_of(Matrix rows) const {
    if (rows.rows > 0 && rows.cols != n()) throw UsageError("span_of: wrong number of columns");
    rows.cols = n();
    rref(*field_, rows);
    return find(rows);
}

bool Lattice::contains_slow(Handle u, Handle v) const {
    if (dim(u) > dim(v)) return false;
    if (dim(u) == dim(v)) return u == v;
    if (is_boolean()) return (masks_[u] & ~masks_[v]) == 0;
    if (words_per_ > 0) return meet_dim(u, v) == dim(u);
    const Subspace su = subspace(u);
    const Subspace sv = subspace(v);
    for (int r = 0; r < su.basis.rows; ++r) {
        if (!in_row_space(*field_, sv.basis, su.basis.row(r))) return false;
    }
    return true;
}

bool Lattice::contains(Handle u, Handle v) const {
    if (has_relation_table()) return below_.at(v).test(u);
    return contains_slow(u, v);
}

Bitset Lattice::below(Handle v) const {
    if (has_relation_table()) return below_.at(v);
    Bitset out(size());
    for (Handle u = 0; u < level_end(dim(v)); ++u) {
        if (contains_slow(u, v)) out.set(u);
    }
    return out;
}

Bitset Lattice::above(Handle u) const {
    if (has_relation_table()) return above_.at(u);
    Bitset out(size());
    for (Handle v = level_begin(dim(u)); v < size(); ++v) {
        if (contains_slow(u, v)) out.set(v);
    }
    return out;
}

int Lattice::meet_dim(Handle a, Handle b) const {
    if (is_boolean()) return std::popcount(masks_.at(a) & masks_.at(b));
    if (words_per_ > 0) {
        std::size_t common = common_vectors(a, b);
        int d = 0;
        while (common > 1) {
            common /= static_cast<std::size_t>(spec_.q);
            ++d;
        }
        return d;
    }
    if (contains(a, b)) return dim(a);
    if (contains(b, a)) return dim(b);
    const Subspace sa = subspace(a);
    const Subspace sb = subspace(b);
    return sa.dim + sb.dim - rank(*field_, stack(sa.basis, sb.basis));
}

bool Lattice::disjoint(Handle a, Handle b) const {
    if (!disjoint_.empty()) return disjoint_.at(a).test(b);
    return meet_dim(a, b) == 0;
}

Bitset Lattice::disjoint_from(Handle u) const {
    if (!disjoint_.empty()) return disjoint_.at(u);
    Bitset out(size());
    for (Handle v = 0; v < size(); ++v) {
        if (meet_dim(u, v) == 0) out.set(v);
    }
    return out;
}

Handle Lattice::join(Handle a, Handle b) const {
    if (!join_.empty()) return join_.at(static_cast<std::size_t>(a) * size() + b);
    if (is_boolean()) return handle_of_mask(masks_.at(a) | masks_.at(b));
    if (contains(a, b)) return b;
    if (contains(b, a)) return a;
    const Subspace sa = subspace(a);
    const Subspace sb = subspace(b);
    return span_of(stack(sa.basis, sb.basis));
}

bool operator==(const Lattice& a, const Lattice& b) {
    return a.spec_ == b.spec_ && a.dims_ == b.dims_ && a.digits_ == b.digits_ && a.masks_ == b.masks_ &&
           a.level_start_ == b.level_start_;
}

// ---------------------------------------------------------------------------

Family::Family(const Lattice& lattice)
    : lattice_(&lattice), members_(lattice.size()), profile_(static_cast<std::size_t>(lattice.n() + 1), 0) {}

Family::Family(const Lattice& lattice, Bitset members)
    : lattice_(&lattice), members_(std::move(members)), profile_(static_cast<std::size_t>(lattice.n() + 1), 0) {
    if (members_.size() != lattice.size()) throw UsageError("member bitset does not match the lattice size");
    recount();
}

Family Family::from_handles(const Lattice& lattice, std::span<const Handle> handles) {
    Family f(lattice);
    for (Handle h : handles) f.insert(h);
    return f;
}

Family Family::whole(const Lattice& lattice) {
    Bitset all(lattice.size());
    all.set();
    return Family(lattice, std::move(all));
}

Family Family::levels(const Lattice& lattice, int lo, int hi) {
    Family f(lattice);
    lo = std::max(lo, 0);
    hi = std::min(hi, lattice.n());
    for (int i = lo; i <= hi; ++i) {
        for (Handle h = lattice.level_begin(i); h < lattice.level_end(i); ++h) f.insert(h);
    }
    return f;
}

Family Family::from_mask(const Lattice& lattice, std::uint64_t mask) {
    if (lattice.size() > 64) throw UsageError("from_mask needs a lattice of at most 64 elements");
    Bitset b(lattice.size(), mask);
    return Family(lattice, std::move(b));
}

void Family::insert(Handle h) {
    if (h >= members_.size()) throw UsageError("handle out of range");
    if (members_.test(h)) return;
    members_.set(h);
    ++profile_[static_cast<std::size_t>(lattice_->dim(h))];
    ++size_;
}

void Family::erase(Handle h) {
    if (h >= members_.size()) throw UsageError("handle out of range");
    if (!members_.test(h)) return;
    members_.reset(h);
    --profile_[static_cast<std::size_t>(lattice_->dim(h))];
    --size_;
}

std::vector<Handle> Family::handles() const {
    std::vector<Handle> out;
    out.reserve(size_);
    for_each([&](Handle h) { out.push_back(h); });
    return out;
}

void Family::recount() {
    std::fill(profile_.begin(), profile_.end(), 0);
    size_ = 0;
    for_each([&](Handle h) {
        ++profile_[static_cast<std::size_t>(lattice_->dim(h))];
        ++size_;
    });
}

void require_same_lattice(const Family& a, const Family& b) {
    if (&a.lattice() != &b.lattice()) throw UsageError("families belong to different lattices");
}

Family shadow(const Family& family) {
    const Lattice& lat = family.lattice();
    int k = -1;
    family.for_each([&](Handle h) {
        if (k < 0) k = lat.dim(h);
        if (lat.dim(h) != k) throw UsageError("shadow: family mixes dimensions");
    });
    Family out(lat);
    if (k < 0) return out;
    if (k == 0) throw UsageError("shadow: members must have dimension >= 1");
    Bitset acc(lat.size());
    family.for_each([&](Handle v) { acc |= lat.below(v); });
    for (Handle w = lat.level_begin(k - 1); w < lat.level_end(k - 1); ++w) {
        if (acc.test(w)) out.insert(w);
    }
    return out;
}

bool is_complex(const Family& family) {
    bool ok = true;
    family.for_each([&](Handle v) {
        if (ok && !family.lattice().below(v).is_subset_of(family.members())) ok = false;
    });
    return ok;
}

bool is_upset(const Family& family) {
    bool ok = true;
    family.for_each([&](Handle v) {
        if (ok && !family.lattice().above(v).is_subset_of(family.members())) ok = false;
    });
    return ok;
}

bool is_antichain(const Family& family) {
    bool ok = true;
    family.for_each([&](Handle v) {
        if (!ok) return;
        Bitset rel = family.lattice().below(v) | family.lattice().above(v);
        rel.reset(v);
        if (rel.intersects(family.members())) ok = false;
    });
    return ok;
}

Family upset_of(const Family& family) {
    Bitset acc(family.lattice().size());
    family.for_each([&](Handle v) { acc |= family.lattice().above(v); });
    return Family(family.lattice(), std::move(acc));
}

Family downset_of(const Family& family) {
    Bitset acc(family.lattice().size());
    family.for_each([&](Handle v) { acc |= family.lattice().below(v); });
    return Family(family.lattice(), std::move(acc));
}

Family complement(const Family& family) {
    Bitset inv = ~family.members();
    return Family(family.lattice(), std::move(inv));
}

} // namespace qlat
