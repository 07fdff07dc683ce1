#include "sullivan/cohomology.hpp"

#include <algorithm>

#include "parallel.hpp"

namespace sullivan {

BasisTooLarge::BasisTooLarge(int degree, std::size_t cap)
    : std::runtime_error("BASIS_TOO_LARGE: degree " + std::to_string(degree) + " has more than " +
                         std::to_string(cap) + " monomials"),
      degree_(degree), cap_(cap)
{
}

Rational SparseMatrix::at(std::size_t row, std::size_t col) const
{
    for (const auto& [r, v] : columns.at(col))
        if (r == row)
            return v;
    return 0;
}

/******** Exact rank ********/

namespace {

using IntVector = std::vector<std::pair<std::size_t, Integer>>;

void make_primitive(IntVector& v)
{
    Integer g = 0;
    for (const auto& [i, x] : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1)
            break;
    }
    if (v.front().second < 0)
        g = -g;
    if (g != 1)
        for (auto& [i, x] : v)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

IntVector integer_column(const std::vector<std::pair<std::size_t, Rational>>& column)
{
    Integer lcm = 1;
    for (const auto& [i, q] : column)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    IntVector v;
    v.reserve(column.size());
    for (const auto& [i, q] : column) {
        if (q == 0)
            continue;
        Integer x = q.get_num() * (lcm / q.get_den());
        v.emplace_back(i, std::move(x));
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

// a*v - b*p, dropping zeros; both inputs sorted by index.
IntVector combine(const Integer& a, const IntVector& v, const Integer& b, const IntVector& p)
{
    IntVector out;
    out.reserve(v.size() + p.size());
    std::size_t i = 0, j = 0;
    Integer x;
    while (i < v.size() || j < p.size()) {
        if (j == p.size() || (i < v.size() && v[i].first < p[j].first)) {
            out.emplace_back(v[i].first, a * v[i].second);
            ++i;
        }
        else if (i == v.size() || p[j].first < v[i].first) {
            out.emplace_back(p[j].first, -b * p[j].second);
            ++j;
        }
        else {
            x = a * v[i].second - b * p[j].second;
            if (x != 0)
                out.emplace_back(v[i].first, x);
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

std::size_t rank(const SparseMatrix& m)
{
    // Incremental echelon form: each pivot vector is primitive over the
    // integers and indexed by its leading row.
    std::vector<IntVector> pivot_at(m.rows);
    std::vector<bool> has_pivot(m.rows, false);
    std::size_t r = 0;
    for (const auto& column : m.columns) {
        IntVector v = integer_column(column);
        while (!v.empty()) {
            std::size_t lead = v.front().first;
            if (!has_pivot[lead]) {
                make_primitive(v);
                pivot_at[lead] = std::move(v);
                has_pivot[lead] = true;
                ++r;
                break;
            }
            const IntVector& p = pivot_at[lead];
            Integer g = gcd(p.front().second, v.front().second);
            Integer a = p.front().second / g;
            Integer b = v.front().second / g;
            v = combine(a, v, b, p);
            if (!v.empty())
                make_primitive(v);
        }
        if (r == m.rows)
            break;
    }
    return r;
}

/******** Boundary matrices ********/

SparseMatrix differential_matrix(const SullivanModel& model, const std::vector<Monomial>& source,
                                 const std::vector<Monomial>& target)
{
    std::map<Monomial, std::size_t> row_of;
    for (std::size_t i = 0; i < target.size(); ++i)
        row_of.emplace(target[i], i);

    SparseMatrix out;
    out.rows = target.size();
    out.columns.resize(source.size());
    for (std::size_t j = 0; j < source.size(); ++j) {
        Polynomial image = apply_d(model.spec(), source[j]);
        auto& col = out.columns[j];
        col.reserve(image.size());
        for (const auto& [mono, c] : image.terms()) {
            auto it = row_of.find(mono);
            if (it == row_of.end())
                throw std::logic_error("differential leaves the target basis: " +
                                       to_string(model.generators(), mono));
            col.emplace_back(it->second, c);
        }
        std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    return out;
}

BoundaryMatrices boundary_matrices(const SullivanModel& model, int k)
{
    const auto& gens = model.generators();
    auto below = basis(gens, k - 1);
    auto here = basis(gens, k);
    auto above = basis(gens, k + 1);
    return {differential_matrix(model, below, here), differential_matrix(model, here, above)};
}

int fd_bound(const SullivanModel& model)
{
    int fd = 0;
    for (const auto& g : model.generators())
        fd += g.odd() ? g.degree : -(g.degree - 1);
    return fd;
}

int default_window(const SullivanModel& model)
{
    return std::max(fd_bound(model), 0) + model.generators().max_degree();
}

int betti(const SullivanModel& model, int k)
{
    if (k < 0)
        return 0;
    auto m = boundary_matrices(model, k);
    return static_cast<int>(m.outgoing.cols() - rank(m.outgoing) - rank(m.incoming));
}

std::int64_t BettiTable::at(int k) const
{
    if (k < 0 || static_cast<std::size_t>(k) >= betti.size())
        return 0;
    return betti[static_cast<std::size_t>(k)];
}

namespace {

std::vector<std::vector<Monomial>> bases_through(const SullivanModel& model, int top, std::size_t cap)
{
    std::vector<std::vector<Monomial>> bases;
    for (int k = 0; k <= top; ++k) {
        auto b = basis_within(model.generators(), k, cap);
        if (!b)
            throw BasisTooLarge(k, cap);
        bases.push_back(std::move(*b));
    }
    return bases;
}

} // namespace

BettiTable cohomology_table(const SullivanModel& model, const CohomologyOptions& options)
{
    int top = std::max(options.max_degree.value_or(default_window(model)), 0);
    auto bases = bases_through(model, top + 1, options.basis_cap);

    // rank of d: C^k -> C^{k+1} for k = 0..top
    std::vector<std::size_t> ranks(static_cast<std::size_t>(top) + 1, 0);
    detail::parallel_for(ranks.size(), options.jobs, [&](std::size_t k) {
        ranks[k] = rank(differential_matrix(model, bases[k], bases[k + 1]));
    });

    BettiTable table;
    table.max_degree_computed = top;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(top); ++k) {
        std::size_t incoming = k == 0 ? 0 : ranks[k - 1];
        auto b = static_cast<std::int64_t>(bases[k].size() - ranks[k] - incoming);
        table.betti.push_back(b);
        table.total += b;
        if (b > 0)
            table.observed_fd = static_cast<int>(k);
    }
    return table;
}

/******** Wordlength bigrading ********/

std::int64_t BigradedBettiTable::dim(int degree, int wordlength) const
{
    auto it = blocks.find({degree, wordlength});
    return it == blocks.end() ? 0 : it->second.dim;
}

std::int64_t BigradedBettiTable::total(int wordlength) const
{
    auto it = per_wordlength_totals.find(wordlength);
    return it == per_wordlength_totals.end() ? 0 : it->second;
}

BigradedBettiTable wordlength_cohomology(const SullivanModel& model, const CohomologyOptions& options)
{
    CohomologyOptions opts = options;
    opts.max_degree = std::max(options.max_degree.value_or(default_window(model)), 0);
    return wordlength_cohomology(model, opts, cohomology_table(model, opts));
}

BigradedBettiTable wordlength_cohomology(const SullivanModel& model, const CohomologyOptions& options,
                                         const BettiTable& reference)
{
    auto length = homogeneous_length(model);
    if (!length)
        throw NotHomogeneous();
    const int shift = *length - 1;
    const int top = std::max(options.max_degree.value_or(default_window(model)), 0);
    const auto& gens = model.generators();

    // Every generator has degree >= 1, so wordlength <= degree.
    std::vector<std::pair<int, int>> keys;
    for (int k = 0; k <= top + 1; ++k) {
        auto full = basis_within(gens, k, options.basis_cap);
        if (!full)
            throw BasisTooLarge(k, options.basis_cap);
        for (int w = 0; w <= k; ++w)
            keys.emplace_back(k, w);
    }

    std::vector<std::vector<Monomial>> block_basis(keys.size());
    detail::parallel_for(keys.size(), options.jobs, [&](std::size_t i) {
        block_basis[i] = basis(gens, keys[i].first, keys[i].second);
    });
    std::map<std::pair<int, int>, std::size_t> index;
    for (std::size_t i = 0; i < keys.size(); ++i)
        index.emplace(keys[i], i);

    // rank of d out of each block with degree <= top
    std::vector<std::size_t> rank_out(keys.size(), 0);
    detail::parallel_for(keys.size(), options.jobs, [&](std::size_t i) {
        auto [k, w] = keys[i];
        if (k > top || block_basis[i].empty())
            return;
        auto it = index.find({k + 1, w + shift});
        if (it == index.end())
            return;
        rank_out[i] = rank(differential_matrix(model, block_basis[i], block_basis[it->second]));
    });

    BigradedBettiTable table;
    table.length = *length;
    table.max_degree_computed = top;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        auto [k, w] = keys[i];
        if (k > top)
            continue;
        BigradedBlock block;
        block.basis_size = block_basis[i].size();
        block.rank_out = rank_out[i];
        if (auto it = index.find({k - 1, w - shift}); it != index.end())
            block.rank_in = rank_out[it->second];
        block.dim = static_cast<std::int64_t>(block.basis_size - block.rank_out - block.rank_in);
        table.blocks.emplace(keys[i], block);
        if (block.dim > 0)
            table.per_wordlength_totals[w] += block.dim;
    }

    int checked = std::min(top, reference.max_degree_computed);
    for (int k = 0; k <= checked; ++k) {
        std::int64_t sum = 0;
        for (int w = 0; w <= k; ++w)
            sum += table.dim(k, w);
        if (sum != reference.at(k))
            throw std::logic_error("wordlength blocks in degree " + std::to_string(k) + " sum to " +
                                   std::to_string(sum) + " but b_k = " + std::to_string(reference.at(k)));
    }
    return table;
}

/******** Ellipticity ********/

const char* to_string(EllipticityVerdict::Kind kind)
{
    return kind == EllipticityVerdict::Kind::NotElliptic ? "NOT_ELLIPTIC" : "PRESUMED_ELLIPTIC";
}

EllipticityVerdict ellipticity_verdict(const SullivanModel& model, const BettiTable& table)
{
    EllipticityVerdict v;
    v.fd_bound = fd_bound(model);
    v.verified_up_to = table.max_degree_computed;

    if (v.fd_bound < 0) {
        v.kind = EllipticityVerdict::Kind::NotElliptic;
        v.reason = "fd bound " + std::to_string(v.fd_bound) + " is negative";
        return v;
    }
    if (model.dim_v_even() > model.dim_v_odd()) {
        v.kind = EllipticityVerdict::Kind::NotElliptic;
        v.reason = "structural pre-filter: dim V^even = " + std::to_string(model.dim_v_even()) +
                   " > dim V^odd = " + std::to_string(model.dim_v_odd());
        return v;
    }
    if (table.max_degree_computed < default_window(model))
        throw std::invalid_argument("ellipticity verdict needs the table through degree " +
                                    std::to_string(default_window(model)));
    for (int k = v.fd_bound + 1; k <= table.max_degree_computed; ++k) {
        if (table.at(k) > 0) {
            v.kind = EllipticityVerdict::Kind::NotElliptic;
            v.witness_degree = k;
            v.reason = "b_" + std::to_string(k) + " = " + std::to_string(table.at(k)) + " above fd bound " +
                       std::to_string(v.fd_bound);
            return v;
        }
    }
    v.kind = EllipticityVerdict::Kind::PresumedElliptic;
    v.reason = "no cohomology above fd bound " + std::to_string(v.fd_bound) + " through degree " +
               std::to_string(table.max_degree_computed);
    return v;
}

} // namespace sullivan
