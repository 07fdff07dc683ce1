#include "sullivan/algebra.hpp"

#include <algorithm>
#include <limits>

namespace sullivan {

GeneratorSet::GeneratorSet(std::vector<Generator> gens) : gens_(std::move(gens))
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].id != static_cast<GeneratorId>(i))
            throw AlgebraError("generator ids must be dense and in declaration order");
}

GeneratorId GeneratorSet::add(std::string name, int degree)
{
    auto id = static_cast<GeneratorId>(gens_.size());
    gens_.push_back({id, std::move(name), degree});
    return id;
}

const Generator& GeneratorSet::at(GeneratorId id) const
{
    if (!contains(id))
        throw AlgebraError("unknown generator id " + std::to_string(id));
    return (*this)[id];
}

std::optional<GeneratorId> GeneratorSet::find(std::string_view name) const
{
    for (const auto& g : gens_)
        if (g.name == name)
            return g.id;
    return std::nullopt;
}

int GeneratorSet::max_degree() const
{
    int m = 0;
    for (const auto& g : gens_)
        m = std::max(m, g.degree);
    return m;
}

/******** Monomials ********/

Monomial Monomial::from_canonical(std::vector<Factor> factors)
{
    Monomial m;
    m.factors_ = std::move(factors);
    return m;
}

int Monomial::wordlength() const
{
    int w = 0;
    for (const auto& f : factors_)
        w += f.exp;
    return w;
}

int Monomial::degree(const GeneratorSet& gens) const
{
    int d = 0;
    for (const auto& f : factors_)
        d += f.exp * gens.at(f.gen).degree;
    return d;
}

int Monomial::exponent(GeneratorId id) const
{
    for (const auto& f : factors_)
        if (f.gen == id)
            return f.exp;
    return 0;
}

bool operator<(const Monomial& a, const Monomial& b)
{
    const auto& fa = a.factors_;
    const auto& fb = b.factors_;
    std::size_t i = 0;
    for (; i < fa.size() && i < fb.size(); ++i) {
        if (fa[i].gen != fb[i].gen)
            return fa[i].gen < fb[i].gen;
        if (fa[i].exp != fb[i].exp)
            return fa[i].exp > fb[i].exp;
    }
    // the longer one has a positive exponent where the other has zero
    return i < fa.size();
}

std::optional<SignedMonomial> normalize(const GeneratorSet& gens, const std::vector<Factor>& word)
{
    for (const auto& f : word) {
        if (!gens.contains(f.gen))
            throw AlgebraError("unknown generator id " + std::to_string(f.gen));
        if (f.exp < 1)
            throw AlgebraError("exponents must be positive");
    }

    int sign = 1;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!gens[word[i].gen].odd())
            continue;
        if (word[i].exp > 1)
            return std::nullopt;
        for (std::size_t j = i + 1; j < word.size(); ++j) {
            if (word[j].gen == word[i].gen)
                return std::nullopt;
            if (word[j].gen < word[i].gen && gens[word[j].gen].odd())
                sign = -sign;
        }
    }

    std::vector<Factor> sorted = word;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Factor& x, const Factor& y) { return x.gen < y.gen; });
    std::vector<Factor> merged;
    for (const auto& f : sorted) {
        if (!merged.empty() && merged.back().gen == f.gen)
            merged.back().exp += f.exp;
        else
            merged.push_back(f);
    }
    return SignedMonomial{Monomial::from_canonical(std::move(merged)), sign};
}

std::optional<SignedMonomial> multiply(const GeneratorSet& gens, const Monomial& a, const Monomial& b)
{
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::vector<Factor> out;
    out.reserve(fa.size() + fb.size());

    // Moving each odd factor of b leftwards past the odd factors of a with a
    // larger id contributes one sign flip per crossing.
    int odd_in_a_after = 0;
    for (const auto& f : fa)
        if (gens.at(f.gen).odd())
            ++odd_in_a_after;

    int sign = 1;
    std::size_t i = 0, j = 0;
    while (i < fa.size() || j < fb.size()) {
        if (j == fb.size() || (i < fa.size() && fa[i].gen < fb[j].gen)) {
            if (gens[fa[i].gen].odd())
                --odd_in_a_after;
            out.push_back(fa[i++]);
        }
        else if (i == fa.size() || fb[j].gen < fa[i].gen) {
            if (gens.at(fb[j].gen).odd() && odd_in_a_after % 2 != 0)
                sign = -sign;
            out.push_back(fb[j++]);
        }
        else {
            if (gens[fa[i].gen].odd())
                return std::nullopt;
            out.push_back({fa[i].gen, fa[i].exp + fb[j].exp});
            ++i;
            ++j;
        }
    }
    return SignedMonomial{Monomial::from_canonical(std::move(out)), sign};
}

/******** Polynomials ********/

Polynomial::Polynomial(Monomial m, Rational c)
{
    add_term(m, c);
}

Rational Polynomial::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c)
{
    // mpq_class(2, 4) is not reduced; everything downstream assumes it is
    Rational v = c;
    v.canonicalize();
    if (v == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& other)
{
    for (const auto& [m, c] : other.terms_)
        add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other)
{
    for (const auto& [m, c] : other.terms_)
        add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c)
{
    Rational v = c;
    v.canonicalize();
    if (v == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_)
        coeff *= v;
    return *this;
}

std::optional<int> Polynomial::homogeneous_degree(const GeneratorSet& gens) const
{
    std::optional<int> deg;
    for (const auto& [m, c] : terms_) {
        int d = m.degree(gens);
        if (deg && *deg != d)
            return std::nullopt;
        deg = d;
    }
    return deg;
}

bool Polynomial::is_homogeneous(const GeneratorSet& gens) const
{
    return is_zero() || homogeneous_degree(gens).has_value();
}

int Polynomial::min_wordlength() const
{
    int w = std::numeric_limits<int>::max();
    for (const auto& [m, c] : terms_)
        w = std::min(w, m.wordlength());
    return w;
}

int Polynomial::max_wordlength() const
{
    int w = -1;
    for (const auto& [m, c] : terms_)
        w = std::max(w, m.wordlength());
    return w;
}

void check_generators(const GeneratorSet& gens, const Polynomial& p)
{
    for (const auto& [m, c] : p.terms())
        for (const auto& f : m.factors())
            if (!gens.contains(f.gen))
                throw AlgebraError("polynomial refers to generator id " + std::to_string(f.gen) +
                                   " outside the generator set");
}

Polynomial multiply(const GeneratorSet& gens, const Polynomial& p, const Polynomial& q)
{
    check_generators(gens, p);
    check_generators(gens, q);
    Polynomial out;
    for (const auto& [ma, ca] : p.terms()) {
        for (const auto& [mb, cb] : q.terms()) {
            auto prod = multiply(gens, ma, mb);
            if (!prod)
                continue;
            Rational c = ca * cb;
            if (prod->sign < 0)
                c = -c;
            out.add_term(prod->monomial, c);
        }
    }
    return out;
}

std::map<int, Polynomial> wordlength_split(const Polynomial& p)
{
    std::map<int, Polynomial> parts;
    for (const auto& [m, c] : p.terms())
        parts[m.wordlength()].add_term(m, c);
    return parts;
}

/******** Basis enumeration ********/

namespace {

struct BasisWalker {
    const GeneratorSet& gens;
    std::vector<GeneratorId> ids;
    bool use_degree;
    bool use_words;
    std::vector<long> max_reach; // max degree reachable from ids[i..]; -1 means unbounded
    std::vector<Factor> current;
    std::vector<Monomial> out;
    std::size_t limit = std::numeric_limits<std::size_t>::max();
    bool overflow = false;

    BasisWalker(const GeneratorSet& g, std::vector<GeneratorId> subset, bool by_degree, bool by_words)
        : gens(g), ids(std::move(subset)), use_degree(by_degree), use_words(by_words), max_reach(ids.size() + 1, 0)
    {
        for (std::size_t i = ids.size(); i-- > 0;) {
            const auto& gen = gens[ids[i]];
            if (gen.even() || max_reach[i + 1] < 0)
                max_reach[i] = -1;
            else
                max_reach[i] = max_reach[i + 1] + gen.degree;
        }
    }

    void walk(std::size_t pos, int degree_left, int words_left)
    {
        bool degree_done = use_degree && degree_left == 0;
        bool words_done = use_words && words_left == 0;
        if (degree_done || words_done) {
            if ((degree_done || !use_degree) && (words_done || !use_words)) {
                if (out.size() == limit)
                    overflow = true;
                else
                    out.push_back(Monomial::from_canonical(current));
            }
            return;
        }
        if (pos == ids.size() || overflow)
            return;
        if (use_degree && max_reach[pos] >= 0 && max_reach[pos] < degree_left)
            return;
        const auto& gen = gens[ids[pos]];
        int max_exp = gen.odd() ? 1 : std::numeric_limits<int>::max();
        if (use_degree)
            max_exp = std::min(max_exp, degree_left / gen.degree);
        if (use_words)
            max_exp = std::min(max_exp, words_left);
        for (int e = max_exp; e >= 1; --e) {
            current.push_back({gen.id, e});
            walk(pos + 1, degree_left - e * gen.degree, words_left - e);
            current.pop_back();
        }
        walk(pos + 1, degree_left, words_left);
    }
};

std::vector<GeneratorId> all_ids(const GeneratorSet& gens)
{
    std::vector<GeneratorId> ids;
    for (const auto& g : gens)
        ids.push_back(g.id);
    return ids;
}

} // namespace

std::vector<Monomial> basis(const GeneratorSet& gens, int k)
{
    if (k < 0)
        return {};
    if (k == 0)
        return {Monomial{}};
    BasisWalker w(gens, all_ids(gens), true, false);
    w.walk(0, k, 0);
    return std::move(w.out);
}

std::optional<std::vector<Monomial>> basis_within(const GeneratorSet& gens, int k, std::size_t limit)
{
    if (k < 0)
        return std::vector<Monomial>{};
    if (k == 0)
        return limit >= 1 ? std::optional(std::vector<Monomial>{Monomial{}}) : std::nullopt;
    BasisWalker w(gens, all_ids(gens), true, false);
    w.limit = limit;
    w.walk(0, k, 0);
    if (w.overflow)
        return std::nullopt;
    return std::move(w.out);
}

std::vector<Monomial> basis(const GeneratorSet& gens, int k, int wordlength)
{
    if (k < 0 || wordlength < 0)
        return {};
    if (k == 0)
        return wordlength == 0 ? std::vector<Monomial>{Monomial{}} : std::vector<Monomial>{};
    BasisWalker w(gens, all_ids(gens), true, true);
    w.walk(0, k, wordlength);
    return std::move(w.out);
}

std::vector<Monomial> wordlength_monomials(const GeneratorSet& gens, const std::vector<GeneratorId>& subset, int wordlength)
{
    if (wordlength < 0)
        return {};
    std::vector<GeneratorId> ids = subset;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (auto id : ids)
        gens.at(id);
    BasisWalker w(gens, std::move(ids), false, true);
    w.walk(0, 0, wordlength);
    return std::move(w.out);
}

/******** Formatting ********/

std::string to_string(const GeneratorSet& gens, const Monomial& m)
{
    if (m.is_unit())
        return "1";
    std::string s;
    for (const auto& f : m.factors()) {
        if (!s.empty())
            s += ' ';
        s += gens.at(f.gen).name;
        if (f.exp != 1)
            s += '^' + std::to_string(f.exp);
    }
    return s;
}

std::string to_string(const GeneratorSet& gens, const Polynomial& p)
{
    if (p.is_zero())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational mag = abs(c);
        if (first)
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        first = false;
        if (m.is_unit()) {
            s += mag.get_str();
            continue;
        }
        if (mag != 1)
            s += mag.get_str() + "*";
        s += to_string(gens, m);
    }
    return s;
}

} // namespace sullivan
