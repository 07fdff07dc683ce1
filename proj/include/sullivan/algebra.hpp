#pragma once

// Exact arithmetic in the free graded-commutative algebra on a finite set of
// graded generators, with rational coefficients.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace sullivan {

using Rational = mpq_class;
using Integer = mpz_class;

using GeneratorId = int;

struct Generator {
    GeneratorId id = 0;
    std::string name;
    int degree = 1;

    bool odd() const { return degree % 2 != 0; }
    bool even() const { return degree % 2 == 0; }

    friend bool operator==(const Generator&, const Generator&) = default;
};

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The generators of one algebra, indexed densely by id (id == position).
class GeneratorSet {
public:
    GeneratorSet() = default;
    explicit GeneratorSet(std::vector<Generator> gens);

    /// Appends a generator with the next free id and returns that id.
    GeneratorId add(std::string name, int degree);

    std::size_t size() const { return gens_.size(); }
    bool empty() const { return gens_.empty(); }
    bool contains(GeneratorId id) const { return id >= 0 && static_cast<std::size_t>(id) < gens_.size(); }

    const Generator& operator[](GeneratorId id) const { return gens_[static_cast<std::size_t>(id)]; }
    const Generator& at(GeneratorId id) const;
    std::optional<GeneratorId> find(std::string_view name) const;

    auto begin() const { return gens_.begin(); }
    auto end() const { return gens_.end(); }
    const std::vector<Generator>& generators() const { return gens_; }

    int max_degree() const;

    friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;

private:
    std::vector<Generator> gens_;
};

struct Factor {
    GeneratorId gen = 0;
    int exp = 1;

    friend bool operator==(const Factor&, const Factor&) = default;
};

/// A canonical product of generator powers: factors strictly ascending by id,
/// odd generators with exponent 1. The empty monomial is the unit.
class Monomial {
public:
    Monomial() = default;

    /// Wraps factors that are already canonical. Use normalize() otherwise.
    static Monomial from_canonical(std::vector<Factor> factors);
    static Monomial generator(GeneratorId id, int exp = 1) { return from_canonical({{id, exp}}); }

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }

    int wordlength() const;
    int degree(const GeneratorSet& gens) const;
    int exponent(GeneratorId id) const;

    /// True when every factor lies in `allowed` (a predicate on generator ids).
    template <typename Pred>
    bool only(Pred&& allowed) const
    {
        for (const auto& f : factors_)
            if (!allowed(f.gen))
                return false;
        return true;
    }

    /// Canonical order: lexicographic on exponent vectors, larger exponent of
    /// the lower-id generator first (x^2 < x y < y^2 for x before y).
    friend bool operator<(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Factor> factors_;
};

struct SignedMonomial {
    Monomial monomial;
    int sign = 1;
};

/// Sorts an arbitrary word of generator powers into canonical form, tracking
/// the Koszul sign. Returns nullopt when an odd generator repeats (the product
/// vanishes). Throws AlgebraError on an unknown id or non-positive exponent.
std::optional<SignedMonomial> normalize(const GeneratorSet& gens, const std::vector<Factor>& word);

/// Product of two canonical monomials with its Koszul sign, or nullopt if zero.
std::optional<SignedMonomial> multiply(const GeneratorSet& gens, const Monomial& a, const Monomial& b);

/// A finite linear combination of monomials with nonzero rational coefficients.
class Polynomial {
public:
    using Terms = std::map<Monomial, Rational>;

    Polynomial() = default;
    explicit Polynomial(Monomial m, Rational c = 1);

    static Polynomial unit() { return Polynomial(Monomial{}); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rational coefficient(const Monomial& m) const;

    /// Adds c*m, erasing the term if the coefficient cancels.
    void add_term(const Monomial& m, const Rational& c);

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    /// The common degree of all terms; nullopt for zero or inhomogeneous input.
    std::optional<int> homogeneous_degree(const GeneratorSet& gens) const;
    bool is_homogeneous(const GeneratorSet& gens) const;

    int min_wordlength() const;
    int max_wordlength() const;

private:
    Terms terms_;
};

/// Graded-commutative product. Throws AlgebraError if either operand refers
/// to a generator outside `gens`.
Polynomial multiply(const GeneratorSet& gens, const Polynomial& p, const Polynomial& q);

/// Throws AlgebraError unless every generator of `p` belongs to `gens`.
void check_generators(const GeneratorSet& gens, const Polynomial& p);

/// All monomials of total degree k, in canonical order.
std::vector<Monomial> basis(const GeneratorSet& gens, int k);

/// Like basis(gens, k), but gives up (nullopt) once more than `limit`
/// monomials would be produced.
std::optional<std::vector<Monomial>> basis_within(const GeneratorSet& gens, int k, std::size_t limit);

/// Monomials of total degree k and exactly `wordlength` factors, in canonical order.
std::vector<Monomial> basis(const GeneratorSet& gens, int k, int wordlength);

/// All monomials of exactly `wordlength` factors built from the generators in
/// `subset` (any degrees), in canonical order.
std::vector<Monomial> wordlength_monomials(const GeneratorSet& gens, const std::vector<GeneratorId>& subset, int wordlength);

/// Partitions the terms of p by wordlength.
std::map<int, Polynomial> wordlength_split(const Polynomial& p);

std::string to_string(const GeneratorSet& gens, const Monomial& m);
std::string to_string(const GeneratorSet& gens, const Polynomial& p);

} // namespace sullivan
